#pragma once

#include <functional>
#include <string>

namespace serrinlab {

/// Tolerances shared by the nonlinearity checks and downstream quadrature.
inline constexpr double kEllipticityTol = 1e-9;    // slack on the declared [lambda, Lambda]
inline constexpr double kFluxInversionTol = 1e-12; // relative tolerance of invert_flux

enum class NonlinearityKind { PLaplacian, BoundedGradient, Custom };

struct EllipticityReport {
    double lambda_hat = 0.0;  // min sampled ratio
    double Lambda_hat = 0.0;  // max sampled ratio
    bool pass = false;
    double worst_s = 0.0;     // sample attaining the largest bound violation
};

/// Coefficient a(s) of div(a(|grad u|) grad u) = 0 together with declared
/// ellipticity bounds 0 < lambda <= 1 + s a'(s)/a(s) <= Lambda.
///
/// Built-in families:
///   p_laplacian(p):      a(s) = s^(p-2), ratio identically p-1
///   bounded_gradient(p): a(s) = (1+s^2)^((p-2)/2), ratio in [min(1,p-1), max(1,p-1)]
class Nonlinearity {
public:
    static Nonlinearity p_laplacian(double p);
    static Nonlinearity bounded_gradient(double p);
    static Nonlinearity bounded_gradient(double p, double lambda, double Lambda);
    static Nonlinearity custom(std::function<double(double)> a,
                               std::function<double(double)> a_prime, double lambda, double Lambda,
                               std::string name = "custom");

    NonlinearityKind kind() const { return kind_; }
    double exponent() const { return p_; }  // p of the built-in families
    double lambda_bound() const { return lambda_; }
    double Lambda_bound() const { return Lambda_; }
    const std::string& name() const { return name_; }

    /// a(s). s = 0 is allowed only for the bounded-gradient family.
    double a(double s) const;
    double a_prime(double s) const;
    /// 1 + s a'(s)/a(s).
    double ellipticity_ratio(double s) const;
    /// Flux map t -> t a(t); strictly increasing, 0 at 0 by continuity.
    double flux(double t) const;
    double flux_prime(double t) const;
    /// Inverse of the flux map: b(s) with |flux(b(s)) - s| <= tol * max(1, s).
    double invert_flux(double s) const;

    /// Samples the ellipticity ratio on log-spaced s and compares against the
    /// declared bounds (slack kEllipticityTol).
    EllipticityReport verify_ellipticity(double s_min = 1e-6, double s_max = 1e6,
                                         int samples = 1000) const;

private:
    Nonlinearity() = default;

    NonlinearityKind kind_ = NonlinearityKind::Custom;
    double p_ = 0.0;
    double lambda_ = 0.0;
    double Lambda_ = 0.0;
    std::string name_;
    std::function<double(double)> a_fn_;
    std::function<double(double)> a_prime_fn_;
};

/// a_eps(s) = max(a(sqrt(eps^2 + s^2)), eps): finite and smooth at s = 0,
/// bounded below by eps, so the regularized operator is uniformly elliptic.
class RegularizedNonlinearity {
public:
    RegularizedNonlinearity(Nonlinearity base, double epsilon);

    double a(double s) const;
    double a_prime(double s) const;
    double ellipticity_ratio(double s) const;
    const Nonlinearity& base() const { return base_; }
    double epsilon() const { return epsilon_; }

    /// Same sampler as Nonlinearity::verify_ellipticity, checked against the
    /// base bounds. Near s = 0 the ratio of any uniformly elliptic
    /// regularization drifts to 1, so this is a report, not a gate.
    EllipticityReport verify_ellipticity(double s_min = 1e-6, double s_max = 1e6,
                                         int samples = 1000) const;

private:
    Nonlinearity base_;
    double epsilon_;
};

}  // namespace serrinlab
