#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "serrinlab/nonlinearity.hpp"

namespace serrinlab {

inline constexpr double kQuadratureTol = 1e-10;  // absolute
inline constexpr double kSlopeTol = 1e-3;        // band around the critical slope -1

struct SingularValue {
    enum class Kind { Finite, Infinite, Inconclusive };
    Kind kind = Kind::Inconclusive;
    double value = 0.0;  // M, meaningful iff Finite
    double slope = 0.0;  // fitted log-log growth of the integrand at 0 (diagnostic)

    bool finite() const { return kind == Kind::Finite; }
    bool infinite() const { return kind == Kind::Infinite; }
};

struct RadialSample {
    double r;
    double v;
    double v_prime;
    double first_integral_defect;
};

/// Exact radial solution on the centered ball B_R:
///   v(r) = int_r^R b(K rho^(1-n)) drho,  K = R^(n-1) c a(c),
/// where b inverts the flux map t a(t). Satisfies v(R) = 0, v'(R) = -c and
/// the first integral r^(n-1) flux(|v'(r)|) = K on (0, R].
class RadialSolution {
public:
    RadialSolution(Nonlinearity nl, int n, double R, double c);

    const Nonlinearity& nonlinearity() const { return nl_; }
    int dimension() const { return n_; }
    double radius() const { return R_; }
    double boundary_flux_magnitude() const { return c_; }
    double K() const { return K_; }

    /// Quadrature of the defining integral on [r, R]; v(R) = 0 exactly.
    double v(double r) const;
    /// -b(K r^(1-n)); equals -c at r = R up to the inversion tolerance.
    double v_prime(double r) const;
    /// max over the samples of |r^(n-1) flux(|v'(r)|) - K| / K.
    double first_integral_defect(const std::vector<double>& radii) const;
    /// Value of u at the singular point: finite M, infinite, or inconclusive.
    /// Lazy; cached thread-safely.
    SingularValue singular_value() const;
    /// Sampled table on log-spaced radii in [r_min_rel * R, R], ascending in r.
    std::vector<RadialSample> table(int count = 1024, double r_min_rel = 1e-4) const;

private:
    double integrand(double rho) const;  // b(K rho^(1-n))
    SingularValue classify_singular_value() const;

    Nonlinearity nl_;
    int n_;
    double R_;
    double c_;
    double K_;

    struct Cache {
        std::mutex mutex;
        std::optional<SingularValue> value;
    };
    std::shared_ptr<Cache> cache_;
};

}  // namespace serrinlab
