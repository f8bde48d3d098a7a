#include "serrinlab/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "serrinlab/common.hpp"
#include "serrinlab/numerics.hpp"

namespace serrinlab {

namespace {

double require_finite(double v, double s, const char* what) {
    if (!std::isfinite(v))
        throw std::domain_error(std::string(what) + " is not finite at s=" + std::to_string(s));
    return v;
}

}  // namespace

Nonlinearity Nonlinearity::p_laplacian(double p) {
    if (!(p > 1.0)) throw validation_error("p_laplacian requires p > 1");
    Nonlinearity nl;
    nl.kind_ = NonlinearityKind::PLaplacian;
    nl.p_ = p;
    nl.lambda_ = p - 1.0;
    nl.Lambda_ = p - 1.0;
    nl.name_ = "p_laplacian(p=" + std::to_string(p) + ")";
    return nl;
}

Nonlinearity Nonlinearity::bounded_gradient(double p) {
    if (!(p > 1.0)) throw validation_error("bounded_gradient requires p > 1 (or declare bounds)");
    return bounded_gradient(p, std::min(1.0, p - 1.0), std::max(1.0, p - 1.0));
}

Nonlinearity Nonlinearity::bounded_gradient(double p, double lambda, double Lambda) {
    if (!(lambda > 0.0) || !(Lambda >= lambda))
        throw validation_error("bounded_gradient: need 0 < lambda <= Lambda");
    Nonlinearity nl;
    nl.kind_ = NonlinearityKind::BoundedGradient;
    nl.p_ = p;
    nl.lambda_ = lambda;
    nl.Lambda_ = Lambda;
    nl.name_ = "bounded_gradient(p=" + std::to_string(p) + ")";
    return nl;
}

Nonlinearity Nonlinearity::custom(std::function<double(double)> a,
                                  std::function<double(double)> a_prime, double lambda,
                                  double Lambda, std::string name) {
    if (!a || !a_prime) throw validation_error("custom nonlinearity needs both a and a'");
    if (!(lambda > 0.0) || !(Lambda >= lambda))
        throw validation_error("custom nonlinearity: need 0 < lambda <= Lambda");
    Nonlinearity nl;
    nl.kind_ = NonlinearityKind::Custom;
    nl.lambda_ = lambda;
    nl.Lambda_ = Lambda;
    nl.a_fn_ = std::move(a);
    nl.a_prime_fn_ = std::move(a_prime);
    nl.name_ = std::move(name);
    return nl;
}

double Nonlinearity::a(double s) const {
    if (s < 0.0) throw std::domain_error("a(s): s must be nonnegative");
    switch (kind_) {
        case NonlinearityKind::PLaplacian:
            if (s == 0.0) throw std::domain_error("a(s): s = 0 not admissible for s^(p-2)");
            return std::pow(s, p_ - 2.0);
        case NonlinearityKind::BoundedGradient:
            return std::pow(1.0 + s * s, 0.5 * (p_ - 2.0));
        case NonlinearityKind::Custom:
            if (s == 0.0) throw std::domain_error("a(s): s = 0 not admissible for custom a");
            return require_finite(a_fn_(s), s, "a(s)");
    }
    return 0.0;  // unreachable
}

double Nonlinearity::a_prime(double s) const {
    if (s < 0.0) throw std::domain_error("a'(s): s must be nonnegative");
    switch (kind_) {
        case NonlinearityKind::PLaplacian:
            if (s == 0.0) throw std::domain_error("a'(s): s = 0 not admissible");
            return (p_ - 2.0) * std::pow(s, p_ - 3.0);
        case NonlinearityKind::BoundedGradient:
            return (p_ - 2.0) * s * std::pow(1.0 + s * s, 0.5 * (p_ - 4.0));
        case NonlinearityKind::Custom:
            if (s == 0.0) throw std::domain_error("a'(s): s = 0 not admissible for custom a");
            return require_finite(a_prime_fn_(s), s, "a'(s)");
    }
    return 0.0;  // unreachable
}

double Nonlinearity::ellipticity_ratio(double s) const {
    if (kind_ == NonlinearityKind::PLaplacian) return p_ - 1.0;  // exact identity
    const double av = a(s);
    if (!(av > 0.0)) throw std::domain_error("ellipticity_ratio: a(s) <= 0 at s=" + std::to_string(s));
    return require_finite(1.0 + s * a_prime(s) / av, s, "ellipticity ratio");
}

double Nonlinearity::flux(double t) const {
    if (t < 0.0) throw std::domain_error("flux: t must be nonnegative");
    if (t == 0.0) return 0.0;  // continuous extension; flux is increasing and -> 0
    return t * a(t);
}

double Nonlinearity::flux_prime(double t) const { return a(t) * ellipticity_ratio(t); }

double Nonlinearity::invert_flux(double s) const {
    if (s < 0.0) throw std::domain_error("invert_flux: s must be nonnegative");
    if (s == 0.0) return 0.0;
    const double tol = kFluxInversionTol * std::max(1.0, s) * 0.25;

    // Geometric bracket expansion from t = 1.
    double lo, hi, flo, fhi;
    const double f1 = flux(1.0);
    if (f1 >= s) {
        hi = 1.0;
        fhi = f1;
        lo = 0.25;
        flo = flux(lo);
        int guard = 0;
        while (flo > s) {
            hi = lo;
            fhi = flo;
            lo *= 0.25;
            if (lo < 1e-300 || ++guard > 600)
                throw convergence_error("invert_flux: bracket expansion failed toward 0 at s=" +
                                        std::to_string(s));
            const double f = flux(lo);
            if (f > flo + 1e-300)
                throw convergence_error("invert_flux: flux not increasing near t=" +
                                        std::to_string(lo));
            flo = f;
        }
    } else {
        lo = 1.0;
        flo = f1;
        hi = 4.0;
        fhi = flux(hi);
        int guard = 0;
        while (fhi < s) {
            if (fhi < flo - 1e-300)
                throw convergence_error("invert_flux: flux not increasing near t=" +
                                        std::to_string(hi));
            lo = hi;
            flo = fhi;
            hi *= 4.0;
            if (hi > 1e300 || ++guard > 600)
                throw convergence_error("invert_flux: bracket expansion failed toward inf at s=" +
                                        std::to_string(s));
            fhi = flux(hi);
        }
    }

    // Safeguarded Newton inside the bracket.
    double t = std::sqrt(lo * hi);
    for (int iter = 0; iter < 200; ++iter) {
        const double F = flux(t) - s;
        if (std::abs(F) <= tol) return t;
        if (F > 0.0)
            hi = t;
        else
            lo = t;
        if (hi - lo <= 1e-15 * hi) return t;  // bracket at machine resolution
        const double dF = flux_prime(t);
        double next = (dF > 0.0) ? t - F / dF : 0.5 * (lo + hi);
        if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
        t = next;
    }
    return t;
}

namespace {

EllipticityReport sample_ratio(const std::function<double(double)>& ratio, double lambda,
                               double Lambda, double s_min, double s_max, int samples) {
    if (!(s_min > 0.0) || !(s_max > s_min) || samples < 2)
        throw validation_error("verify_ellipticity: need 0 < s_min < s_max, samples >= 2");
    EllipticityReport rep;
    rep.lambda_hat = std::numeric_limits<double>::infinity();
    rep.Lambda_hat = -std::numeric_limits<double>::infinity();
    double worst = -1.0;
    for (double s : log_spaced(s_min, s_max, samples)) {
        double r;
        try {
            r = ratio(s);
        } catch (const std::exception& e) {
            throw std::domain_error("verify_ellipticity at s=" + std::to_string(s) + ": " +
                                    e.what());
        }
        rep.lambda_hat = std::min(rep.lambda_hat, r);
        rep.Lambda_hat = std::max(rep.Lambda_hat, r);
        const double viol = std::max(lambda - r, r - Lambda);
        if (viol > worst) {
            worst = viol;
            rep.worst_s = s;
        }
    }
    rep.pass = rep.lambda_hat >= lambda - kEllipticityTol && rep.Lambda_hat <= Lambda + kEllipticityTol;
    return rep;
}

}  // namespace

EllipticityReport Nonlinearity::verify_ellipticity(double s_min, double s_max, int samples) const {
    return sample_ratio([this](double s) { return ellipticity_ratio(s); }, lambda_, Lambda_, s_min,
                        s_max, samples);
}

RegularizedNonlinearity::RegularizedNonlinearity(Nonlinearity base, double epsilon)
    : base_(std::move(base)), epsilon_(epsilon) {
    if (!(epsilon > 0.0)) throw validation_error("RegularizedNonlinearity: epsilon must be > 0");
}

double RegularizedNonlinearity::a(double s) const {
    if (s < 0.0) throw std::domain_error("a_eps(s): s must be nonnegative");
    const double m = std::hypot(epsilon_, s);
    return std::max(base_.a(m), epsilon_);
}

double RegularizedNonlinearity::a_prime(double s) const {
    if (s < 0.0) throw std::domain_error("a_eps'(s): s must be nonnegative");
    const double m = std::hypot(epsilon_, s);
    if (base_.a(m) <= epsilon_) return 0.0;  // on the floor
    return base_.a_prime(m) * s / m;
}

double RegularizedNonlinearity::ellipticity_ratio(double s) const {
    return 1.0 + s * a_prime(s) / a(s);
}

EllipticityReport RegularizedNonlinearity::verify_ellipticity(double s_min, double s_max,
                                                              int samples) const {
    return sample_ratio([this](double s) { return ellipticity_ratio(s); }, base_.lambda_bound(),
                        base_.Lambda_bound(), s_min, s_max, samples);
}

}  // namespace serrinlab
