#include "serrinlab/radial.hpp"

#include <algorithm>
#include <cmath>

#include "serrinlab/common.hpp"
#include "serrinlab/numerics.hpp"

namespace serrinlab {

RadialSolution::RadialSolution(Nonlinearity nl, int n, double R, double c)
    : nl_(std::move(nl)), n_(n), R_(R), c_(c), cache_(std::make_shared<Cache>()) {
    if (n < 2) throw validation_error("RadialSolution: dimension n must be >= 2");
    if (!(R > 0.0)) throw validation_error("RadialSolution: radius R must be > 0");
    if (!(c > 0.0)) throw validation_error("RadialSolution: flux magnitude c must be > 0");
    K_ = std::pow(R_, n_ - 1) * nl_.flux(c_);
}

double RadialSolution::integrand(double rho) const {
    return nl_.invert_flux(K_ * std::pow(rho, 1.0 - n_));
}

double RadialSolution::v(double r) const {
    if (!(r > 0.0) || r > R_ * (1.0 + 1e-12))
        throw std::domain_error("RadialSolution::v: r must lie in (0, R]");
    if (r >= R_) return 0.0;
    const auto q =
        integrate_adaptive([this](double rho) { return integrand(rho); }, r, R_, kQuadratureTol);
    if (!q.converged)
        throw convergence_error("radial quadrature did not converge, error estimate " +
                                std::to_string(q.error_estimate));
    return q.value;
}

double RadialSolution::v_prime(double r) const {
    if (!(r > 0.0) || r > R_ * (1.0 + 1e-12))
        throw std::domain_error("RadialSolution::v_prime: r must lie in (0, R]");
    return -integrand(r);
}

double RadialSolution::first_integral_defect(const std::vector<double>& radii) const {
    double worst = 0.0;
    for (double r : radii) {
        const double phi = nl_.flux(std::abs(v_prime(r)));
        worst = std::max(worst, std::abs(std::pow(r, n_ - 1) * phi - K_) / K_);
    }
    return worst;
}

std::vector<RadialSample> RadialSolution::table(int count, double r_min_rel) const {
    if (count < 2) throw validation_error("RadialSolution::table: count must be >= 2");
    if (!(r_min_rel > 0.0) || !(r_min_rel < 1.0))
        throw validation_error("RadialSolution::table: r_min_rel must lie in (0, 1)");
    auto radii = log_spaced(r_min_rel * R_, R_, count);
    std::vector<RadialSample> out(radii.size());
    // Accumulate v from the outer boundary inward, segment by segment.
    double acc = 0.0;
    const double seg_tol = kQuadratureTol / static_cast<double>(count);
    for (int i = static_cast<int>(radii.size()) - 1; i >= 0; --i) {
        const double hi = (i + 1 < static_cast<int>(radii.size())) ? radii[i + 1] : R_;
        const double lo = radii[i];
        if (hi > lo) {
            const auto q = integrate_adaptive([this](double rho) { return integrand(rho); }, lo,
                                              hi, seg_tol);
            if (!q.converged)
                throw convergence_error("radial table quadrature did not converge near r=" +
                                        std::to_string(lo));
            acc += q.value;
        }
        RadialSample& s = out[i];
        s.r = radii[i];
        s.v = acc;
        s.v_prime = v_prime(radii[i]);
        const double phi = nl_.flux(std::abs(s.v_prime));
        s.first_integral_defect = std::abs(std::pow(s.r, n_ - 1) * phi - K_) / K_;
    }
    out.back().v = 0.0;  // exact by construction
    return out;
}

SingularValue RadialSolution::singular_value() const {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (!cache_->value) cache_->value = classify_singular_value();
    return *cache_->value;
}

SingularValue RadialSolution::classify_singular_value() const {
    SingularValue result;

    // Growth of the integrand b(K rho^(1-n)) as rho -> 0, against the
    // critical rate rho^(-1).
    const double scale = std::min(1.0, R_);
    LogSlopeFit fit = fit_log_slope([this](double rho) { return integrand(rho); }, 1e-8 * scale,
                                    1e-4 * scale, 33);
    result.slope = fit.slope;
    const bool fit_ok = fit.max_residual <= 0.05;
    const bool slope_divergent = fit.slope <= -1.0 + kSlopeTol;

    // Quadrature on shrinking lower limits, through rho = exp(-tau).
    const double tau0 = -std::log(R_);
    const double width = 4.0;
    const int max_segments = slope_divergent && fit_ok ? 8 : 40;
    double acc = 0.0;
    double prev_delta = 0.0;
    bool stabilized = false;
    bool blew_up = false;
    int small_count = 0;
    double tail_ratio = 0.0;
    for (int k = 0; k < max_segments; ++k) {
        const double ta = tau0 + k * width;
        const double tb = ta + width;
        const auto q = integrate_adaptive(
            [this](double tau) {
                const double rho = std::exp(-tau);
                return integrand(rho) * rho;
            },
            ta, tb, std::max(1e-13, 1e-13 * std::abs(acc)));
        if (!q.converged || !std::isfinite(q.value)) {
            blew_up = true;
            break;
        }
        acc += q.value;
        if (acc > 1e250) {
            blew_up = true;
            break;
        }
        if (std::abs(q.value) <= 2e-13 * std::max(1.0, std::abs(acc))) {
            if (++small_count >= 2) {
                stabilized = true;
                if (prev_delta > 0.0) tail_ratio = q.value / prev_delta;
                break;
            }
        } else {
            small_count = 0;
        }
        prev_delta = q.value;
    }

    if (fit_ok && slope_divergent) {
        // Confirmed infinite unless the partial sums stabilized after all.
        result.kind = stabilized ? SingularValue::Kind::Inconclusive : SingularValue::Kind::Infinite;
        return result;
    }
    if (stabilized) {
        if (tail_ratio > 0.0 && tail_ratio < 0.95)
            acc += prev_delta * tail_ratio * tail_ratio / (1.0 - tail_ratio);
        result.kind = SingularValue::Kind::Finite;
        result.value = acc;
        return result;
    }
    if (!fit_ok && (blew_up || fit.slope <= -1.0 - kSlopeTol)) {
        result.kind = SingularValue::Kind::Infinite;
        return result;
    }
    result.kind = SingularValue::Kind::Inconclusive;
    return result;
}

}  // namespace serrinlab
