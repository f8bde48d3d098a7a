#pragma once

#include <functional>
#include <vector>

namespace serrinlab {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) integration of f over [a,b] down to an
/// absolute tolerance. Worst segments are refined first; converged is false
/// when the segment budget runs out before the tolerance is met.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol, int max_segments = 20000);

struct LogSlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;  // max |log f - fit| over the samples
};

/// Least-squares slope of log f(x) against log x on log-spaced samples.
LogSlopeFit fit_log_slope(const std::function<double(double)>& f, double x_min, double x_max,
                          int samples);

std::vector<double> log_spaced(double lo, double hi, int n);

}  // namespace serrinlab
