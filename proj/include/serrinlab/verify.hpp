#pragma once

#include <optional>
#include <string>
#include <vector>

#include "serrinlab/geometry.hpp"
#include "serrinlab/nonlinearity.hpp"
#include "serrinlab/solver.hpp"

namespace serrinlab {

inline constexpr double kForwardTol = 0.05;          // flux defect gate at the finest rung
inline constexpr double kContrapositiveFactor = 3.0; // separation over the paired baseline

enum class Scenario { CenteredBall, OffCenterBall, Ellipse, Polygon };
enum class Verdict { ConsistentWithTheorem, Inconsistent, Inconclusive };

struct LadderRung {
    double h = 0.0;
    double defect = 0.0;
    double mean_flux = 0.0;
    std::optional<double> linf_error_vs_oracle;  // forward runs only
    int iterations = 0;
    bool converged = false;
};

struct GeometrySummary {
    int n_directions = 0;
    std::vector<SymmetryResult> directions;
    bool all_symmetric = false;  // the circle signature
    double worst_sum = 0.0;      // max of t(xi) + t(-xi) over the sweep
};

struct ExperimentReport {
    Scenario scenario = Scenario::CenteredBall;
    Verdict verdict = Verdict::Inconclusive;
    std::string nonlinearity;
    double c = 0.0;
    double delta = 0.0;
    double inner_value = 0.0;
    std::vector<LadderRung> rungs;
    std::vector<LadderRung> baseline;  // matched centered-ball run (contrapositive)
    std::optional<GeometrySummary> geometry;
};

struct ForwardConfig {
    Nonlinearity nl = Nonlinearity::p_laplacian(2.0);
    double R = 1.0;
    double c = 1.0;
    std::vector<double> h_ladder;
    std::optional<double> delta;  // default max(0.1 R, 4 h_coarsest)
    int sweep_directions = 64;    // 0 disables the geometry sweep
    SolverOptions solver;
};

/// Solves on the centered ball with oracle boundary data at every rung and
/// compares against the radial solution; consistent when the errors fall
/// monotonically and the final flux defect is within kForwardTol.
ExperimentReport run_forward(const ForwardConfig& config);

struct ContrapositiveConfig {
    ContrapositiveConfig(PlanarDomain domain_, Nonlinearity nl_)
        : domain(std::move(domain_)), nl(std::move(nl_)) {}

    PlanarDomain domain;
    Nonlinearity nl;
    double c = 1.0;
    std::vector<double> h_ladder;
    std::optional<double> delta;
    int sweep_directions = 64;
    SolverOptions solver;
};

/// Solves on a non-ball (or off-center ball) domain and compares the flux
/// defect against a paired centered-ball baseline at matched resolution;
/// consistent when the defect exceeds kContrapositiveFactor x baseline.
/// Feeding a ball centered at the origin is a precondition error.
ExperimentReport run_contrapositive(const ContrapositiveConfig& config);

GeometrySummary run_symmetry_sweep(const PlanarDomain& domain, int n_directions);

std::string to_string(Scenario s);
std::string to_string(Verdict v);

}  // namespace serrinlab
