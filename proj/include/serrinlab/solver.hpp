#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "serrinlab/geometry.hpp"
#include "serrinlab/nonlinearity.hpp"

namespace serrinlab {

/// Excised problem on Omega \ B_delta(O): Dirichlet inner_value on the small
/// circle standing in for the singularity, outer_value (0) on the boundary.
struct ExcisedProblem {
    PlanarDomain domain;
    double delta;
    RegularizedNonlinearity nl_reg;
    double inner_value;
    double outer_value = 0.0;

    static ExcisedProblem make(PlanarDomain domain, double delta, RegularizedNonlinearity nl_reg,
                               double inner_value, double outer_value = 0.0);
};

/// Dirichlet data as functions of the boundary foot point; defaults to the
/// problem's constant values.
struct BoundaryData {
    std::function<double(const Vec2&)> outer;
    std::function<double(const Vec2&)> inner;
};

struct SolverOptions {
    double theta = 0.7;         // Picard damping
    double picard_tol = 1e-9;   // relative fixed-point residual
    int max_iterations = 500;
    double linear_tol = 1e-12;  // linear-solver relative residual
};

enum class NodeStatus : std::uint8_t { Exterior, Interior, OuterBoundary, InnerBoundary };

struct BoundaryFoot {
    Vec2 point;
    Vec2 outward_normal;
    double arc_position;
    double value;
};

/// Nodal solution on a uniform grid (node (i,j) sits at ((ix_min+i) h,
/// (iy_min+j) h), so that the origin is exactly a node). Boundary-status
/// nodes hold the Dirichlet value of their foot point; ghost values are
/// one-sided extrapolations used for interpolation near the boundary.
class DiscreteField {
public:
    double h = 0.0;
    long ix_min = 0, iy_min = 0;
    int nx = 0, ny = 0;
    std::vector<NodeStatus> status;
    Eigen::VectorXd values;
    Eigen::VectorXd ghost;
    std::vector<std::uint8_t> ghost_ok;
    std::vector<BoundaryFoot> outer_feet;
    std::vector<BoundaryFoot> inner_feet;
    double outer_perimeter = 0.0;
    double inner_value = 0.0;
    double outer_value = 0.0;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;

    int id(int i, int j) const { return j * nx + i; }
    Vec2 node(int i, int j) const {
        return {static_cast<double>(ix_min + i) * h, static_cast<double>(iy_min + j) * h};
    }
    /// Bilinear interpolation using interior and ghost values; ok=false when
    /// the stencil leaves the covered region.
    double value_at(const Vec2& x, bool* ok) const;
    void interior_range(double& min_value, double& max_value) const;
    void boundary_range(double& min_value, double& max_value) const;
};

/// Picard (frozen-coefficient) iteration for div(a_eps(|grad u|) grad u) = 0
/// with Shortley-Weller cut cells; the linearized solves are 5-point
/// divergence-form systems handled by a preconditioned Krylov iteration.
/// Non-convergence is reported in the returned field, not thrown.
DiscreteField solve(const ExcisedProblem& problem, double h, const SolverOptions& opts = {},
                    const BoundaryData* data = nullptr);

struct FluxSample {
    double arc_position;
    Vec2 point;
    Vec2 normal;
    double normal_derivative;  // du/dnu, outward
};

struct FluxTrace {
    std::vector<FluxSample> samples;  // sorted by arc position
    double perimeter = 0.0;           // total arc length of the traced boundary
    int dropped = 0;
};

/// Second-order one-sided normal derivative at every outer-boundary foot
/// point; throws when more than 5% of the feet lose their stencil.
FluxTrace boundary_flux(const DiscreteField& field);

struct ConstancyDefect {
    double mean_flux = 0.0;
    double defect = 0.0;
    bool defined = false;  // false when the mean vanishes
};

/// Arc-length-weighted mean of the trace and the max relative deviation.
ConstancyDefect constancy_defect(const FluxTrace& trace);

enum class Tristate { True, False, Inconclusive };

/// Solves with both data sets and checks u_low <= u_high + tol nodewise.
Tristate comparison_check(const ExcisedProblem& problem, const BoundaryData& low,
                          const BoundaryData& high, double h, const SolverOptions& opts = {});

struct HarnackBall {
    Vec2 center;
    double radius;
};

/// max/min of the solved field over the nodes of B_{radius/2}(center);
/// +infinity when the min is below 1e-14.
double harnack_quotient(const ExcisedProblem& problem, double h, const HarnackBall& ball,
                        const SolverOptions& opts = {});

/// Diagnostic for the reflected-solution comparison: max of u(R x) - u(x)
/// over cap-side nodes (interpolation-limited, not a pass/fail quantity).
double reflection_comparison_defect(const DiscreteField& field, const Direction& xi, double t);

}  // namespace serrinlab
