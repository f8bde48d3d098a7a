#include "serrinlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "serrinlab/common.hpp"
#include "serrinlab/radial.hpp"

namespace serrinlab {

namespace {

double auto_delta(double R, const std::vector<double>& h_ladder) {
    double h_max = 0.0;
    for (double h : h_ladder) h_max = std::max(h_max, h);
    // inner circle must span >= 8 nodes at the coarsest rung
    return std::max(0.1 * R, 4.0 * h_max);
}

double auto_epsilon(double inner_value, double diameter) {
    return 1e-8 * inner_value / diameter;
}

struct BallRun {
    std::vector<LadderRung> rungs;
    double delta = 0.0;
    double inner_value = 0.0;
};

// Centered-ball ladder with oracle inner data; fills the oracle error.
BallRun run_centered_ball(const Nonlinearity& nl, double R, double c,
                          const std::vector<double>& h_ladder, std::optional<double> delta_opt,
                          const SolverOptions& solver_opts) {
    if (h_ladder.empty()) throw validation_error("run: empty resolution ladder");
    BallRun run;
    run.delta = delta_opt.value_or(auto_delta(R, h_ladder));
    if (!(run.delta > 0.0) || !(2.0 * run.delta < R))
        throw validation_error("run: delta must satisfy 0 < 2 delta < R");
    RadialSolution oracle(nl, 2, R, c);
    run.inner_value = oracle.v(run.delta);

    PlanarDomain ball = PlanarDomain::make_circle(Vec2::Zero(), R);
    const double eps = auto_epsilon(run.inner_value, ball.diameter());
    ExcisedProblem problem = ExcisedProblem::make(ball, run.delta,
                                                  RegularizedNonlinearity(nl, eps),
                                                  run.inner_value);
    for (double h : h_ladder) {
        LadderRung rung;
        rung.h = h;
        DiscreteField field = solve(problem, h, solver_opts);
        rung.iterations = field.iterations;
        rung.converged = field.converged;
        if (field.converged) {
            double linf = 0.0;
            for (int j = 0; j < field.ny; ++j) {
                for (int i = 0; i < field.nx; ++i) {
                    if (field.status[field.id(i, j)] != NodeStatus::Interior) continue;
                    const double r =
                        std::clamp(field.node(i, j).norm(), run.delta, R);
                    linf = std::max(linf, std::abs(field.values[field.id(i, j)] - oracle.v(r)));
                }
            }
            rung.linf_error_vs_oracle = linf / run.inner_value;
            const ConstancyDefect cd = constancy_defect(boundary_flux(field));
            rung.defect = cd.defined ? cd.defect : 0.0;
            rung.mean_flux = cd.mean_flux;
        }
        run.rungs.push_back(rung);
    }
    return run;
}

bool all_converged(const std::vector<LadderRung>& rungs) {
    return std::all_of(rungs.begin(), rungs.end(), [](const LadderRung& r) { return r.converged; });
}

}  // namespace

GeometrySummary run_symmetry_sweep(const PlanarDomain& domain, int n_directions) {
    GeometrySummary g;
    g.n_directions = n_directions;
    g.directions = symmetry_planes(domain, n_directions);
    g.all_symmetric = std::all_of(g.directions.begin(), g.directions.end(),
                                  [](const SymmetryResult& r) { return r.is_symmetric; });
    g.worst_sum = -std::numeric_limits<double>::infinity();
    for (const SymmetryResult& r : g.directions) g.worst_sum = std::max(g.worst_sum, r.sum);
    return g;
}

ExperimentReport run_forward(const ForwardConfig& config) {
    if (!(config.R > 0.0) || !(config.c > 0.0))
        throw validation_error("run_forward: need R > 0 and c > 0");
    ExperimentReport report;
    report.scenario = Scenario::CenteredBall;
    report.nonlinearity = config.nl.name();
    report.c = config.c;

    BallRun run = run_centered_ball(config.nl, config.R, config.c, config.h_ladder, config.delta,
                                    config.solver);
    report.delta = run.delta;
    report.inner_value = run.inner_value;
    report.rungs = run.rungs;
    if (config.sweep_directions > 0) {
        report.geometry = run_symmetry_sweep(PlanarDomain::make_circle(Vec2::Zero(), config.R),
                                             config.sweep_directions);
    }

    const auto& rungs = report.rungs;
    if (!all_converged(rungs) ) {
        report.verdict = Verdict::Inconclusive;
        return report;
    }
    if (rungs.size() < 2) {
        report.verdict = Verdict::Inconclusive;  // one rung gives no trend
        return report;
    }
    bool errors_decreasing = true;
    for (size_t k = 1; k < rungs.size(); ++k)
        if (!(rungs[k].linf_error_vs_oracle.value() < rungs[k - 1].linf_error_vs_oracle.value()))
            errors_decreasing = false;
    const double defect_last = rungs.back().defect;
    const double defect_prev = rungs[rungs.size() - 2].defect;
    const bool defect_monotone = defect_last <= defect_prev;
    if (errors_decreasing && defect_monotone && defect_last <= kForwardTol)
        report.verdict = Verdict::ConsistentWithTheorem;
    else if (defect_last > kForwardTol && !(defect_last < defect_prev))
        report.verdict = Verdict::Inconsistent;  // stable contradiction at the two finest rungs
    else
        report.verdict = Verdict::Inconclusive;
    return report;
}

ExperimentReport run_contrapositive(const ContrapositiveConfig& config) {
    if (!(config.c > 0.0)) throw validation_error("run_contrapositive: need c > 0");
    const PlanarDomain& domain = config.domain;
    Scenario scenario;
    if (const Circle* circ = std::get_if<Circle>(&domain.shape())) {
        if (circ->center.norm() <= 1e-12 * domain.diameter())
            throw validation_error(
                "run_contrapositive: the domain is a ball centered at the origin; "
                "use the forward check");
        scenario = Scenario::OffCenterBall;
    } else if (std::holds_alternative<Ellipse>(domain.shape())) {
        scenario = Scenario::Ellipse;
    } else {
        scenario = Scenario::Polygon;
    }
    if (!domain.contains_origin())
        throw validation_error("run_contrapositive: the origin must lie inside the domain");

    ExperimentReport report;
    report.scenario = scenario;
    report.nonlinearity = config.nl.name();
    report.c = config.c;

    const double R_b = domain.signed_distance(Vec2::Zero());  // distance from O to the boundary
    const double delta = config.delta.value_or(auto_delta(R_b, config.h_ladder));
    if (!(2.0 * delta < R_b))
        throw validation_error("run_contrapositive: 2 delta must stay below dist(O, boundary)");
    RadialSolution oracle(config.nl, 2, R_b, config.c);
    const double inner_value = oracle.v(delta);
    report.delta = delta;
    report.inner_value = inner_value;

    const double eps = auto_epsilon(inner_value, domain.diameter());
    ExcisedProblem problem = ExcisedProblem::make(domain, delta,
                                                  RegularizedNonlinearity(config.nl, eps),
                                                  inner_value);
    for (double h : config.h_ladder) {
        LadderRung rung;
        rung.h = h;
        DiscreteField field = solve(problem, h, config.solver);
        rung.iterations = field.iterations;
        rung.converged = field.converged;
        if (field.converged) {
            const ConstancyDefect cd = constancy_defect(boundary_flux(field));
            rung.defect = cd.defined ? cd.defect : 0.0;
            rung.mean_flux = cd.mean_flux;
        }
        report.rungs.push_back(rung);
    }

    // paired forward baseline on the centered ball of radius dist(O, boundary)
    BallRun baseline = run_centered_ball(config.nl, R_b, config.c, config.h_ladder, delta,
                                         config.solver);
    report.baseline = baseline.rungs;
    if (config.sweep_directions > 0)
        report.geometry = run_symmetry_sweep(domain, config.sweep_directions);

    if (!all_converged(report.rungs) || !all_converged(report.baseline)) {
        report.verdict = Verdict::Inconclusive;
        return report;
    }
    const double defect = report.rungs.back().defect;
    const double base = report.baseline.back().defect;
    if (defect >= kContrapositiveFactor * base && report.rungs.size() >= 2) {
        report.verdict = Verdict::ConsistentWithTheorem;
    } else if (report.rungs.size() >= 2 && defect < 1.5 * base &&
               report.rungs[report.rungs.size() - 2].defect <
                   1.5 * report.baseline[report.baseline.size() - 2].defect) {
        // the non-ball domain shows ball-like flux at the two finest rungs
        report.verdict = Verdict::Inconsistent;
    } else {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::CenteredBall: return "centered_ball";
        case Scenario::OffCenterBall: return "off_center_ball";
        case Scenario::Ellipse: return "ellipse";
        case Scenario::Polygon: return "polygon";
    }
    return "unknown";
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::ConsistentWithTheorem: return "consistent_with_theorem";
        case Verdict::Inconsistent: return "inconsistent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

}  // namespace serrinlab
