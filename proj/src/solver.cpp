#include "serrinlab/solver.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "serrinlab/common.hpp"

namespace serrinlab {

namespace {

constexpr double kAlphaMin = 1e-6;  // cut-arm floor, fraction of h

const std::array<std::array<int, 2>, 4> kDirs = {{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};  // E W N S

struct Arm {
    int nb = -1;           // unknown index across this arm, -1 when cut
    double len = 0.0;      // arm length
    double foot_val = 0.0; // Dirichlet value at the foot when cut
    Vec2 foot = Vec2::Zero();
    bool cut = false;
    bool inner = false;
};

struct Mesh {
    DiscreteField field;  // grid geometry + status filled in; values written later
    std::vector<int> unknown_of_node;
    std::vector<int> node_i, node_j;  // per unknown
    std::vector<std::array<Arm, 4>> arms;
};

// Crossing of the segment from x along dir (unit axis direction) with the
// circle |p| = delta; smallest s in (0, h].
double inner_crossing(const Vec2& x, const Vec2& dir, double delta, double h) {
    const double b = x.dot(dir);
    const double c = x.squaredNorm() - delta * delta;
    const double disc = b * b - c;
    if (disc < 0.0) return -1.0;
    const double sq = std::sqrt(disc);
    for (double s : {-b - sq, -b + sq})
        if (s > 0.0 && s <= h * (1.0 + 1e-12)) return s;
    return -1.0;
}

double outer_crossing(const PlanarDomain& domain, const Vec2& x, const Vec2& dir, double h) {
    double lo = 0.0, hi = h;
    double f_hi = domain.signed_distance(x + hi * dir);
    if (f_hi > 0.0) return -1.0;  // no sign change on the arm
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (domain.signed_distance(x + mid * dir) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Mesh build_mesh(const ExcisedProblem& problem, double h, const BoundaryData* data) {
    const PlanarDomain& domain = problem.domain;
    Mesh mesh;
    DiscreteField& f = mesh.field;
    f.h = h;
    Vec2 lo, hi;
    domain.bounding_box(lo, hi);
    f.ix_min = static_cast<long>(std::floor(lo.x() / h)) - 2;
    f.iy_min = static_cast<long>(std::floor(lo.y() / h)) - 2;
    f.nx = static_cast<int>(std::ceil(hi.x() / h) + 2 - f.ix_min) + 1;
    f.ny = static_cast<int>(std::ceil(hi.y() / h) + 2 - f.iy_min) + 1;
    f.inner_value = problem.inner_value;
    f.outer_value = problem.outer_value;
    f.outer_perimeter = domain.perimeter();

    const long total = static_cast<long>(f.nx) * f.ny;
    f.status.assign(total, NodeStatus::Exterior);
    f.values = Eigen::VectorXd::Zero(total);
    f.ghost = Eigen::VectorXd::Zero(total);
    f.ghost_ok.assign(total, 0);
    mesh.unknown_of_node.assign(total, -1);

    auto outer_val = [&](const Vec2& p) { return data && data->outer ? data->outer(p) : problem.outer_value; };
    auto inner_val = [&](const Vec2& p) { return data && data->inner ? data->inner(p) : problem.inner_value; };

    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            const Vec2 x = f.node(i, j);
            if (domain.signed_distance(x) > 0.0 && x.norm() > problem.delta) {
                f.status[f.id(i, j)] = NodeStatus::Interior;
                mesh.unknown_of_node[f.id(i, j)] = static_cast<int>(mesh.node_i.size());
                mesh.node_i.push_back(i);
                mesh.node_j.push_back(j);
            }
        }
    }

    const int nun = static_cast<int>(mesh.node_i.size());
    if (nun == 0) throw validation_error("solve: no interior nodes at this resolution");
    mesh.arms.resize(nun);
    for (int u = 0; u < nun; ++u) {
        const int i = mesh.node_i[u], j = mesh.node_j[u];
        const Vec2 x = mesh.field.node(i, j);
        for (int d = 0; d < 4; ++d) {
            const int ni = i + kDirs[d][0], nj = j + kDirs[d][1];
            Arm& arm = mesh.arms[u][d];
            const int nid = f.id(ni, nj);
            if (f.status[nid] == NodeStatus::Interior) {
                arm.nb = mesh.unknown_of_node[nid];
                arm.len = h;
                continue;
            }
            const Vec2 dir(kDirs[d][0], kDirs[d][1]);
            double s_in = inner_crossing(x, dir, problem.delta, h);
            double s_out = outer_crossing(domain, x, dir, h);
            double s;
            bool inner;
            if (s_in > 0.0 && (s_out < 0.0 || s_in <= s_out)) {
                s = s_in;
                inner = true;
            } else if (s_out > 0.0) {
                s = s_out;
                inner = false;
            } else {
                // neighbor excluded but no crossing found (grazing corner);
                // pin the foot at the far end of the arm
                s = h;
                inner = f.node(ni, nj).norm() <= problem.delta;
            }
            s = std::max(s, kAlphaMin * h);
            arm.cut = true;
            arm.inner = inner;
            arm.len = s;
            arm.foot = x + s * dir;
            arm.foot_val = inner ? inner_val(arm.foot) : outer_val(arm.foot);
            if (f.status[nid] == NodeStatus::Exterior)
                f.status[nid] = inner ? NodeStatus::InnerBoundary : NodeStatus::OuterBoundary;
            f.values[nid] = arm.foot_val;
        }
    }

    // boundary foot lists, one per cut arm
    for (int u = 0; u < nun; ++u) {
        for (int d = 0; d < 4; ++d) {
            const Arm& arm = mesh.arms[u][d];
            if (!arm.cut) continue;
            BoundaryFoot foot;
            foot.point = arm.foot;
            foot.value = arm.foot_val;
            if (arm.inner) {
                const double theta = std::atan2(arm.foot.y(), arm.foot.x());
                foot.outward_normal = -arm.foot.normalized();  // outward of the excised domain
                foot.arc_position =
                    problem.delta * (theta < 0 ? theta + 2 * 3.14159265358979323846 : theta);
                f.inner_feet.push_back(foot);
            } else {
                foot.outward_normal = domain.outward_normal(arm.foot);
                foot.arc_position = domain.arc_position(arm.foot);
                f.outer_feet.push_back(foot);
            }
        }
    }
    return mesh;
}

// Gradient magnitude at every unknown from the current iterate.
void node_gradients(const Mesh& mesh, const Eigen::VectorXd& u, Eigen::VectorXd& grad_mag) {
    const int nun = static_cast<int>(mesh.arms.size());
    grad_mag.resize(nun);
    for (int p = 0; p < nun; ++p) {
        const auto& arms = mesh.arms[p];
        auto value = [&](const Arm& a) { return a.cut ? a.foot_val : u[a.nb]; };
        const double up = u[p];
        auto deriv = [&](const Arm& plus, const Arm& minus) {
            const double hp = plus.len, hm = minus.len;
            const double vp = value(plus), vm = value(minus);
            return (hm * hm * vp - hp * hp * vm + (hp * hp - hm * hm) * up) /
                   (hp * hm * (hp + hm));
        };
        const double ux = deriv(arms[0], arms[1]);
        const double uy = deriv(arms[2], arms[3]);
        grad_mag[p] = std::hypot(ux, uy);
    }
}

void assemble(const Mesh& mesh, const Eigen::VectorXd& coeff,
              Eigen::SparseMatrix<double>& A, Eigen::VectorXd& b) {
    const int nun = static_cast<int>(mesh.arms.size());
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * nun);
    b = Eigen::VectorXd::Zero(nun);
    for (int p = 0; p < nun; ++p) {
        const auto& arms = mesh.arms[p];
        const double wx = 0.5 * (arms[2].len + arms[3].len);  // transverse widths
        const double wy = 0.5 * (arms[0].len + arms[1].len);
        double diag = 0.0;
        for (int d = 0; d < 4; ++d) {
            const Arm& arm = arms[d];
            const double w = (d < 2) ? wx : wy;
            double a_face;
            if (arm.cut) {
                a_face = coeff[p];
            } else {
                a_face = 2.0 * coeff[p] * coeff[arm.nb] / (coeff[p] + coeff[arm.nb]);
            }
            const double t = w * a_face / arm.len;
            diag += t;
            if (arm.cut)
                b[p] += t * arm.foot_val;
            else
                trip.emplace_back(p, arm.nb, -t);
        }
        trip.emplace_back(p, p, diag);
    }
    A.resize(nun, nun);
    A.setFromTriplets(trip.begin(), trip.end());
}

Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                             const Eigen::VectorXd* guess, double tol, int picard_iter) {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> solver;
    solver.setTolerance(tol);
    solver.setMaxIterations(30000);
    solver.compute(A);
    Eigen::VectorXd x = guess ? solver.solveWithGuess(b, *guess).eval() : solver.solve(b).eval();
    if (solver.info() != Eigen::Success) {
        // retry cold before giving up
        solver.setMaxIterations(60000);
        x = solver.solve(b);
        if (solver.info() != Eigen::Success && solver.error() > 100.0 * tol)
            throw convergence_error("linear solve broke down at Picard iteration " +
                                    std::to_string(picard_iter) + " (residual " +
                                    std::to_string(solver.error()) + ")");
    }
    return x;
}

void compute_ghosts(Mesh& mesh, const Eigen::VectorXd& u) {
    DiscreteField& f = mesh.field;
    const int nun = static_cast<int>(mesh.arms.size());
    std::vector<double> best_alpha(f.status.size(), 0.0);
    for (int p = 0; p < nun; ++p) {
        const int i = mesh.node_i[p], j = mesh.node_j[p];
        for (int d = 0; d < 4; ++d) {
            const Arm& arm = mesh.arms[p][d];
            if (!arm.cut) continue;
            const int nid = f.id(i + kDirs[d][0], j + kDirs[d][1]);
            const double alpha = arm.len / f.h;
            if (alpha <= best_alpha[nid]) continue;
            best_alpha[nid] = alpha;
            // linear extrapolation through the foot value and the interior node
            f.ghost[nid] = arm.foot_val + (arm.foot_val - u[p]) * (1.0 - alpha) / alpha;
            f.ghost_ok[nid] = 1;
        }
    }
    for (int p = 0; p < nun; ++p) {
        const int nid = f.id(mesh.node_i[p], mesh.node_j[p]);
        f.ghost[nid] = u[p];
        f.ghost_ok[nid] = 1;
    }
}

}  // namespace

ExcisedProblem ExcisedProblem::make(PlanarDomain domain, double delta,
                                    RegularizedNonlinearity nl_reg, double inner_value,
                                    double outer_value) {
    if (!(delta > 0.0)) throw validation_error("ExcisedProblem: delta must be > 0");
    if (!domain.contains_origin())
        throw validation_error("ExcisedProblem: the origin must lie inside the domain");
    if (!(domain.signed_distance(Vec2::Zero()) > 2.0 * delta))
        throw validation_error("ExcisedProblem: need B_{2 delta}(O) inside the domain");
    if (!(inner_value > 0.0)) throw validation_error("ExcisedProblem: inner_value must be > 0");
    return ExcisedProblem{std::move(domain), delta, std::move(nl_reg), inner_value, outer_value};
}

DiscreteField solve(const ExcisedProblem& problem, double h, const SolverOptions& opts,
                    const BoundaryData* data) {
    if (!(h > 0.0)) throw validation_error("solve: h must be > 0");
    if (2.0 * problem.delta / h < 8.0 - 1e-9)
        throw validation_error("solve: the inner circle must span at least 8 nodes across");

    Mesh mesh = build_mesh(problem, h, data);
    const int nun = static_cast<int>(mesh.arms.size());

    // constant-coefficient start (the coefficient cancels, so this is the
    // harmonic solution with the same boundary data)
    Eigen::SparseMatrix<double> A;
    Eigen::VectorXd b;
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(nun);
    assemble(mesh, ones, A, b);
    Eigen::VectorXd u = linear_solve(A, b, nullptr, opts.linear_tol, 0);

    Eigen::VectorXd grad_mag, coeff(nun);
    double resid = std::numeric_limits<double>::infinity();
    int iter = 0;
    bool converged = false;
    for (iter = 1; iter <= opts.max_iterations; ++iter) {
        node_gradients(mesh, u, grad_mag);
        for (int p = 0; p < nun; ++p) coeff[p] = problem.nl_reg.a(grad_mag[p]);
        assemble(mesh, coeff, A, b);
        const Eigen::VectorXd u_tilde = linear_solve(A, b, &u, opts.linear_tol, iter);
        resid = (u_tilde - u).lpNorm<Eigen::Infinity>() /
                std::max(1.0, u_tilde.lpNorm<Eigen::Infinity>());
        if (!std::isfinite(resid))
            throw convergence_error("solve: non-finite iterate at Picard iteration " +
                                    std::to_string(iter));
        if (resid <= opts.picard_tol) {
            u = u_tilde;
            converged = true;
            break;
        }
        u += opts.theta * (u_tilde - u);
    }

    DiscreteField& f = mesh.field;
    for (int p = 0; p < nun; ++p) f.values[f.id(mesh.node_i[p], mesh.node_j[p])] = u[p];
    compute_ghosts(mesh, u);
    f.residual_norm = resid;
    f.iterations = std::min(iter, opts.max_iterations);
    f.converged = converged;
    return std::move(mesh.field);
}

double DiscreteField::value_at(const Vec2& x, bool* ok) const {
    if (ok) *ok = false;
    const double gx = x.x() / h - static_cast<double>(ix_min);
    const double gy = x.y() / h - static_cast<double>(iy_min);
    const int i = static_cast<int>(std::floor(gx));
    const int j = static_cast<int>(std::floor(gy));
    if (i < 0 || j < 0 || i + 1 >= nx || j + 1 >= ny) return 0.0;
    const double fx = gx - i, fy = gy - j;
    double corner[4];
    const int ids[4] = {id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1)};
    for (int k = 0; k < 4; ++k) {
        if (status[ids[k]] == NodeStatus::Interior)
            corner[k] = values[ids[k]];
        else if (ghost_ok[ids[k]])
            corner[k] = ghost[ids[k]];
        else
            return 0.0;
    }
    if (ok) *ok = true;
    return (1 - fx) * (1 - fy) * corner[0] + fx * (1 - fy) * corner[1] +
           (1 - fx) * fy * corner[2] + fx * fy * corner[3];
}

void DiscreteField::interior_range(double& min_value, double& max_value) const {
    min_value = std::numeric_limits<double>::infinity();
    max_value = -min_value;
    for (long k = 0; k < values.size(); ++k) {
        if (status[k] != NodeStatus::Interior) continue;
        min_value = std::min(min_value, values[k]);
        max_value = std::max(max_value, values[k]);
    }
}

void DiscreteField::boundary_range(double& min_value, double& max_value) const {
    min_value = std::numeric_limits<double>::infinity();
    max_value = -min_value;
    for (const auto* feet : {&outer_feet, &inner_feet}) {
        for (const BoundaryFoot& f : *feet) {
            min_value = std::min(min_value, f.value);
            max_value = std::max(max_value, f.value);
        }
    }
}

FluxTrace boundary_flux(const DiscreteField& field) {
    if (!field.converged)
        throw convergence_error("boundary_flux: field is not converged");
    FluxTrace trace;
    for (const BoundaryFoot& foot : field.outer_feet) {
        const Vec2 nu_in = -foot.outward_normal;
        bool ok1 = false, ok2 = false;
        const double u1 = field.value_at(foot.point + field.h * nu_in, &ok1);
        const double u2 = field.value_at(foot.point + 2.0 * field.h * nu_in, &ok2);
        if (!ok1 || !ok2) {
            ++trace.dropped;
            continue;
        }
        FluxSample s;
        s.arc_position = foot.arc_position;
        s.point = foot.point;
        s.normal = foot.outward_normal;
        s.normal_derivative = (3.0 * foot.value - 4.0 * u1 + u2) / (2.0 * field.h);
        trace.samples.push_back(s);
    }
    const size_t total = field.outer_feet.size();
    if (total == 0) throw convergence_error("boundary_flux: no outer boundary feet");
    if (trace.dropped > 0.05 * static_cast<double>(total))
        throw convergence_error("boundary_flux: " + std::to_string(trace.dropped) + " of " +
                                std::to_string(total) + " samples lost their stencil");
    trace.perimeter = field.outer_perimeter;
    std::sort(trace.samples.begin(), trace.samples.end(),
              [](const FluxSample& a, const FluxSample& b) {
                  return a.arc_position < b.arc_position;
              });
    return trace;
}

ConstancyDefect constancy_defect(const FluxTrace& trace) {
    ConstancyDefect out;
    const size_t n = trace.samples.size();
    if (n == 0) throw validation_error("constancy_defect: empty trace");
    const double L = trace.perimeter;
    double wsum = 0.0, fsum = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double prev = trace.samples[(k + n - 1) % n].arc_position - (k == 0 ? L : 0.0);
        const double next = trace.samples[(k + 1) % n].arc_position + (k + 1 == n ? L : 0.0);
        const double w = 0.5 * (next - prev);
        wsum += w;
        fsum += w * trace.samples[k].normal_derivative;
    }
    out.mean_flux = fsum / wsum;
    if (std::abs(out.mean_flux) < 1e-12) {
        out.defined = false;
        return out;
    }
    out.defined = true;
    for (const FluxSample& s : trace.samples)
        out.defect = std::max(out.defect, std::abs(s.normal_derivative - out.mean_flux) /
                                              std::abs(out.mean_flux));
    return out;
}

Tristate comparison_check(const ExcisedProblem& problem, const BoundaryData& low,
                          const BoundaryData& high, double h, const SolverOptions& opts) {
    DiscreteField flow = solve(problem, h, opts, &low);
    DiscreteField fhigh = solve(problem, h, opts, &high);
    double scale = 1.0;
    for (size_t k = 0; k < fhigh.outer_feet.size(); ++k) {
        scale = std::max(scale, std::abs(fhigh.outer_feet[k].value));
        if (flow.outer_feet[k].value > fhigh.outer_feet[k].value + 1e-12 * scale)
            throw validation_error("comparison_check: boundary data are not ordered");
    }
    for (size_t k = 0; k < fhigh.inner_feet.size(); ++k) {
        scale = std::max(scale, std::abs(fhigh.inner_feet[k].value));
        if (flow.inner_feet[k].value > fhigh.inner_feet[k].value + 1e-12 * scale)
            throw validation_error("comparison_check: boundary data are not ordered");
    }
    if (!flow.converged || !fhigh.converged) return Tristate::Inconclusive;
    const double tol = 1e-8 * scale;
    for (long k = 0; k < flow.values.size(); ++k) {
        if (flow.status[k] != NodeStatus::Interior) continue;
        if (flow.values[k] > fhigh.values[k] + tol) return Tristate::False;
    }
    return Tristate::True;
}

double harnack_quotient(const ExcisedProblem& problem, double h, const HarnackBall& ball,
                        const SolverOptions& opts) {
    if (!(problem.domain.signed_distance(ball.center) >= ball.radius))
        throw validation_error("harnack_quotient: ball is not inside the domain");
    if (!(ball.center.norm() - ball.radius >= problem.delta))
        throw validation_error("harnack_quotient: ball overlaps the excised disk");
    DiscreteField field = solve(problem, h, opts);
    if (!field.converged) throw convergence_error("harnack_quotient: solve did not converge");
    double min_value;
    double max_value;
    field.interior_range(min_value, max_value);
    if (min_value < -1e-10 * std::max(1.0, problem.inner_value))
        throw validation_error("harnack_quotient: field is not nonnegative");
    // fixed polar sampling of the half ball, so the quotient does not jump
    // with the node set under refinement
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    auto take = [&](const Vec2& x) {
        bool ok = false;
        const double u = field.value_at(x, &ok);
        if (!ok) throw validation_error("harnack_quotient: sample left the field");
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    };
    take(ball.center);
    for (int k = 1; k <= 64; ++k) {
        const double r = 0.5 * ball.radius * k / 64.0;
        for (int m = 0; m < 128; ++m) {
            const double th = 2.0 * 3.14159265358979323846 * m / 128.0;
            take(ball.center + r * Vec2(std::cos(th), std::sin(th)));
        }
    }
    if (lo < 1e-14) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

double reflection_comparison_defect(const DiscreteField& field, const Direction& xi, double t) {
    double defect = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (int j = 0; j < field.ny; ++j) {
        for (int i = 0; i < field.nx; ++i) {
            if (field.status[field.id(i, j)] != NodeStatus::Interior) continue;
            const Vec2 x = field.node(i, j);
            if (x.dot(xi.xi()) <= t) continue;
            bool ok = false;
            const double reflected = field.value_at(reflect_point(xi, t, x), &ok);
            if (!ok) continue;
            defect = std::max(defect, reflected - field.values[field.id(i, j)]);
            any = true;
        }
    }
    if (!any)
        throw validation_error("reflection_comparison_defect: no comparable nodes in the cap");
    return defect;
}

}  // namespace serrinlab
