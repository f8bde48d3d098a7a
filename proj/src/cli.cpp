#include "serrinlab/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>

#include "serrinlab/common.hpp"
#include "serrinlab/geometry.hpp"
#include "serrinlab/io.hpp"
#include "serrinlab/nonlinearity.hpp"
#include "serrinlab/radial.hpp"
#include "serrinlab/solver.hpp"
#include "serrinlab/verify.hpp"

namespace serrinlab {

namespace {

// --config file merged under explicit flags: flags win, config fills the rest.
struct ConfigLayer {
    json cfg;
    bool present = false;

    void load(const std::string& path) {
        cfg = load_json_file(path);
        present = true;
    }
    template <typename T>
    void fill(const CLI::Option* opt, const char* key, T& target) const {
        if (!present || opt->count() > 0 || !cfg.contains(key)) return;
        target = cfg.at(key).get<T>();
    }
};

Nonlinearity make_nl(const std::string& kind, double p, std::optional<double> lambda,
                     std::optional<double> Lambda) {
    if (kind == "p_laplacian") {
        if (lambda || Lambda)
            throw validation_error("p_laplacian has exact bounds p-1; do not declare them");
        return Nonlinearity::p_laplacian(p);
    }
    if (kind == "bounded_gradient") {
        if (lambda && Lambda) return Nonlinearity::bounded_gradient(p, *lambda, *Lambda);
        if (lambda || Lambda)
            throw validation_error("declare both --lambda and --Lambda or neither");
        return Nonlinearity::bounded_gradient(p);
    }
    throw validation_error("unknown nonlinearity kind \"" + kind + "\"");
}

std::string tangency_name(TangencyCase c) {
    switch (c) {
        case TangencyCase::CaseI: return "I";
        case TangencyCase::CaseII: return "II";
        case TangencyCase::Unresolved: return "unresolved";
    }
    return "?";
}

SolverOptions solver_options_from_json(const json& j) {
    SolverOptions opts;
    reject_unknown_keys(j, {"theta", "picard_tol", "max_iterations", "linear_tol"}, "solver");
    if (j.contains("theta")) opts.theta = j.at("theta").get<double>();
    if (j.contains("picard_tol")) opts.picard_tol = j.at("picard_tol").get<double>();
    if (j.contains("max_iterations")) opts.max_iterations = j.at("max_iterations").get<int>();
    if (j.contains("linear_tol")) opts.linear_tol = j.at("linear_tol").get<double>();
    return opts;
}

// ---------------------------------------------------------------------------

int run_ellipticity(const std::string& kind, double p, std::optional<double> lambda,
                    std::optional<double> Lambda, double s_min, double s_max, int samples,
                    const std::string& out) {
    const Nonlinearity nl = make_nl(kind, p, lambda, Lambda);
    const EllipticityReport rep = nl.verify_ellipticity(s_min, s_max, samples);
    json j;
    j["nonlinearity"] = nl.name();
    j["declared_lambda"] = nl.lambda_bound();
    j["declared_Lambda"] = nl.Lambda_bound();
    j["lambda_hat"] = rep.lambda_hat;
    j["Lambda_hat"] = rep.Lambda_hat;
    j["pass"] = rep.pass;
    j["worst_s"] = rep.worst_s;
    const std::string text = j.dump(2) + "\n";
    std::cout << text;
    if (!out.empty()) write_file_atomic(out, text);
    return 0;
}

int run_radial(const std::string& kind, double p, int n, double R, double c, bool singular,
               const std::string& emit, const std::string& out, int table, double r_min_rel) {
    const Nonlinearity nl = make_nl(kind, p, std::nullopt, std::nullopt);
    RadialSolution rs(nl, n, R, c);
    if (singular) {
        const SingularValue m = rs.singular_value();
        if (m.kind == SingularValue::Kind::Finite)
            std::cout << "finite M=" << CsvWriter::format(m.value) << "\n";
        else if (m.kind == SingularValue::Kind::Infinite)
            std::cout << "infinite\n";
        else
            std::cout << "inconclusive\n";
    }
    if (!emit.empty()) {
        if (emit != "csv") throw validation_error("radial: only --emit csv is supported");
        CsvWriter csv({"r", "v", "v_prime", "first_integral_defect"});
        for (const RadialSample& s : rs.table(table, r_min_rel))
            csv.add_row({s.r, s.v, s.v_prime, s.first_integral_defect});
        write_file_atomic(out, csv.content());
    }
    return 0;
}

int run_moving_plane(const PlanarDomain& domain, int directions, const std::string& emit,
                     const std::string& out) {
    if (directions < 4) throw validation_error("moving-plane: need at least 4 directions");
    // directions come in exact +/- pairs when the count is even
    std::vector<Direction> dirs;
    for (int k = 0; k < directions; ++k) {
        if (directions % 2 == 0 && k >= directions / 2)
            dirs.push_back(dirs[k - directions / 2].opposite());
        else
            dirs.emplace_back(std::cos(2.0 * M_PI * k / directions),
                              std::sin(2.0 * M_PI * k / directions));
    }
    std::vector<CriticalReflection> crs;
    crs.reserve(dirs.size());
    for (const Direction& d : dirs) crs.push_back(critical_time(domain, d));
    std::vector<double> t_minus(dirs.size());
    for (int k = 0; k < directions; ++k) {
        if (directions % 2 == 0)
            t_minus[k] = crs[(k + directions / 2) % directions].t_critical;
        else
            t_minus[k] = critical_time(domain, dirs[k].opposite()).t_critical;
    }
    CsvWriter csv({"xi_x", "xi_y", "t_plus", "t_minus", "sum", "case", "contact_x", "contact_y"});
    for (int k = 0; k < directions; ++k) {
        const CriticalReflection& cr = crs[k];
        csv.add_row_mixed({CsvWriter::format(cr.xi.xi().x()), CsvWriter::format(cr.xi.xi().y()),
                           CsvWriter::format(cr.t_critical), CsvWriter::format(t_minus[k]),
                           CsvWriter::format(cr.t_critical + t_minus[k]),
                           tangency_name(cr.tangency), CsvWriter::format(cr.contact.x()),
                           CsvWriter::format(cr.contact.y())});
    }
    if (!emit.empty() && emit != "csv")
        throw validation_error("moving-plane: only --emit csv is supported");
    write_file_atomic(out, csv.content());
    return 0;
}

int run_solve(const PlanarDomain& domain, const std::string& kind, double p, double delta,
              const std::string& inner_value_str, double c, double h, const std::string& eps_str,
              const SolverOptions& opts, const std::string& field_out,
              const std::string& flux_out) {
    const Nonlinearity nl = make_nl(kind, p, std::nullopt, std::nullopt);
    if (!domain.contains_origin())
        throw validation_error("solve: the origin must lie inside the domain");
    const double R_b = domain.signed_distance(Vec2::Zero());

    double inner_value;
    if (inner_value_str == "auto") {
        RadialSolution oracle(nl, 2, R_b, c);
        inner_value = oracle.v(delta);
    } else {
        inner_value = std::stod(inner_value_str);
    }
    double epsilon;
    if (eps_str == "auto")
        epsilon = 1e-8 * inner_value / domain.diameter();
    else
        epsilon = std::stod(eps_str);

    ExcisedProblem problem =
        ExcisedProblem::make(domain, delta, RegularizedNonlinearity(nl, epsilon), inner_value);
    DiscreteField field = solve(problem, h, opts);

    if (!field_out.empty()) {
        CsvWriter csv({"x", "y", "u"});
        for (int j = 0; j < field.ny; ++j)
            for (int i = 0; i < field.nx; ++i)
                if (field.status[field.id(i, j)] == NodeStatus::Interior) {
                    const Vec2 x = field.node(i, j);
                    csv.add_row({x.x(), x.y(), field.values[field.id(i, j)]});
                }
        write_file_atomic(field_out, csv.content());
    }
    if (!flux_out.empty() && field.converged) {
        const FluxTrace trace = boundary_flux(field);
        CsvWriter csv({"arc_s", "nx", "ny", "du_dnu"});
        for (const FluxSample& s : trace.samples)
            csv.add_row({s.arc_position, s.normal.x(), s.normal.y(), s.normal_derivative});
        write_file_atomic(flux_out, csv.content());
    }
    if (!field.converged) {
        std::cerr << "solve: Picard iteration did not converge (residual "
                  << field.residual_norm << " after " << field.iterations << " iterations)\n";
        return 3;
    }
    std::cout << "converged in " << field.iterations
              << " iterations, residual " << CsvWriter::format(field.residual_norm) << "\n";
    return 0;
}

int run_verify(const std::string& mode, const json& cfg, const std::string& out) {
    json report_json;
    bool any_nonconverged = false;
    Verdict verdict = Verdict::Inconclusive;

    const std::vector<std::string> common_keys = {"nl",     "domain",     "R",    "c",
                                                  "h_ladder", "delta",    "directions", "seed",
                                                  "solver"};
    reject_unknown_keys(cfg, common_keys, "verify config");
    SolverOptions solver_opts;
    if (cfg.contains("solver")) solver_opts = solver_options_from_json(cfg.at("solver"));
    const int directions = cfg.contains("directions") ? cfg.at("directions").get<int>() : 64;

    if (mode == "sweep") {
        if (!cfg.contains("domain")) throw validation_error("sweep: config needs \"domain\"");
        const PlanarDomain domain = domain_from_json(cfg.at("domain"));
        const GeometrySummary g = run_symmetry_sweep(domain, directions);
        report_json["schema"] = "serrin-lab/report/v1";
        report_json["scenario"] = "sweep";
        report_json["domain"] = domain_to_json(domain);
        json gj;
        gj["n_directions"] = g.n_directions;
        gj["all_symmetric"] = g.all_symmetric;
        gj["worst_sum"] = g.worst_sum;
        json dirs = json::array();
        for (const SymmetryResult& r : g.directions) {
            json d;
            d["xi"] = {r.xi.xi().x(), r.xi.xi().y()};
            d["is_symmetric"] = r.is_symmetric;
            d["t_plus"] = r.t_plus;
            d["t_minus"] = r.t_minus;
            d["sum"] = r.sum;
            dirs.push_back(d);
        }
        gj["directions"] = dirs;
        report_json["geometry"] = gj;
        verdict = Verdict::ConsistentWithTheorem;  // sweep carries no verdict; report only
    } else if (mode == "forward") {
        ForwardConfig fc;
        if (!cfg.contains("nl")) throw validation_error("forward: config needs \"nl\"");
        fc.nl = nonlinearity_from_json(cfg.at("nl"));
        if (cfg.contains("R")) fc.R = cfg.at("R").get<double>();
        if (cfg.contains("c")) fc.c = cfg.at("c").get<double>();
        if (!cfg.contains("h_ladder")) throw validation_error("forward: config needs \"h_ladder\"");
        fc.h_ladder = cfg.at("h_ladder").get<std::vector<double>>();
        if (cfg.contains("delta")) fc.delta = cfg.at("delta").get<double>();
        fc.sweep_directions = directions;
        fc.solver = solver_opts;
        const ExperimentReport report = run_forward(fc);
        report_json = report_to_json(report);
        verdict = report.verdict;
        for (const LadderRung& r : report.rungs) any_nonconverged |= !r.converged;
    } else if (mode == "contrapositive") {
        if (!cfg.contains("nl") || !cfg.contains("domain"))
            throw validation_error("contrapositive: config needs \"nl\" and \"domain\"");
        ContrapositiveConfig cc{domain_from_json(cfg.at("domain")),
                                nonlinearity_from_json(cfg.at("nl"))};
        if (cfg.contains("c")) cc.c = cfg.at("c").get<double>();
        if (!cfg.contains("h_ladder"))
            throw validation_error("contrapositive: config needs \"h_ladder\"");
        cc.h_ladder = cfg.at("h_ladder").get<std::vector<double>>();
        if (cfg.contains("delta")) cc.delta = cfg.at("delta").get<double>();
        cc.sweep_directions = directions;
        cc.solver = solver_opts;
        const ExperimentReport report = run_contrapositive(cc);
        report_json = report_to_json(report);
        verdict = report.verdict;
        for (const LadderRung& r : report.rungs) any_nonconverged |= !r.converged;
        for (const LadderRung& r : report.baseline) any_nonconverged |= !r.converged;
    } else {
        throw validation_error("verify: unknown mode \"" + mode + "\"");
    }

    if (cfg.contains("seed")) report_json["seed"] = cfg.at("seed");
    write_file_atomic(out, report_json.dump(2) + "\n");
    if (mode == "sweep")
        std::cout << "sweep summary -> " << out << "\n";
    else
        std::cout << "verdict: " << report_json.value("verdict", std::string("n/a")) << " -> "
                  << out << "\n";
    if (any_nonconverged) return 3;
    if (verdict == Verdict::Inconsistent) return 4;
    return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"serrin-lab: overdetermined boundary problems for degenerate quasilinear "
                 "equations with a point singularity"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    argv = app.ensure_utf8(const_cast<char**>(argv));

    // --- ellipticity -------------------------------------------------------
    auto* ell = app.add_subcommand("ellipticity", "check the degenerate ellipticity condition");
    struct {
        std::string kind = "p_laplacian";
        double p = 2.0;
        double lambda = 0.0, Lambda = 0.0;
        double s_min = 1e-6, s_max = 1e6;
        int samples = 1000;
        std::string out, config;
    } ec;
    auto* ell_kind = ell->add_option("--nl", ec.kind, "p_laplacian | bounded_gradient");
    auto* ell_p = ell->add_option("--p", ec.p, "exponent p");
    auto* ell_lam = ell->add_option("--lambda", ec.lambda, "declared lambda");
    auto* ell_Lam = ell->add_option("--Lambda", ec.Lambda, "declared Lambda");
    auto* ell_smin = ell->add_option("--s-min", ec.s_min, "sampling range start");
    auto* ell_smax = ell->add_option("--s-max", ec.s_max, "sampling range end");
    auto* ell_n = ell->add_option("--samples", ec.samples, "number of log-spaced samples");
    ell->add_option("--out", ec.out, "also write the JSON report here");
    ell->add_option("--config", ec.config, "JSON config merged under explicit flags");

    // --- radial ------------------------------------------------------------
    auto* rad = app.add_subcommand("radial", "exact radial solution on the centered ball");
    struct {
        std::string kind = "p_laplacian";
        double p = 2.0;
        int n = 2;
        double R = 1.0, c = 1.0;
        bool singular = false;
        std::string emit, out = "radial.csv", config;
        int table = 1024;
        double r_min_rel = 1e-4;
    } rc;
    auto* rad_kind = rad->add_option("--nl", rc.kind, "p_laplacian | bounded_gradient");
    auto* rad_p = rad->add_option("--p", rc.p, "exponent p");
    auto* rad_n = rad->add_option("--n", rc.n, "space dimension (>= 2)");
    auto* rad_R = rad->add_option("--R", rc.R, "ball radius");
    auto* rad_c = rad->add_option("--c", rc.c, "boundary flux magnitude");
    rad->add_flag("--singular-value", rc.singular, "print the singular value classification");
    rad->add_option("--emit", rc.emit, "csv");
    rad->add_option("--out", rc.out, "output file for --emit");
    auto* rad_table = rad->add_option("--table", rc.table, "table resolution");
    auto* rad_rmin = rad->add_option("--r-min-rel", rc.r_min_rel, "smallest tabulated r / R");
    rad->add_option("--config", rc.config, "JSON config merged under explicit flags");

    // --- moving-plane ------------------------------------------------------
    auto* mp = app.add_subcommand("moving-plane", "critical reflections over a direction sweep");
    struct {
        std::string domain_path;
        int directions = 64;
        std::string emit = "csv", out = "moving_plane.csv", config;
    } mc;
    auto* mp_dom = mp->add_option("--domain", mc.domain_path, "domain JSON file");
    auto* mp_dirs = mp->add_option("--directions", mc.directions, "sweep size");
    mp->add_option("--emit", mc.emit, "csv");
    mp->add_option("--out", mc.out, "output CSV");
    mp->add_option("--config", mc.config, "JSON config merged under explicit flags");

    // --- solve -------------------------------------------------------------
    auto* so = app.add_subcommand("solve", "finite-difference solve on the excised domain");
    so->set_help_flag("--help", "print this help message");  // frees -h for the grid spacing
    struct {
        std::string domain_path;
        std::string kind = "p_laplacian";
        double p = 2.0;
        double delta = 0.1;
        std::string inner_value = "auto";
        double c = 1.0;
        double h = 0.0078125;
        std::string epsilon = "auto";
        double theta = 0.7, picard_tol = 1e-9, linear_tol = 1e-12;
        int max_iter = 500;
        std::string field_out = "field.csv", flux_out = "flux.csv", config;
    } sc;
    auto* so_dom = so->add_option("--domain", sc.domain_path, "domain JSON file");
    auto* so_kind = so->add_option("--nl", sc.kind, "p_laplacian | bounded_gradient");
    auto* so_p = so->add_option("--p", sc.p, "exponent p");
    auto* so_delta = so->add_option("--delta", sc.delta, "excision radius");
    auto* so_inner = so->add_option("--inner-value", sc.inner_value, "number or \"auto\"");
    auto* so_c = so->add_option("--c", sc.c, "reference flux for auto inner value");
    auto* so_h = so->add_option("--h", sc.h, "grid spacing");
    auto* so_eps = so->add_option("--epsilon", sc.epsilon, "regularization, number or \"auto\"");
    auto* so_theta = so->add_option("--theta", sc.theta, "Picard damping");
    auto* so_ptol = so->add_option("--picard-tol", sc.picard_tol, "Picard relative tolerance");
    auto* so_maxit = so->add_option("--max-iter", sc.max_iter, "Picard iteration cap");
    auto* so_ltol = so->add_option("--linear-tol", sc.linear_tol, "linear solver tolerance");
    so->add_option("--emit-field", sc.field_out, "field CSV (x,y,u)");
    so->add_option("--emit-flux", sc.flux_out, "flux CSV (arc_s,nx,ny,du_dnu)");
    so->add_option("--config", sc.config, "JSON config merged under explicit flags");

    // --- verify ------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "end-to-end theorem checks");
    ver->require_subcommand(1);
    struct {
        std::string config, out = "report.json";
    } vc;
    auto* ver_fwd = ver->add_subcommand("forward", "centered ball vs the radial oracle");
    auto* ver_con = ver->add_subcommand("contrapositive", "non-ball domain vs paired baseline");
    auto* ver_swp = ver->add_subcommand("sweep", "symmetry sweep only");
    for (auto* sub : {ver_fwd, ver_con, ver_swp}) {
        sub->add_option("--config", vc.config, "experiment JSON config")->required();
        sub->add_option("--out", vc.out, "report location");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // help/version exit 0, parse failures are validation errors
    }

    try {
        if (ell->parsed()) {
            ConfigLayer layer;
            if (!ec.config.empty()) layer.load(ec.config);
            if (layer.present)
                reject_unknown_keys(layer.cfg,
                                    {"nl", "p", "lambda", "Lambda", "s_min", "s_max", "samples"},
                                    "ellipticity config");
            layer.fill(ell_kind, "nl", ec.kind);
            layer.fill(ell_p, "p", ec.p);
            layer.fill(ell_smin, "s_min", ec.s_min);
            layer.fill(ell_smax, "s_max", ec.s_max);
            layer.fill(ell_n, "samples", ec.samples);
            std::optional<double> lambda, Lambda;
            if (ell_lam->count() || (layer.present && layer.cfg.contains("lambda"))) {
                layer.fill(ell_lam, "lambda", ec.lambda);
                lambda = ec.lambda;
            }
            if (ell_Lam->count() || (layer.present && layer.cfg.contains("Lambda"))) {
                layer.fill(ell_Lam, "Lambda", ec.Lambda);
                Lambda = ec.Lambda;
            }
            return run_ellipticity(ec.kind, ec.p, lambda, Lambda, ec.s_min, ec.s_max, ec.samples,
                                   ec.out);
        }
        if (rad->parsed()) {
            ConfigLayer layer;
            if (!rc.config.empty()) layer.load(rc.config);
            if (layer.present)
                reject_unknown_keys(layer.cfg, {"nl", "p", "n", "R", "c", "table", "r_min_rel"},
                                    "radial config");
            layer.fill(rad_kind, "nl", rc.kind);
            layer.fill(rad_p, "p", rc.p);
            layer.fill(rad_n, "n", rc.n);
            layer.fill(rad_R, "R", rc.R);
            layer.fill(rad_c, "c", rc.c);
            layer.fill(rad_table, "table", rc.table);
            layer.fill(rad_rmin, "r_min_rel", rc.r_min_rel);
            return run_radial(rc.kind, rc.p, rc.n, rc.R, rc.c, rc.singular, rc.emit, rc.out,
                              rc.table, rc.r_min_rel);
        }
        if (mp->parsed()) {
            ConfigLayer layer;
            if (!mc.config.empty()) layer.load(mc.config);
            if (layer.present)
                reject_unknown_keys(layer.cfg, {"domain", "directions"}, "moving-plane config");
            layer.fill(mp_dirs, "directions", mc.directions);
            PlanarDomain domain = [&]() {
                if (mp_dom->count() == 0 && layer.present && layer.cfg.contains("domain"))
                    return domain_from_json(layer.cfg.at("domain"));
                if (mc.domain_path.empty())
                    throw validation_error("moving-plane: --domain is required");
                return domain_from_json(load_json_file(mc.domain_path));
            }();
            return run_moving_plane(domain, mc.directions, mc.emit, mc.out);
        }
        if (so->parsed()) {
            ConfigLayer layer;
            if (!sc.config.empty()) layer.load(sc.config);
            if (layer.present)
                reject_unknown_keys(layer.cfg,
                                    {"domain", "nl", "p", "delta", "inner_value", "c", "h",
                                     "epsilon", "theta", "picard_tol", "max_iterations",
                                     "linear_tol"},
                                    "solve config");
            layer.fill(so_kind, "nl", sc.kind);
            layer.fill(so_p, "p", sc.p);
            layer.fill(so_delta, "delta", sc.delta);
            layer.fill(so_c, "c", sc.c);
            layer.fill(so_h, "h", sc.h);
            layer.fill(so_theta, "theta", sc.theta);
            layer.fill(so_ptol, "picard_tol", sc.picard_tol);
            layer.fill(so_maxit, "max_iterations", sc.max_iter);
            layer.fill(so_ltol, "linear_tol", sc.linear_tol);
            if (so_inner->count() == 0 && layer.present && layer.cfg.contains("inner_value")) {
                const auto& v = layer.cfg.at("inner_value");
                sc.inner_value = v.is_string() ? v.get<std::string>()
                                               : CsvWriter::format(v.get<double>());
            }
            if (so_eps->count() == 0 && layer.present && layer.cfg.contains("epsilon")) {
                const auto& v = layer.cfg.at("epsilon");
                sc.epsilon = v.is_string() ? v.get<std::string>()
                                           : CsvWriter::format(v.get<double>());
            }
            PlanarDomain domain = [&]() {
                if (so_dom->count() == 0 && layer.present && layer.cfg.contains("domain"))
                    return domain_from_json(layer.cfg.at("domain"));
                if (sc.domain_path.empty()) throw validation_error("solve: --domain is required");
                return domain_from_json(load_json_file(sc.domain_path));
            }();
            SolverOptions opts;
            opts.theta = sc.theta;
            opts.picard_tol = sc.picard_tol;
            opts.max_iterations = sc.max_iter;
            opts.linear_tol = sc.linear_tol;
            return run_solve(domain, sc.kind, sc.p, sc.delta, sc.inner_value, sc.c, sc.h,
                             sc.epsilon, opts, sc.field_out, sc.flux_out);
        }
        if (ver->parsed()) {
            std::string mode;
            if (ver_fwd->parsed()) mode = "forward";
            if (ver_con->parsed()) mode = "contrapositive";
            if (ver_swp->parsed()) mode = "sweep";
            const json cfg = load_json_file(vc.config);
            return run_verify(mode, cfg, vc.out);
        }
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace serrinlab
