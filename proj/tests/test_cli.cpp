#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "serrinlab/cli.hpp"
#include "serrinlab/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("serrin-lab");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    const int code = serrinlab::dispatch(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (out) *out = captured.str();
    return code;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("serrinlab-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("--version prints a single semver line") {
    std::string out;
    CHECK(run({"--version"}, &out) == 0);
    CHECK(out == "0.1.0\n");
}

TEST_CASE("validation errors exit with code 2") {
    TempDir tmp;
    const std::string dom = (tmp.path / "d.json").string();
    serrinlab::write_file_atomic(dom, "{\"kind\":\"circle\",\"center\":[0,0],\"radius\":1}\n");
    CHECK(run({"solve", "--domain", dom, "--p", "0.5", "--h", "0.0625", "--delta", "0.3"}) == 2);
    CHECK(run({"radial", "--p", "0.5", "--singular-value"}) == 2);
    CHECK(run({"nonsense"}) == 2);
}

TEST_CASE("radial singular-value lines") {
    std::string out;
    CHECK(run({"radial", "--nl", "p_laplacian", "--p", "3", "--n", "2", "--R", "1", "--c", "1",
               "--singular-value"},
              &out) == 0);
    CHECK(out.substr(0, 9) == "finite M=");
    const double m = std::stod(out.substr(9));
    CHECK(std::abs(m - 2.0) <= 1e-6);

    CHECK(run({"radial", "--p", "2", "--n", "2", "--singular-value"}, &out) == 0);
    CHECK(out == "infinite\n");
    CHECK(run({"radial", "--p", "2", "--n", "3", "--singular-value"}, &out) == 0);
    CHECK(out == "infinite\n");
}

TEST_CASE("radial CSV is reproducible byte for byte") {
    TempDir tmp;
    const std::string out1 = (tmp.path / "a.csv").string();
    const std::string out2 = (tmp.path / "b.csv").string();
    const std::vector<std::string> base = {"radial", "--p", "3",      "--table", "64",
                                           "--emit", "csv"};
    auto with_out = [&](const std::string& o) {
        auto v = base;
        v.push_back("--out");
        v.push_back(o);
        return v;
    };
    CHECK(run(with_out(out1)) == 0);
    CHECK(run(with_out(out2)) == 0);
    const std::string a = slurp(out1);
    CHECK(a == slurp(out2));
    CHECK(a.substr(0, a.find('\n')) == "r,v,v_prime,first_integral_defect");
}

TEST_CASE("moving-plane CSV over a small sweep") {
    TempDir tmp;
    const std::string dom = (tmp.path / "d.json").string();
    serrinlab::write_file_atomic(dom,
                                 "{\"kind\":\"circle\",\"center\":[0.3,0],\"radius\":1}\n");
    const std::string out = (tmp.path / "mp.csv").string();
    CHECK(run({"moving-plane", "--domain", dom, "--directions", "8", "--emit", "csv", "--out",
               out}) == 0);
    const std::string csv = slurp(out);
    CHECK(csv.substr(0, csv.find('\n')) == "xi_x,xi_y,t_plus,t_minus,sum,case,contact_x,contact_y");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);  // header + 8 rows
}

TEST_CASE("solve emits field and flux CSVs") {
    TempDir tmp;
    const std::string dom = (tmp.path / "d.json").string();
    serrinlab::write_file_atomic(dom, "{\"kind\":\"circle\",\"center\":[0,0],\"radius\":1}\n");
    const std::string field_csv = (tmp.path / "field.csv").string();
    const std::string flux_csv = (tmp.path / "flux.csv").string();
    std::string out;
    CHECK(run({"solve", "--domain", dom, "--p", "2", "--delta", "0.3", "--inner-value", "auto",
               "--c", "1", "--h", "0.0625", "--emit-field", field_csv, "--emit-flux", flux_csv},
              &out) == 0);
    const std::string f = slurp(field_csv);
    CHECK(f.substr(0, f.find('\n')) == "x,y,u");
    const std::string g = slurp(flux_csv);
    CHECK(g.substr(0, g.find('\n')) == "arc_s,nx,ny,du_dnu");
    CHECK(out.find("converged") != std::string::npos);
}

TEST_CASE("non-convergence exits with code 3") {
    TempDir tmp;
    const std::string dom = (tmp.path / "d.json").string();
    serrinlab::write_file_atomic(dom, "{\"kind\":\"circle\",\"center\":[0,0],\"radius\":1}\n");
    CHECK(run({"solve", "--domain", dom, "--p", "3", "--delta", "0.3", "--h", "0.0625",
               "--max-iter", "1", "--emit-field", "", "--emit-flux", ""}) == 3);
}

TEST_CASE("config file fills unset flags, flags win") {
    TempDir tmp;
    const std::string cfg = (tmp.path / "cfg.json").string();
    serrinlab::write_file_atomic(cfg, "{\"p\": 3.0, \"n\": 2}\n");
    std::string out;
    CHECK(run({"radial", "--config", cfg, "--singular-value"}, &out) == 0);
    CHECK(out.substr(0, 9) == "finite M=");  // p = 3 from the config
    CHECK(run({"radial", "--config", cfg, "--p", "2", "--singular-value"}, &out) == 0);
    CHECK(out == "infinite\n");  // explicit flag beats the config
}

TEST_CASE("unknown config keys are rejected") {
    TempDir tmp;
    const std::string cfg = (tmp.path / "cfg.json").string();
    serrinlab::write_file_atomic(cfg, "{\"p\": 3.0, \"typo_key\": 1}\n");
    CHECK(run({"radial", "--config", cfg, "--singular-value"}) == 2);
}

TEST_CASE("verify sweep writes a schema-tagged report") {
    TempDir tmp;
    const std::string cfg = (tmp.path / "exp.json").string();
    serrinlab::write_file_atomic(
        cfg,
        "{\"domain\": {\"kind\":\"ellipse\",\"center\":[0,0],\"semi_axes\":[2,1],"
        "\"rotation\":0}, \"directions\": 8}\n");
    const std::string rep = (tmp.path / "report.json").string();
    CHECK(run({"verify", "sweep", "--config", cfg, "--out", rep}) == 0);
    const auto j = serrinlab::load_json_file(rep);
    CHECK(j.at("schema").get<std::string>() == "serrin-lab/report/v1");
    CHECK(j.at("geometry").at("n_directions").get<int>() == 8);
    CHECK_FALSE(j.at("geometry").at("all_symmetric").get<bool>());
}

TEST_CASE("an indistinguishable-from-ball domain yields the inconsistency exit code") {
    // a circle whose center is within roundoff of the origin passes the
    // not-a-centered-ball guard but produces ball-like flux, so the
    // contrapositive run must flag the contradiction and exit 4
    TempDir tmp;
    const std::string cfg = (tmp.path / "exp.json").string();
    serrinlab::write_file_atomic(
        cfg,
        "{\"nl\": {\"kind\":\"p_laplacian\",\"p\":2.0}, "
        "\"domain\": {\"kind\":\"circle\",\"center\":[1e-9,0],\"radius\":1}, "
        "\"c\": 1.0, \"h_ladder\": [0.03125, 0.015625], \"directions\": 0}\n");
    const std::string rep = (tmp.path / "report.json").string();
    CHECK(run({"verify", "contrapositive", "--config", cfg, "--out", rep}) == 4);
    const auto j = serrinlab::load_json_file(rep);
    CHECK(j.at("verdict").get<std::string>() == "inconsistent");
}

TEST_CASE("verify forward end to end at coarse resolution") {
    TempDir tmp;
    const std::string cfg = (tmp.path / "exp.json").string();
    serrinlab::write_file_atomic(cfg,
                                 "{\"nl\": {\"kind\":\"p_laplacian\",\"p\":2.0}, \"R\": 1.0, "
                                 "\"c\": 1.0, \"h_ladder\": [0.03125, 0.015625], "
                                 "\"directions\": 4, \"seed\": 7}\n");
    const std::string rep = (tmp.path / "report.json").string();
    CHECK(run({"verify", "forward", "--config", cfg, "--out", rep}) == 0);
    const auto j = serrinlab::load_json_file(rep);
    CHECK(j.at("verdict").get<std::string>() == "consistent_with_theorem");
    CHECK(j.at("seed").get<int>() == 7);
    CHECK(j.at("rungs").size() == 2);
}
