#include "serrinlab/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "serrinlab/common.hpp"

namespace serrinlab {

namespace {

Vec2 point_from_json(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw validation_error(context + ": expected a [x, y] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& context) {
    if (!j.is_object()) throw validation_error(context + ": expected a JSON object");
    for (const auto& item : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw validation_error(context + ": unknown key \"" + item.key() + "\"");
    }
}

PlanarDomain domain_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw validation_error("domain: expected an object with a \"kind\" key");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "circle") {
        reject_unknown_keys(j, {"kind", "center", "radius"}, "domain(circle)");
        return PlanarDomain::make_circle(point_from_json(j.at("center"), "circle center"),
                                         j.at("radius").get<double>());
    }
    if (kind == "ellipse") {
        reject_unknown_keys(j, {"kind", "center", "semi_axes", "rotation"}, "domain(ellipse)");
        const double rotation = j.contains("rotation") ? j.at("rotation").get<double>() : 0.0;
        return PlanarDomain::make_ellipse(point_from_json(j.at("center"), "ellipse center"),
                                          point_from_json(j.at("semi_axes"), "ellipse semi_axes"),
                                          rotation);
    }
    if (kind == "polygon") {
        reject_unknown_keys(j, {"kind", "vertices"}, "domain(polygon)");
        std::vector<Vec2> vertices;
        for (const auto& v : j.at("vertices")) vertices.push_back(point_from_json(v, "vertex"));
        return PlanarDomain::make_polygon(std::move(vertices));
    }
    throw validation_error("domain: unknown kind \"" + kind + "\"");
}

json domain_to_json(const PlanarDomain& domain) {
    json j;
    if (const Circle* c = std::get_if<Circle>(&domain.shape())) {
        j["kind"] = "circle";
        j["center"] = {c->center.x(), c->center.y()};
        j["radius"] = c->radius;
    } else if (const Ellipse* e = std::get_if<Ellipse>(&domain.shape())) {
        j["kind"] = "ellipse";
        j["center"] = {e->center.x(), e->center.y()};
        j["semi_axes"] = {e->semi_axes.x(), e->semi_axes.y()};
        j["rotation"] = e->rotation;
    } else {
        const Polygon& p = std::get<Polygon>(domain.shape());
        j["kind"] = "polygon";
        json verts = json::array();
        for (const Vec2& v : p.vertices) verts.push_back({v.x(), v.y()});
        j["vertices"] = verts;
    }
    return j;
}

Nonlinearity nonlinearity_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw validation_error("nonlinearity: expected an object with a \"kind\" key");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "p_laplacian") {
        reject_unknown_keys(j, {"kind", "p"}, "nonlinearity(p_laplacian)");
        return Nonlinearity::p_laplacian(j.at("p").get<double>());
    }
    if (kind == "bounded_gradient") {
        reject_unknown_keys(j, {"kind", "p", "lambda", "Lambda"}, "nonlinearity(bounded_gradient)");
        if (j.contains("lambda") || j.contains("Lambda"))
            return Nonlinearity::bounded_gradient(j.at("p").get<double>(),
                                                  j.at("lambda").get<double>(),
                                                  j.at("Lambda").get<double>());
        return Nonlinearity::bounded_gradient(j.at("p").get<double>());
    }
    throw validation_error("nonlinearity: unknown kind \"" + kind +
                           "\" (custom kinds are library-only)");
}

json report_to_json(const ExperimentReport& report) {
    json j;
    j["schema"] = "serrin-lab/report/v1";
    j["scenario"] = to_string(report.scenario);
    j["verdict"] = to_string(report.verdict);
    j["nonlinearity"] = report.nonlinearity;
    j["c"] = report.c;
    j["delta"] = report.delta;
    j["inner_value"] = report.inner_value;
    auto rungs_to_json = [](const std::vector<LadderRung>& rungs) {
        json arr = json::array();
        for (const LadderRung& r : rungs) {
            json rj;
            rj["h"] = r.h;
            rj["defect"] = r.defect;
            rj["mean_flux"] = r.mean_flux;
            if (r.linf_error_vs_oracle) rj["linf_error_vs_oracle"] = *r.linf_error_vs_oracle;
            rj["iterations"] = r.iterations;
            rj["converged"] = r.converged;
            arr.push_back(rj);
        }
        return arr;
    };
    j["rungs"] = rungs_to_json(report.rungs);
    if (!report.baseline.empty()) j["baseline"] = rungs_to_json(report.baseline);
    if (report.geometry) {
        json g;
        g["n_directions"] = report.geometry->n_directions;
        g["all_symmetric"] = report.geometry->all_symmetric;
        g["worst_sum"] = report.geometry->worst_sum;
        json dirs = json::array();
        for (const SymmetryResult& r : report.geometry->directions) {
            json d;
            d["xi"] = {r.xi.xi().x(), r.xi.xi().y()};
            d["is_symmetric"] = r.is_symmetric;
            d["t_plus"] = r.t_plus;
            d["t_minus"] = r.t_minus;
            d["sum"] = r.sum;
            dirs.push_back(d);
        }
        g["directions"] = dirs;
        j["geometry"] = g;
    }
    return j;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : n_columns_(columns.size()) {
    for (size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& row) {
    if (row.size() != n_columns_) throw validation_error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format(row[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& row) {
    if (row.size() != n_columns_) throw validation_error("CsvWriter: column count mismatch");
    for (size_t i = 0; i < row.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += row[i];
    }
    buffer_ += '\n';
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw validation_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw validation_error("short write: " + tmp.string());
    }
    fs::rename(tmp, target);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw validation_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace serrinlab
