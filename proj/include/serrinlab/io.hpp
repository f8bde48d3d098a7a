#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "serrinlab/geometry.hpp"
#include "serrinlab/nonlinearity.hpp"
#include "serrinlab/verify.hpp"

namespace serrinlab {

using json = nlohmann::ordered_json;

/// {"kind":"circle","center":[x,y],"radius":r} | {"kind":"ellipse",...} |
/// {"kind":"polygon","vertices":[[x,y],...]}; unknown keys are rejected.
PlanarDomain domain_from_json(const json& j);
json domain_to_json(const PlanarDomain& domain);

/// {"kind":"p_laplacian","p":3.0} | {"kind":"bounded_gradient","p":4.0}.
Nonlinearity nonlinearity_from_json(const json& j);

json report_to_json(const ExperimentReport& report);

/// CSV with a fixed header and 17-significant-digit floats, so reruns are
/// byte-identical.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> columns);
    void add_row(const std::vector<double>& row);
    void add_row_mixed(const std::vector<std::string>& row);
    const std::string& content() const { return buffer_; }
    static std::string format(double v);

private:
    std::string buffer_;
    size_t n_columns_;
};

/// Writes via a temporary in the same directory plus rename.
void write_file_atomic(const std::string& path, const std::string& content);

json load_json_file(const std::string& path);

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& context);

}  // namespace serrinlab
