#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qtb/scalar.hpp"

namespace qtb {

using json = nlohmann::json;

/// Canonical complex rendering for reports: "re±imi" with the given digit
/// count, so fixed configs diff cleanly.
json complex_json(const Complex& x, int digits);

json complex_list_json(const std::vector<Complex>& xs, int digits);

/// Ascending by magnitude, ties by principal argument; stable report order.
void sort_canonical(std::vector<Complex>& xs);

/// Writes the report to the path, or to stdout when path is empty.
void emit_report(const json& report, const std::string& out_path);

}  // namespace qtb
