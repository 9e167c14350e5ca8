#pragma once

#include "symrigid/forced.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace symrigid {

using Json = nlohmann::ordered_json;

inline constexpr int kDocumentVersion = 1;

// A framework plus its (optional) symmetry. `action` lists every element.
struct FrameworkDocument {
  Framework fw;
  std::optional<SymmetryGroup> group;
  std::vector<Perm> action;
};

// Number format for matrices and coordinates: doubles, or exact decimal
// strings of the stored binary values.
enum class NumberFormat { decimal_double, exact_string };

Json group_to_json(const SymmetryGroup& g, NumberFormat fmt = NumberFormat::decimal_double);
SymmetryGroup group_from_json(const Json& j, const std::string& path = "/group");

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& j);

Json gaingraph_to_json(const GainGraph& gg, NumberFormat fmt = NumberFormat::decimal_double);
GainGraph gaingraph_from_json(const Json& j);

Json framework_to_json(const FrameworkDocument& doc, NumberFormat fmt = NumberFormat::decimal_double);
FrameworkDocument framework_from_json(const Json& j);

Json report_to_json(const RigidityReport& r);
Json report_to_json(const ForcedReport& r);
Json report_to_json(const CombinatorialVerdict& v);

// Reads a number given as a JSON number, a decimal string, or "p/q".
double number_from_json(const Json& j, const std::string& path);
// Exact decimal expansion of a double.
std::string exact_decimal(double x);

// Parses text; errors carry the JSON path or byte offset (InvalidDocument).
Json parse_document(const std::string& text);
Json read_document(const std::string& file);
void write_document(const std::string& file, const Json& j);
// Checks kind and version.
void expect_kind(const Json& j, const std::string& kind);

// Default rank tolerance, overridden by SYMRIGID_TOL.
double default_tolerance();

}  // namespace symrigid
