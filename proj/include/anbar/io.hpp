#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "anbar/barcodes.hpp"
#include "anbar/complex.hpp"

namespace anbar {

using json = nlohmann::json;

/// A complex with its cocycle as read from (or written to) the JSON format
///   {"theta": [θ_1, ...], "max_simplices": [[v, ...], ...],
///    "cocycle": {"x-y": ["q0", "q1", ...], ...}}
/// with optional "vertex_count". Values may be given as strings ("p/q",
/// decimals) or JSON numbers; short coordinate lists are zero-padded.
struct CocycleInput {
  SimplicialComplex complex;
  Cocycle cocycle;
  BasisPtr basis;
  std::vector<std::string> theta_text;
  std::vector<std::string> warnings; // independence heuristics
};

/// Parses and validates (edge coverage, antisymmetry, triangle identity).
/// Every failure is an input_error naming the offending item.
CocycleInput parse_cocycle_json(const std::string& text, double tolerance = 1e-9);
CocycleInput load_cocycle_file(const std::filesystem::path& path, double tolerance = 1e-9);
json cocycle_to_json(const SimplicialComplex& kx, const Cocycle& c, const std::vector<std::string>& theta_text);

/// Reads a JSON document; syntax errors become input_error with line/column.
json read_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& source);
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

json value_to_json(const RealValue& v);
RealValue value_from_json(const json& j, const BasisPtr& basis);
json configuration_to_json(const Configuration& c);
Configuration configuration_from_json(const json& j, ConfigDomain domain, const BasisPtr& basis);

/// Serialized report; `run_config` is embedded verbatim.
json report_to_json(const BarcodeReport& rep, DeltaSign sign, const std::vector<std::string>& theta_text,
                    const json& run_config);
/// Inverse of report_to_json for the fields needed by plotting and
/// comparisons. Throws input_error on a malformed report.
BarcodeReport report_from_json(const json& j, DeltaSign* sign = nullptr);

/// Debug dump of a windowed cover: lattice, vertices with lifted values,
/// complete and flagged cells.
json cover_to_json(const WindowedCover& cov);

/// One SVG per degree: δ on the real axis (two colours by sign), γ on (0, ∞).
std::string degree_svg(const DegreeReport& d, DeltaSign sign);

std::string dump(const json& j);

} // namespace anbar
