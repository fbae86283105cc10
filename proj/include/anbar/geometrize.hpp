#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anbar/barcodes.hpp"
#include "anbar/io.hpp"

namespace anbar {

/// Finite metric space with an antisymmetric function on a symmetric pair
/// set S. Pairs are stored once, oriented small → large.
struct MetricData {
  std::size_t n = 0;
  std::vector<std::vector<double>> d;
  std::map<Edge, RealValue> f;
  BasisPtr basis;
  std::vector<std::string> theta_text;

  bool in_s(Vertex x, Vertex y) const;
  /// f(x, y) with f(y, x) = -f(x, y); the pair must be in S.
  RealValue value(Vertex x, Vertex y) const;
};

/// Throws input_error unless d is a symmetric, nonnegative table with zero
/// diagonal satisfying the triangle inequality.
void validate_metric(const MetricData& md);

/// JSON: {"theta": [...], "points": [[...], ...], "metric": "euclidean" |
/// "manhattan" | "chebyshev"} or {"distances": [[...]]}, plus
/// "pairs": {"x-y": ["q0", ...]}. `metric_override` replaces "metric".
MetricData parse_metric_json(const json& doc, const std::string& metric_override = "");
MetricData load_metric_file(const std::filesystem::path& path, const std::string& metric_override = "");
/// CSV pair: an n×n distance matrix (one row per line) and a pair list with
/// rows "x,y,q0[,q1...]"; '#' starts a comment line.
MetricData load_metric_csv(const std::filesystem::path& distances, const std::filesystem::path& pairs,
                           const std::vector<std::string>& theta_text);

struct EpsilonMax {
  std::optional<double> value; // nullopt: unbounded
  std::optional<std::array<Vertex, 3>> triple; // a violator realizing the minimum
};

EpsilonMax epsilon_max(const MetricData& md);

/// Vertex sets of diameter < ε, up to dimension `dim_cap`.
SimplicialComplex rips_complex(const MetricData& md, double epsilon, int dim_cap = 3);

/// Cocycle with the values of f on the edges of kx. Throws input_error for an
/// edge outside S and invalid_cocycle_error naming a violating triangle.
Cocycle induced_cocycle(const MetricData& md, const SimplicialComplex& kx);

struct ScaleReport {
  double epsilon = 0;
  SimplicialComplex complex;
  BarcodeReport report;
};

/// Refuses (input_error) any scale ≥ ε(f,d), naming the violating triple.
std::vector<ScaleReport> geometrize_pipeline(const MetricData& md, const std::vector<double>& scales,
                                             const StabilizeOptions& opt, int dim_cap = 3);

} // namespace anbar
