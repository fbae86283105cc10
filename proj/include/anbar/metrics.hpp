#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anbar/barcodes.hpp"

namespace anbar {

enum class MatchingRegime {
  collision,  // bijections only, ∞ on mass mismatch
  bottleneck, // points may be deleted at cost |t| (boundary set K = {0})
};

/// Bottleneck-type matching distance on float embeds. Throws contract_error
/// when the configurations carry different domain tags.
double matching_distance(const Configuration& c1, const Configuration& c2, MatchingRegime regime);

struct StabilityRow {
  std::size_t trial = 0;
  double epsilon = 0;
  int degree = 0;
  double d_input = 0;
  double d_delta = 0;
  double d_gamma = 0;
  double modulus = 0; // max(d_delta, d_gamma) / ε, 0 when ε = 0
};

struct StabilityResult {
  std::vector<StabilityRow> rows;
  std::size_t rejected = 0;
  double max_modulus = 0;
  std::vector<std::string> warnings;
};

/// Random exact perturbations c' = c + coboundary(u) with d_flat(c, c') = ε
/// (ε given as a decimal literal, used exactly). Trials are seeded
/// deterministically from `seed`.
StabilityResult stability_experiment(const SimplicialComplex& kx, const Cocycle& c, const std::string& epsilon,
                                     std::size_t trials, std::uint64_t seed, const StabilizeOptions& opt);

/// Perturbation used by one trial; exposed for tests.
Cocycle exact_perturbation(const SimplicialComplex& kx, const Cocycle& c, const Rational& epsilon, std::uint64_t seed);

std::string stability_csv(const StabilityResult& res);

} // namespace anbar
