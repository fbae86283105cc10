#pragma once

#include <string>
#include <vector>

#include "anbar/barcodes.hpp"

namespace anbar {

/// Pure n-complex in which every (n-1)-simplex lies in exactly two n-simplices.
/// Returns an empty string when satisfied, else the reason.
std::string pseudo_manifold_violation(const SimplicialComplex& kx);

struct DualityRow {
  int degree = 0;
  bool delta_ok = false; // δ_r(t) = δ_{n-r}(-t)
  bool gamma_ok = false; // γ_r^ω(t) = γ_{n-r-1}^{-ω}(t)
};

struct DualityResult {
  int n = 0;
  std::vector<DualityRow> rows;
  BarcodeReport forward, backward; // ω and -ω
  bool all_pass() const;
};

/// Throws input_error when the pseudo-manifold condition fails.
DualityResult duality_check(const SimplicialComplex& kx, const Cocycle& c, const StabilizeOptions& opt);

} // namespace anbar
