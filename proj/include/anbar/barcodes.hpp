#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "anbar/configuration.hpp"
#include "anbar/cover.hpp"

namespace anbar {

/// Homology of the windowed cover with the two lower-star filtrations
/// (sublevel and superlevel) reduced once. Subspaces 𝕀_a, 𝕀^b live in
/// H_r(X̃_W) given by QuotientCoordinates; the direct operations recompute
/// everything from restricted boundary matrices and serve as the contract,
/// the filtration data as the fast path.
class BarcodeEngine {
public:
  BarcodeEngine(const WindowedCover& cov, PrimeField field);

  const WindowedCover& cover() const { return *cov_; }
  const PrimeField& field() const { return field_; }
  int max_degree() const { return cov_->dim(); }

  /// H_r(X̃_W); zero for r outside [0, dim].
  const QuotientCoordinates& homology(int r) const;

  // Direct route. Thresholds must be safe (unsafe_threshold_error otherwise).
  Subspace sublevel_image(int r, const RealValue& a) const;
  Subspace sublevel_image_strict(int r, const RealValue& a) const;
  Subspace superlevel_image(int r, const RealValue& b) const;
  Subspace superlevel_image_strict(int r, const RealValue& b) const;
  std::size_t delta_dim(int r, const RealValue& a, const RealValue& b) const;
  /// Throws domain_error unless a < b.
  std::size_t gamma_dim(int r, const RealValue& a, const RealValue& b) const;

  // Same spaces indexed by window levels: sublevel uses levels [0, n),
  // superlevel uses levels [n, end).
  Subspace sublevel_image_levels(int r, std::size_t n) const;
  Subspace superlevel_image_levels(int r, std::size_t n) const;

  // Fast path over window levels, no safety checks.
  /// δ(level a, level b) for every level b with a nonzero value.
  std::map<std::size_t, std::size_t> delta_row(int r, std::size_t a) const;
  /// Finite sublevel persistence pairs born at level a, keyed by death level.
  std::map<std::size_t, std::size_t> gamma_row(int r, std::size_t a) const;
  /// Count of finite pairs of degree r dying at level b.
  std::size_t deaths_at(int r, std::size_t b) const;
  /// dim 𝕀_{level a} - dim 𝕀_{<level a}.
  std::size_t essential_births_at(int r, std::size_t a) const;

  /// dim Σ_{a - b ≤ t} 𝕀_a ∩ 𝕀^b over window levels a, b.
  std::size_t f_rank(int r, const RealValue& t) const;
  /// Jumps of f_rank: t ↦ increase, read off the full δ table of the window.
  std::map<RealValue, std::size_t, RealLess> f_rank_jumps(int r) const;

private:
  struct Filtered {
    std::size_t level;
    DenseVector coords; // class in H_r(X̃_W)
  };
  struct Degree {
    std::unique_ptr<QuotientCoordinates> homology;
    std::vector<Filtered> sub_cycles;   // essential-or-not positive cycles, sublevel order
    std::vector<Filtered> super_cycles; // superlevel order (levels decreasing)
    std::vector<std::pair<std::size_t, std::size_t>> pairs; // finite sublevel (birth, death)
  };

  void reduce_filtrations();
  std::vector<std::size_t> cells_in_sublevel(int r, std::size_t n) const;
  std::vector<std::size_t> cells_in_superlevel(int r, std::size_t n) const;
  Subspace cycles_of(int r, const std::vector<std::size_t>& cells) const;
  Subspace boundaries_of(int r, const std::vector<std::size_t>& cells) const;
  Subspace prefix_span(int r, std::size_t upto, bool super) const;
  Subspace image_levels(int r, std::size_t n, bool super) const;

  const WindowedCover* cov_;
  PrimeField field_;
  std::vector<Degree> degrees_;
  std::unique_ptr<QuotientCoordinates> zero_;
  std::vector<SparseMatrix> boundaries_; // ∂_0 .. ∂_{dim+1}
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<int, std::size_t, bool>, Subspace> image_cache_;
};

struct DegreeReport {
  int degree = 0;
  Configuration delta{ConfigDomain::real};
  Configuration gamma{ConfigDomain::positive};
  Configuration lambda{ConfigDomain::positive};
  std::size_t beta = 0, rho = 0, c = 0;
  /// Σ_o dim H_r(X̃_{a_o}, X̃_{<a_o}).
  std::size_t orbit_relative_total = 0;
  /// δ/γ mass found at levels inside the frontier margin (dropped).
  std::size_t truncated_delta = 0, truncated_gamma = 0;
};

struct OrbitRow {
  RealValue rep;
  std::vector<Vertex> base_vertices;
  std::vector<std::size_t> relative_dims; // per degree
};

/// Hodge-form chain complex C_r = C_r^- ⊕ C_r^+ ⊕ H_r with dims
/// (ρ_{r-1}, ρ_r, β_r) and ∂_r the identity from C_r^- onto C_{r-1}^+.
struct ANComplex {
  std::vector<std::size_t> minus, plus, harmonic;
  std::vector<SparseMatrix> boundary; // boundary[r] : C_r → C_{r-1}, r ≥ 1; boundary[0] unused

  std::size_t dim(int r) const { return minus[r] + plus[r] + harmonic[r]; }
  bool boundary_squared_zero() const;
  std::vector<std::size_t> homology_dims() const;
};

ANComplex an_complex(const std::vector<std::size_t>& beta, const std::vector<std::size_t>& rho,
                     const PrimeField& field);

enum class DeltaSign { formula, figure };

struct StabilizeOptions {
  int r_max = -1; // -1: dimension of the complex
  int window_start = 1;
  int window_max = 6;
  std::uint32_t field = 2;
};

struct BarcodeReport {
  std::uint32_t field = 2;
  int dim = -1;
  std::size_t lattice_rank = 0;
  std::vector<DegreeReport> degrees;
  std::vector<OrbitRow> orbits;
  int window_radius = 0;
  bool stabilized = true;
  std::vector<std::string> warnings;
  long euler_characteristic = 0;
  bool weakly_tame = true;

  const DegreeReport& degree(int r) const;
  std::vector<std::size_t> betas() const;
  std::vector<std::size_t> rhos() const;
};

/// Full report for one window (a single connected complex).
BarcodeReport report_for_window(const WindowedCover& cov, const PrimeField& field, int r_max);

/// Grows the window until two consecutive radii agree; per component for
/// disconnected complexes, summing configurations.
BarcodeReport stabilize(const SimplicialComplex& kx, const Cocycle& c, const StabilizeOptions& opt);

/// δ points at -t under the figure convention; the report keeps the formula sign.
Configuration delta_with_sign(const Configuration& delta, DeltaSign sign);

/// Reports agree as exact point sets and counts.
bool same_barcodes(const BarcodeReport& a, const BarcodeReport& b);

} // namespace anbar
