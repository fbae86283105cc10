#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "anbar/complex.hpp"

namespace anbar {

using LatticePoint = std::vector<std::int64_t>;

/// The subgroup Γ of (Q^{k+1}, +) generated by the periods, with a row
/// Hermite-normal-form basis. rank() is the degree of irrationality.
class PeriodLattice {
public:
  PeriodLattice() = default;
  PeriodLattice(std::size_t ambient, std::vector<std::vector<Rational>> basis, BasisPtr theta);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<std::vector<Rational>>& basis() const { return basis_; }
  RealValue basis_value(std::size_t i) const;
  const BasisPtr& theta() const { return theta_; }

  /// Integer coordinates of v in the basis; nullopt if v ∉ Γ.
  std::optional<LatticePoint> coordinates(const RealValue& v) const;
  RealValue value_of(const LatticePoint& n) const;
  /// max_i |embed(b_i)|, 0 for the trivial lattice.
  double max_basis_embed() const;

private:
  std::size_t ambient_ = 0;
  std::vector<std::vector<Rational>> basis_;
  std::vector<std::size_t> pivot_col_;
  BasisPtr theta_;
};

PeriodLattice compute_lattice(const std::vector<RealValue>& periods, const BasisPtr& theta);

/// Lattice box W_N = {Σ n_i b_i : |n_i| ≤ N}.
struct WindowSpec {
  int radius = 1;

  bool contains(const LatticePoint& n) const;
  /// All points of the box for a lattice of the given rank, lexicographic.
  std::vector<LatticePoint> points(std::size_t rank) const;
};

/// A simplex of the windowed cover: a base simplex lifted with its smallest
/// vertex in the translate `anchor`.
struct CoverCell {
  std::size_t base = 0;
  LatticePoint anchor;
  std::vector<std::size_t> vertices; // cover vertex ids, increasing base order
};

struct CoverVertex {
  Vertex base = 0;
  LatticePoint translate;
  RealValue value;
};

/// Finite truncation of the Γ-principal cover. `cells(r)` holds the complete
/// r-cells (all vertices inside the window); cells whose anchor lies in the
/// window but which leave it are recorded in `flagged(r)` only.
class WindowedCover {
public:
  const SimplicialComplex& base() const { return base_; }
  const PeriodLattice& lattice() const { return lattice_; }
  const WindowSpec& window() const { return window_; }
  const std::vector<RealValue>& potentials() const { return potentials_; }
  /// Lattice coordinates of the period of each base edge (oriented small → large).
  const std::vector<LatticePoint>& edge_periods() const { return edge_periods_; }

  int dim() const { return static_cast<int>(cells_.size()) - 1; }
  const std::vector<CoverCell>& cells(int r) const;
  const std::vector<std::pair<std::size_t, LatticePoint>>& flagged(int r) const;
  std::size_t count(int r) const { return cells(r).size(); }
  const CoverVertex& vertex(std::size_t id) const { return vertices_[id]; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::optional<std::size_t> cell_index(int r, std::size_t base, const LatticePoint& anchor) const;
  std::optional<std::size_t> vertex_index(Vertex base, const LatticePoint& translate) const {
    return cell_index(0, base, translate);
  }
  /// Deck action g·(x, n) = (x, n + g); nullopt when it leaves the window.
  std::optional<std::size_t> translate_vertex(std::size_t id, const LatticePoint& g) const;

  /// Boundary of the complete r-cells into complete (r-1)-cells.
  SparseMatrix boundary(int r, const PrimeField& field) const;

  /// Sorted distinct vertex values (the window's critical-value candidates)
  /// and each vertex's position in that list.
  const std::vector<RealValue>& levels() const { return levels_; }
  std::size_t level_of_vertex(std::size_t id) const { return vertex_level_[id]; }
  /// Lower-star entry level (max over vertices) and upper-star entry level
  /// (min over vertices) of a complete cell.
  std::size_t upper_level(int r, std::size_t cell) const { return max_level_[r][cell]; }
  std::size_t lower_level(int r, std::size_t cell) const { return min_level_[r][cell]; }

  /// Index into levels() of a value present in the window; nullopt otherwise.
  std::optional<std::size_t> level_index(const RealValue& t) const;
  /// Number of levels ≤ t (so levels [0, n) form the sublevel set at t).
  std::size_t levels_at_most(const RealValue& t) const;
  std::size_t levels_below(const RealValue& t) const;

  /// Frontier margin and the resulting safe interval [lo + m, hi - m];
  /// the trivial lattice has no frontier.
  double frontier_margin() const { return lattice_.max_basis_embed(); }
  bool has_frontier() const { return lattice_.rank() > 0; }
  bool is_safe(const RealValue& t) const;
  /// Throws unsafe_threshold_error when t lies in the frontier margin band.
  void require_safe(const RealValue& t) const;
  bool level_safe(std::size_t level) const { return is_safe(levels_[level]); }

  friend WindowedCover build_cover(const SimplicialComplex&, const Cocycle&, const WindowSpec&);

private:
  SimplicialComplex base_;
  PeriodLattice lattice_;
  WindowSpec window_;
  std::vector<RealValue> potentials_;
  std::vector<LatticePoint> edge_periods_;
  std::vector<CoverVertex> vertices_;
  std::vector<std::vector<CoverCell>> cells_;
  std::vector<std::vector<std::pair<std::size_t, LatticePoint>>> flagged_;
  std::vector<std::map<std::pair<std::size_t, LatticePoint>, std::size_t>> index_;
  std::vector<RealValue> levels_;
  std::vector<std::size_t> vertex_level_;
  std::vector<std::vector<std::size_t>> max_level_, min_level_;
  long double lo_ = 0, hi_ = 0;
};

/// Builds the window of the cover for a valid cocycle. Throws
/// window_too_small_error when some base simplex has no complete lift.
WindowedCover build_cover(const SimplicialComplex& kx, const Cocycle& c, const WindowSpec& w);

struct CriticalOrbit {
  RealValue rep;                      // normalized representative a_o
  std::size_t rep_vertex = 0;         // cover vertex realizing a_o
  /// A realization at the orbit level whose lifts (one per base vertex) sit
  /// most centrally; `eval_complete` when all their stars lie in the window.
  std::size_t eval_vertex = 0;
  bool eval_complete = false;
  std::vector<Vertex> base_vertices;  // base vertices whose lifts lie in the orbit
  std::vector<std::size_t> realizing; // cover vertices of the window in the orbit
};

struct CriticalOrbits {
  std::vector<CriticalOrbit> orbits; // sorted by representative
  std::size_t size() const { return orbits.size(); }
};

CriticalOrbits critical_orbits(const WindowedCover& cov);

struct TamenessRow {
  RealValue value;
  std::vector<std::size_t> sub_dims;   // dim H_r(X_t, X_<t) per degree
  std::vector<std::size_t> super_dims; // dim H_r(X^t, X^>t) per degree
  std::size_t total() const;
};

struct TamenessReport {
  bool simplicial_sublevels = true; // sublevels are full subcomplexes
  bool finite_local_homology = true;
  std::size_t orbit_count = 0;
  bool weakly_tame = true;
  std::vector<TamenessRow> table; // one row per orbit representative
};

/// R^f(t) per degree at an arbitrary threshold (zero at regular values).
TamenessRow tameness_row(const WindowedCover& cov, const RealValue& t, const PrimeField& field);
TamenessReport verify_weak_tameness(const WindowedCover& cov, const PrimeField& field);

/// dim H_r(K_A, K_B) for the full subcomplexes on vertex levels [0, a) and
/// [0, b) (lower) or [a, end) and [b, end) (upper), b ≤ a resp. b ≥ a.
std::size_t relative_dim_lower(const WindowedCover& cov, int r, std::size_t levels_a, std::size_t levels_b,
                               const PrimeField& field);
std::size_t relative_dim_upper(const WindowedCover& cov, int r, std::size_t from_a, std::size_t from_b,
                               const PrimeField& field);

} // namespace anbar
