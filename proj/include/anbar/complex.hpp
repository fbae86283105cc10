#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "anbar/linalg.hpp"
#include "anbar/real_value.hpp"

namespace anbar {

using Vertex = std::uint32_t;
using Simplex = std::vector<Vertex>;
using Edge = std::pair<Vertex, Vertex>;

/// Finite simplicial complex stored as sorted vertex tuples per dimension.
/// Closed under faces; every vertex below vertex_count is a 0-simplex.
class SimplicialComplex {
public:
  SimplicialComplex() = default;

  /// Closure of the given simplices; vertex lists are sorted and deduplicated.
  static SimplicialComplex from_maximal(std::size_t vertex_count, const std::vector<Simplex>& maximal);

  std::size_t vertex_count() const { return vertex_count_; }
  /// -1 for the empty complex.
  int dim() const { return static_cast<int>(simplices_.size()) - 1; }
  const std::vector<Simplex>& simplices(int r) const;
  std::size_t count(int r) const { return r < 0 || r > dim() ? 0 : simplices_[r].size(); }
  std::optional<std::size_t> index_of(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index_of(s).has_value(); }
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const;
  std::vector<Simplex> maximal_simplices() const;
  /// Neighbours sorted increasingly.
  std::vector<std::vector<Vertex>> adjacency() const;
  /// Component label per vertex, labels numbered by smallest vertex.
  std::vector<std::size_t> components() const;
  long euler_characteristic() const;

  /// Subcomplex induced on a vertex set, vertices renumbered in increasing
  /// order of the original labels.
  SimplicialComplex induced(const std::vector<Vertex>& vertices) const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

private:
  std::size_t vertex_count_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::size_t>> index_;
};

/// Simplicial 1-cochain with RealValue entries. Stored on edges oriented
/// from the smaller to the larger vertex; value(y, x) = -value(x, y).
class Cocycle {
public:
  Cocycle() = default;
  explicit Cocycle(BasisPtr basis) : basis_(std::move(basis)) {}

  const BasisPtr& basis() const { return basis_; }
  /// Sets δ(x, y); throws invalid_cocycle_error when it contradicts a value
  /// already given for the reverse orientation.
  void set(Vertex x, Vertex y, const RealValue& v);
  bool has(Vertex x, Vertex y) const;
  /// δ(x, y); throws incomplete_cocycle_error when absent.
  RealValue value(Vertex x, Vertex y) const;
  const std::map<Edge, RealValue>& entries() const { return values_; }

  Cocycle operator-() const;
  Cocycle operator+(const Cocycle& o) const;
  Cocycle operator-(const Cocycle& o) const;

  /// δ(x, y) = g(y) - g(x) on every edge of kx.
  static Cocycle coboundary(const SimplicialComplex& kx, const std::vector<RealValue>& g);

  friend bool operator==(const Cocycle& a, const Cocycle& b) { return a.values_ == b.values_; }

private:
  BasisPtr basis_;
  std::map<Edge, RealValue> values_;
};

struct CocycleVerdict {
  bool valid = true;
  std::optional<Simplex> violating;
};

CocycleVerdict check_cocycle(const SimplicialComplex& kx, const Cocycle& c);
/// Throws invalid_cocycle_error naming the first violating triangle.
void require_cocycle(const SimplicialComplex& kx, const Cocycle& c);

/// ∂_r with rows indexed by (r-1)-simplices, columns by r-simplices, signs (-1)^i.
SparseMatrix boundary_matrix(const SimplicialComplex& kx, int r, const PrimeField& field);
std::size_t betti(const SimplicialComplex& kx, int r, const PrimeField& field);

struct TreeIntegration {
  std::vector<RealValue> potentials;
  /// Non-tree edges (oriented small → large) and their periods.
  std::vector<Edge> cotree_edges;
  std::vector<RealValue> periods;
  std::vector<Edge> tree_edges;
};

/// Depth-first spanning forest from the smallest vertex of each component,
/// neighbours visited in increasing order.
TreeIntegration integrate_tree(const SimplicialComplex& kx, const Cocycle& c);
/// Same, with an explicit root per component tried first and neighbour order
/// permuted by `shuffle_seed` (0 keeps the canonical order).
TreeIntegration integrate_tree(const SimplicialComplex& kx, const Cocycle& c, std::uint64_t shuffle_seed);

/// Infimum over lifts of sup |f1 - f2|: half the oscillation of the potential
/// of c1 - c2 (per component, maximum over components). nullopt when c1 - c2
/// is not exact, i.e. the classes differ.
std::optional<double> d_flat(const SimplicialComplex& kx, const Cocycle& c1, const Cocycle& c2);

} // namespace anbar
