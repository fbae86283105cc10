#pragma once

#include <random>
#include <set>

#include "anbar/complex.hpp"
#include "anbar/cover.hpp"
#include "anbar/linalg.hpp"

namespace testing_support {

using namespace anbar;

inline BasisPtr rational_basis() {
  static auto b = make_basis({});
  return b;
}

inline RealValue q(const std::string& s, const BasisPtr& b = rational_basis()) {
  return RealValue::rational(b, parse_rational(s));
}

/// Random complex on ≤ max_v vertices, dimension ≤ max_dim, given by random
/// maximal simplices (possibly with isolated vertices).
inline SimplicialComplex random_complex(std::mt19937_64& rng, unsigned max_v = 8, int max_dim = 2) {
  std::uniform_int_distribution<unsigned> nv_d(1, max_v);
  unsigned nv = nv_d(rng);
  std::uniform_int_distribution<int> count(0, static_cast<int>(2 * nv));
  std::uniform_int_distribution<int> dim(1, max_dim);
  std::uniform_int_distribution<unsigned> vert(0, nv - 1);
  std::vector<Simplex> maximal;
  int m = count(rng);
  for (int i = 0; i < m && nv >= 2; ++i) {
    int d = dim(rng);
    std::set<Vertex> s;
    while (static_cast<int>(s.size()) < std::min<int>(d + 1, static_cast<int>(nv))) s.insert(vert(rng));
    maximal.emplace_back(s.begin(), s.end());
  }
  return SimplicialComplex::from_maximal(nv, maximal);
}

/// Random rational potentials with small denominators (ties happen).
inline std::vector<Rational> random_potential(std::mt19937_64& rng, std::size_t n, int spread = 6) {
  std::uniform_int_distribution<int> num(-spread, spread);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<Rational> g(n);
  for (auto& x : g) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return g;
}

inline std::vector<RealValue> lift(const std::vector<Rational>& g, const BasisPtr& b = rational_basis()) {
  std::vector<RealValue> out;
  for (auto& x : g) out.push_back(RealValue::rational(b, x));
  return out;
}

/// Connected random graph with a spanning path plus extra edges, and a
/// random integral cocycle (generally not exact).
inline std::pair<SimplicialComplex, Cocycle> random_graph_cocycle(std::mt19937_64& rng, unsigned nv) {
  std::vector<Simplex> edges;
  for (Vertex v = 0; v + 1 < nv; ++v) edges.push_back({v, v + 1});
  std::uniform_int_distribution<unsigned> vert(0, nv - 1);
  for (unsigned i = 0; i < nv; ++i) {
    auto a = vert(rng), b = vert(rng);
    if (a != b) edges.push_back({std::min(a, b), std::max(a, b)});
  }
  auto kx = SimplicialComplex::from_maximal(nv, edges);
  std::uniform_int_distribution<int> val(-4, 4);
  Cocycle c(rational_basis());
  for (auto& e : kx.simplices(1)) c.set(e[0], e[1], RealValue::rational(rational_basis(), Rational(val(rng), 2)));
  return {kx, c};
}

inline SparseMatrix random_matrix(std::mt19937_64& rng, PrimeField f, std::size_t max_dim = 8) {
  std::uniform_int_distribution<std::size_t> dim(1, max_dim);
  std::size_t r = dim(rng), c = dim(rng);
  std::uniform_int_distribution<int> coin(0, 2);
  std::uniform_int_distribution<std::int64_t> val(0, f.modulus() - 1);
  std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c, 0));
  for (auto& row : rows)
    for (auto& x : row)
      if (coin(rng) == 0) x = val(rng);
  return SparseMatrix::from_dense(rows, f);
}

inline Subspace random_subspace(std::mt19937_64& rng, std::size_t n, PrimeField f) {
  std::uniform_int_distribution<std::size_t> count(0, n);
  std::uniform_int_distribution<Scalar> val(0, f.modulus() - 1);
  std::vector<DenseVector> vs(count(rng), DenseVector(n));
  for (auto& v : vs)
    for (auto& x : v) x = val(rng);
  return Subspace::span(n, f, vs);
}

} // namespace testing_support
