#include "anbar/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>

namespace anbar {

namespace {

std::string simplex_str(const Simplex& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + "}";
}

} // namespace

SimplicialComplex SimplicialComplex::from_maximal(std::size_t vertex_count, const std::vector<Simplex>& maximal) {
  std::vector<std::set<Simplex>> by_dim;
  auto add = [&](const Simplex& s) {
    if (by_dim.size() < s.size()) by_dim.resize(s.size());
    by_dim[s.size() - 1].insert(s);
  };
  for (Vertex v = 0; v < vertex_count; ++v) add({v});
  for (auto s : maximal) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (s.empty()) continue;
    if (s.back() >= vertex_count)
      throw input_error("simplex " + simplex_str(s) + " uses a vertex >= vertex_count " + std::to_string(vertex_count));
    if (s.size() > 24) throw input_error("simplex of dimension > 23 is not supported");
    // all nonempty subsets
    std::size_t n = s.size();
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Simplex face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1u << i)) face.push_back(s[i]);
      add(face);
    }
  }
  SimplicialComplex kx;
  kx.vertex_count_ = vertex_count;
  for (auto& layer : by_dim) {
    kx.simplices_.emplace_back(layer.begin(), layer.end());
    auto& idx = kx.index_.emplace_back();
    for (std::size_t i = 0; i < kx.simplices_.back().size(); ++i) idx.emplace(kx.simplices_.back()[i], i);
  }
  return kx;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int r) const {
  static const std::vector<Simplex> none;
  if (r < 0 || r > dim()) return none;
  return simplices_[r];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || s.size() > simplices_.size()) return std::nullopt;
  auto& idx = index_[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SimplicialComplex::edge_index(Vertex a, Vertex b) const {
  if (a > b) std::swap(a, b);
  return index_of({a, b});
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (int r = 0; r <= dim(); ++r)
    for (auto& s : simplices_[r]) {
      bool maximal = true;
      if (r < dim())
        for (auto& t : simplices_[r + 1])
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
      if (maximal) out.push_back(s);
    }
  return out;
}

std::vector<std::vector<Vertex>> SimplicialComplex::adjacency() const {
  std::vector<std::vector<Vertex>> adj(vertex_count_);
  for (auto& e : simplices(1)) {
    adj[e[0]].push_back(e[1]);
    adj[e[1]].push_back(e[0]);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<std::size_t> SimplicialComplex::components() const {
  std::vector<std::size_t> label(vertex_count_, SIZE_MAX);
  auto adj = adjacency();
  std::size_t next = 0;
  for (Vertex s = 0; s < vertex_count_; ++s) {
    if (label[s] != SIZE_MAX) continue;
    std::vector<Vertex> stack{s};
    label[s] = next;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : adj[v])
        if (label[w] == SIZE_MAX) {
          label[w] = next;
          stack.push_back(w);
        }
    }
    ++next;
  }
  return label;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int r = 0; r <= dim(); ++r) chi += (r % 2 ? -1 : 1) * static_cast<long>(simplices_[r].size());
  return chi;
}

SimplicialComplex SimplicialComplex::induced(const std::vector<Vertex>& vertices) const {
  std::vector<Vertex> sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  std::map<Vertex, Vertex> relabel;
  for (std::size_t i = 0; i < sorted.size(); ++i) relabel[sorted[i]] = static_cast<Vertex>(i);
  std::vector<Simplex> faces;
  for (int r = 1; r <= dim(); ++r)
    for (auto& s : simplices_[r]) {
      Simplex t;
      for (auto v : s) {
        auto it = relabel.find(v);
        if (it == relabel.end()) break;
        t.push_back(it->second);
      }
      if (t.size() == s.size()) faces.push_back(std::move(t));
    }
  return from_maximal(sorted.size(), faces);
}

// ---------------------------------------------------------------------------

void Cocycle::set(Vertex x, Vertex y, const RealValue& v) {
  if (x == y) throw invalid_cocycle_error("cocycle value on a degenerate edge " + std::to_string(x));
  if (!basis_) basis_ = v.basis();
  Edge e = x < y ? Edge{x, y} : Edge{y, x};
  RealValue oriented = x < y ? v : -v;
  auto [it, inserted] = values_.emplace(e, oriented);
  if (!inserted && !(it->second == oriented))
    throw invalid_cocycle_error("cocycle is not antisymmetric on edge " + std::to_string(x) + "-" + std::to_string(y));
}

bool Cocycle::has(Vertex x, Vertex y) const { return values_.count(x < y ? Edge{x, y} : Edge{y, x}) > 0; }

RealValue Cocycle::value(Vertex x, Vertex y) const {
  auto it = values_.find(x < y ? Edge{x, y} : Edge{y, x});
  if (it == values_.end())
    throw incomplete_cocycle_error("no cocycle value on edge " + std::to_string(x) + "-" + std::to_string(y));
  return x < y ? it->second : -it->second;
}

Cocycle Cocycle::operator-() const {
  Cocycle out(basis_);
  for (auto& [e, v] : values_) out.values_.emplace(e, -v);
  return out;
}

Cocycle Cocycle::operator+(const Cocycle& o) const {
  if (values_.size() != o.values_.size()) throw mismatch_error("cocycles live on different edge sets");
  Cocycle out(basis_);
  for (auto& [e, v] : values_) {
    auto it = o.values_.find(e);
    if (it == o.values_.end()) throw mismatch_error("cocycles live on different edge sets");
    out.values_.emplace(e, v + it->second);
  }
  return out;
}

Cocycle Cocycle::operator-(const Cocycle& o) const { return *this + (-o); }

Cocycle Cocycle::coboundary(const SimplicialComplex& kx, const std::vector<RealValue>& g) {
  if (g.size() != kx.vertex_count()) throw contract_error("potential size does not match vertex count");
  Cocycle out(g.empty() ? BasisPtr{} : g[0].basis());
  for (auto& e : kx.simplices(1)) out.set(e[0], e[1], g[e[1]] - g[e[0]]);
  return out;
}

CocycleVerdict check_cocycle(const SimplicialComplex& kx, const Cocycle& c) {
  for (auto& e : kx.simplices(1))
    if (!c.has(e[0], e[1]))
      throw incomplete_cocycle_error("no cocycle value on edge " + std::to_string(e[0]) + "-" + std::to_string(e[1]));
  for (auto& [e, v] : c.entries())
    if (!kx.edge_index(e.first, e.second))
      throw mismatch_error("cocycle value on " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                           ", which is not an edge of the complex");
  for (auto& t : kx.simplices(2)) {
    auto sum = c.value(t[0], t[1]) + c.value(t[1], t[2]) + c.value(t[2], t[0]);
    if (!sum.is_zero()) return {false, t};
  }
  return {true, std::nullopt};
}

void require_cocycle(const SimplicialComplex& kx, const Cocycle& c) {
  auto verdict = check_cocycle(kx, c);
  if (!verdict.valid)
    throw invalid_cocycle_error("cocycle identity fails on triangle " + simplex_str(*verdict.violating));
}

SparseMatrix boundary_matrix(const SimplicialComplex& kx, int r, const PrimeField& field) {
  if (r < 1 || r > kx.dim())
    throw degree_error("boundary degree " + std::to_string(r) + " outside [1, " + std::to_string(kx.dim()) + "]");
  std::vector<SparseColumn> cols;
  cols.reserve(kx.count(r));
  for (auto& s : kx.simplices(r)) {
    SparseColumn col;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      auto row = *kx.index_of(face);
      col.push_back({static_cast<std::uint32_t>(row), i % 2 ? field.neg(1) : Scalar{1}});
    }
    cols.push_back(std::move(col));
  }
  return SparseMatrix::from_columns(kx.count(r - 1), field, std::move(cols));
}

std::size_t betti(const SimplicialComplex& kx, int r, const PrimeField& field) {
  if (r < 0 || r > kx.dim()) return 0;
  std::size_t n = kx.count(r);
  std::size_t rk_r = r >= 1 ? rank(boundary_matrix(kx, r, field)) : 0;
  std::size_t rk_up = r + 1 <= kx.dim() ? rank(boundary_matrix(kx, r + 1, field)) : 0;
  return n - rk_r - rk_up;
}

TreeIntegration integrate_tree(const SimplicialComplex& kx, const Cocycle& c) { return integrate_tree(kx, c, 0); }

TreeIntegration integrate_tree(const SimplicialComplex& kx, const Cocycle& c, std::uint64_t shuffle_seed) {
  require_cocycle(kx, c);
  TreeIntegration out;
  auto basis = c.basis() ? c.basis() : make_basis({});
  auto adj = kx.adjacency();
  std::vector<Vertex> roots(kx.vertex_count());
  std::iota(roots.begin(), roots.end(), Vertex{0});
  if (shuffle_seed) {
    std::mt19937_64 rng(shuffle_seed);
    for (auto& a : adj) std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(roots.begin(), roots.end(), rng);
  }
  std::vector<char> seen(kx.vertex_count(), 0);
  out.potentials.assign(kx.vertex_count(), RealValue(basis));
  std::set<Edge> tree;
  std::function<void(Vertex)> visit = [&](Vertex x) {
    for (auto y : adj[x]) {
      if (seen[y]) continue;
      seen[y] = 1;
      out.potentials[y] = out.potentials[x] + c.value(x, y);
      tree.insert(x < y ? Edge{x, y} : Edge{y, x});
      visit(y);
    }
  };
  for (auto root : roots) {
    if (seen[root]) continue;
    seen[root] = 1;
    visit(root);
  }
  for (auto& e : kx.simplices(1)) {
    Edge edge{e[0], e[1]};
    if (tree.count(edge)) {
      out.tree_edges.push_back(edge);
      continue;
    }
    out.cotree_edges.push_back(edge);
    out.periods.push_back(c.value(e[0], e[1]) - (out.potentials[e[1]] - out.potentials[e[0]]));
  }
  return out;
}

std::optional<double> d_flat(const SimplicialComplex& kx, const Cocycle& c1, const Cocycle& c2) {
  if (c1.entries().size() != c2.entries().size()) throw mismatch_error("d_flat: cocycles on different complexes");
  for (auto& [e, v] : c1.entries())
    if (!c2.entries().count(e)) throw mismatch_error("d_flat: cocycles on different complexes");
  auto diff = c1 - c2;
  auto ti = integrate_tree(kx, diff);
  for (auto& p : ti.periods)
    if (!p.is_zero()) return std::nullopt;
  auto comp = kx.components();
  std::map<std::size_t, std::pair<long double, long double>> range;
  for (Vertex v = 0; v < kx.vertex_count(); ++v) {
    long double e = ti.potentials[v].embed_long();
    auto [it, fresh] = range.emplace(comp[v], std::make_pair(e, e));
    if (!fresh) {
      it->second.first = std::min(it->second.first, e);
      it->second.second = std::max(it->second.second, e);
    }
  }
  long double best = 0;
  for (auto& [_, mm] : range) best = std::max(best, (mm.second - mm.first) / 2);
  return static_cast<double>(best);
}

} // namespace anbar
