#include "anbar/cover.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace anbar {

// ---------------------------------------------------------------------------
// Lattice

PeriodLattice::PeriodLattice(std::size_t ambient, std::vector<std::vector<Rational>> basis, BasisPtr theta)
    : ambient_(ambient), basis_(std::move(basis)), theta_(std::move(theta)) {
  for (auto& row : basis_) {
    auto it = std::find_if(row.begin(), row.end(), [](auto& q) { return q != 0; });
    if (it == row.end()) throw contract_error("zero lattice basis vector");
    pivot_col_.push_back(static_cast<std::size_t>(it - row.begin()));
  }
}

RealValue PeriodLattice::basis_value(std::size_t i) const { return RealValue(theta_, basis_.at(i)); }

std::optional<LatticePoint> PeriodLattice::coordinates(const RealValue& v) const {
  if (v.coords().size() != ambient_) throw contract_error("value dimension does not match lattice");
  std::vector<Rational> x = v.coords();
  LatticePoint n(basis_.size(), 0);
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Rational c = x[pivot_col_[i]] / basis_[i][pivot_col_[i]];
    if (c.get_den() != 1) return std::nullopt;
    if (!c.get_num().fits_slong_p()) return std::nullopt;
    n[i] = c.get_num().get_si();
    if (n[i] != 0)
      for (std::size_t j = 0; j < ambient_; ++j) x[j] -= c * basis_[i][j];
  }
  for (auto& q : x)
    if (q != 0) return std::nullopt;
  return n;
}

RealValue PeriodLattice::value_of(const LatticePoint& n) const {
  if (n.size() != basis_.size()) throw contract_error("lattice point rank mismatch");
  std::vector<Rational> x(ambient_, Rational(0));
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (n[i] != 0)
      for (std::size_t j = 0; j < ambient_; ++j) x[j] += Rational(static_cast<long>(n[i])) * basis_[i][j];
  return RealValue(theta_, std::move(x));
}

double PeriodLattice::max_basis_embed() const {
  double m = 0;
  for (std::size_t i = 0; i < basis_.size(); ++i) m = std::max(m, std::fabs(basis_value(i).embed()));
  return m;
}

PeriodLattice compute_lattice(const std::vector<RealValue>& periods, const BasisPtr& theta) {
  std::size_t ambient = theta->k() + 1;
  mpz_class denom = 1;
  for (auto& p : periods)
    for (auto& q : p.coords()) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), q.get_den_mpz_t());
  std::vector<std::vector<mpz_class>> rows;
  for (auto& p : periods) {
    if (p.is_zero()) continue;
    std::vector<mpz_class> row(ambient);
    for (std::size_t j = 0; j < ambient; ++j) {
      Rational scaled = p.coords()[j] * Rational(denom);
      row[j] = scaled.get_num();
    }
    rows.push_back(std::move(row));
  }
  // Row Hermite normal form by Euclidean elimination, column by column.
  std::size_t pr = 0;
  for (std::size_t col = 0; col < ambient && pr < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = pr; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[pr], rows[best]);
      bool done = true;
      for (std::size_t i = pr + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        mpz_class qt;
        mpz_fdiv_q(qt.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pr][col].get_mpz_t());
        for (std::size_t j = col; j < ambient; ++j) rows[i][j] -= qt * rows[pr][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (pr >= rows.size() || rows[pr][col] == 0) continue;
    if (rows[pr][col] < 0)
      for (auto& x : rows[pr]) x = -x;
    for (std::size_t i = 0; i < pr; ++i) {
      mpz_class qt;
      mpz_fdiv_q(qt.get_mpz_t(), rows[i][col].get_mpz_t(), rows[pr][col].get_mpz_t());
      if (qt != 0)
        for (std::size_t j = col; j < ambient; ++j) rows[i][j] -= qt * rows[pr][j];
    }
    ++pr;
  }
  rows.resize(pr);
  std::vector<std::vector<Rational>> basis;
  for (auto& row : rows) {
    std::vector<Rational> b(ambient);
    for (std::size_t j = 0; j < ambient; ++j) {
      b[j] = Rational(row[j], denom);
      b[j].canonicalize();
    }
    basis.push_back(std::move(b));
  }
  return PeriodLattice(ambient, std::move(basis), theta);
}

// ---------------------------------------------------------------------------
// Window

bool WindowSpec::contains(const LatticePoint& n) const {
  return std::all_of(n.begin(), n.end(), [&](auto x) { return x >= -radius && x <= radius; });
}

std::vector<LatticePoint> WindowSpec::points(std::size_t rank) const {
  std::vector<LatticePoint> out;
  LatticePoint cur(rank, -radius);
  if (radius < 0) return out;
  while (true) {
    out.push_back(cur);
    std::size_t i = rank;
    while (i > 0) {
      --i;
      if (cur[i] < radius) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<long>(i) + 1, cur.end(), -radius);
        break;
      }
      if (i == 0) return out;
    }
    if (rank == 0) return out;
  }
}

// ---------------------------------------------------------------------------
// Cover

namespace {

LatticePoint add(const LatticePoint& a, const LatticePoint& b) {
  LatticePoint c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

} // namespace

const std::vector<CoverCell>& WindowedCover::cells(int r) const {
  static const std::vector<CoverCell> none;
  if (r < 0 || r > dim()) return none;
  return cells_[r];
}

const std::vector<std::pair<std::size_t, LatticePoint>>& WindowedCover::flagged(int r) const {
  static const std::vector<std::pair<std::size_t, LatticePoint>> none;
  if (r < 0 || r > dim()) return none;
  return flagged_[r];
}

std::optional<std::size_t> WindowedCover::cell_index(int r, std::size_t base, const LatticePoint& anchor) const {
  if (r < 0 || r > dim()) return std::nullopt;
  auto it = index_[r].find({base, anchor});
  if (it == index_[r].end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> WindowedCover::translate_vertex(std::size_t id, const LatticePoint& g) const {
  const auto& v = vertices_.at(id);
  return vertex_index(v.base, add(v.translate, g));
}

SparseMatrix WindowedCover::boundary(int r, const PrimeField& field) const {
  if (r < 1 || r > dim()) throw degree_error("cover boundary degree " + std::to_string(r) + " out of range");
  std::vector<SparseColumn> cols;
  cols.reserve(cells_[r].size());
  for (auto& cell : cells_[r]) {
    const auto& s = base_.simplices(r)[cell.base];
    SparseColumn col;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex face = s;
      face.erase(face.begin() + static_cast<long>(i));
      auto fidx = *base_.index_of(face);
      const auto& anchor = i == 0 ? vertices_[cell.vertices[1]].translate : cell.anchor;
      auto row = cell_index(r - 1, fidx, anchor);
      if (!row) throw contract_error("face of a complete cover cell is missing");
      col.push_back({static_cast<std::uint32_t>(*row), i % 2 ? field.neg(1) : Scalar{1}});
    }
    cols.push_back(std::move(col));
  }
  return SparseMatrix::from_columns(cells_[r - 1].size(), field, std::move(cols));
}

std::optional<std::size_t> WindowedCover::level_index(const RealValue& t) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), t, RealLess{});
  if (it != levels_.end() && *it == t) return static_cast<std::size_t>(it - levels_.begin());
  return std::nullopt;
}

std::size_t WindowedCover::levels_at_most(const RealValue& t) const {
  return static_cast<std::size_t>(std::upper_bound(levels_.begin(), levels_.end(), t, RealLess{}) - levels_.begin());
}

std::size_t WindowedCover::levels_below(const RealValue& t) const {
  return static_cast<std::size_t>(std::lower_bound(levels_.begin(), levels_.end(), t, RealLess{}) - levels_.begin());
}

bool WindowedCover::is_safe(const RealValue& t) const {
  if (!has_frontier() || levels_.empty()) return true;
  long double e = t.embed_long();
  if (e < lo_ || e > hi_) return true;
  long double m = frontier_margin();
  return e >= lo_ + m && e <= hi_ - m;
}

void WindowedCover::require_safe(const RealValue& t) const {
  if (!is_safe(t))
    throw unsafe_threshold_error("threshold " + t.str() + " lies within one lattice period of the window frontier (radius " +
                                 std::to_string(window_.radius) + ")");
}

WindowedCover build_cover(const SimplicialComplex& kx, const Cocycle& c, const WindowSpec& w) {
  if (w.radius < 0) throw contract_error("negative window radius");
  auto theta = c.basis() ? c.basis() : make_basis({});
  auto ti = integrate_tree(kx, c);
  WindowedCover cov;
  cov.base_ = kx;
  cov.window_ = w;
  cov.lattice_ = compute_lattice(ti.periods, theta);
  cov.potentials_ = ti.potentials;
  const auto& lat = cov.lattice_;
  std::size_t k = lat.rank();

  for (auto& e : kx.simplices(1)) {
    auto p = c.value(e[0], e[1]) - (ti.potentials[e[1]] - ti.potentials[e[0]]);
    auto n = lat.coordinates(p);
    if (!n) throw contract_error("edge period outside the generated lattice");
    cov.edge_periods_.push_back(*n);
  }

  auto window_points = w.points(k);
  int top = kx.dim();
  cov.cells_.resize(top + 1);
  cov.flagged_.resize(top + 1);
  cov.index_.resize(top + 1);

  for (Vertex x = 0; x < kx.vertex_count(); ++x)
    for (auto& g : window_points) {
      cov.index_[0].emplace(std::make_pair(std::size_t{x}, g), cov.vertices_.size());
      cov.vertices_.push_back({x, g, ti.potentials[x] + lat.value_of(g)});
      cov.cells_[0].push_back({x, g, {cov.vertices_.size() - 1}});
    }

  for (int r = 1; r <= top; ++r) {
    const auto& simplices = kx.simplices(r);
    for (std::size_t s = 0; s < simplices.size(); ++s) {
      const auto& sigma = simplices[s];
      std::vector<LatticePoint> offsets(sigma.size(), LatticePoint(k, 0));
      for (std::size_t i = 1; i < sigma.size(); ++i) offsets[i] = cov.edge_periods_[*kx.edge_index(sigma[0], sigma[i])];
      bool any_complete = false;
      for (auto& g : window_points) {
        CoverCell cell{s, g, {}};
        bool complete = true;
        for (std::size_t i = 0; i < sigma.size() && complete; ++i) {
          auto id = cov.vertex_index(sigma[i], add(g, offsets[i]));
          if (!id) complete = false;
          else cell.vertices.push_back(*id);
        }
        if (!complete) {
          cov.flagged_[r].emplace_back(s, g);
          continue;
        }
        any_complete = true;
        cov.index_[r].emplace(std::make_pair(s, g), cov.cells_[r].size());
        cov.cells_[r].push_back(std::move(cell));
      }
      if (!any_complete)
        throw window_too_small_error("window radius " + std::to_string(w.radius) +
                                     " holds no complete lift of a base " + std::to_string(r) + "-simplex");
    }
  }

  // Levels: sort by embedding, then confirm neighbours with exact comparison.
  std::vector<std::size_t> order(cov.vertices_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return cov.vertices_[a].value.embed_long() < cov.vertices_[b].value.embed_long();
  });
  cov.vertex_level_.assign(cov.vertices_.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& v = cov.vertices_[order[i]].value;
    if (cov.levels_.empty() || !(cov.levels_.back() == v)) {
      if (!cov.levels_.empty() && cov.levels_.back().compare(v) >= 0)
        throw precision_error("vertex values cannot be ordered at the current tolerance");
      cov.levels_.push_back(v);
    }
    cov.vertex_level_[order[i]] = cov.levels_.size() - 1;
  }
  // Equal values may be interleaved in float order only if their embeds are
  // identical, so one more pass merges any split duplicates.
  for (std::size_t i = 0; i + 1 < cov.levels_.size(); ++i)
    if (cov.levels_[i] == cov.levels_[i + 1]) throw precision_error("duplicate level after sorting");

  cov.max_level_.resize(top + 1);
  cov.min_level_.resize(top + 1);
  for (int r = 0; r <= top; ++r)
    for (auto& cell : cov.cells_[r]) {
      std::size_t mx = 0, mn = SIZE_MAX;
      for (auto v : cell.vertices) {
        mx = std::max(mx, cov.vertex_level_[v]);
        mn = std::min(mn, cov.vertex_level_[v]);
      }
      cov.max_level_[r].push_back(mx);
      cov.min_level_[r].push_back(mn);
    }
  if (!cov.levels_.empty()) {
    cov.lo_ = cov.levels_.front().embed_long();
    cov.hi_ = cov.levels_.back().embed_long();
  }
  return cov;
}

// ---------------------------------------------------------------------------
// Orbits and tameness

CriticalOrbits critical_orbits(const WindowedCover& cov) {
  const auto& lat = cov.lattice();
  const auto& h = cov.potentials();
  std::size_t k = lat.rank();
  CriticalOrbits out;
  std::vector<std::size_t> orbit_of(h.size(), SIZE_MAX);
  for (Vertex x = 0; x < h.size(); ++x) {
    for (std::size_t o = 0; o < out.orbits.size(); ++o)
      if (lat.coordinates(h[x] - h[out.orbits[o].base_vertices.front()])) {
        orbit_of[x] = o;
        break;
      }
    if (orbit_of[x] != SIZE_MAX) {
      out.orbits[orbit_of[x]].base_vertices.push_back(x);
      continue;
    }
    CriticalOrbit orb;
    orb.base_vertices.push_back(x);
    LatticePoint shift(k, 0);
    RealValue rep = h[x];
    if (k > 0) {
      auto b1 = lat.basis_value(0);
      int sign = b1.embed() > 0 ? 1 : -1;
      auto unit = sign > 0 ? b1 : -b1;
      long double width = unit.embed_long();
      auto n = static_cast<std::int64_t>(std::floor(h[x].embed_long() / width));
      rep = h[x] - unit * Rational(static_cast<long>(n));
      RealValue zero(rep.basis());
      while (rep < zero) {
        rep += unit;
        --n;
      }
      while (rep >= unit) {
        rep = rep - unit;
        ++n;
      }
      shift[0] = -n * sign;
    }
    orb.rep = rep;
    auto id = cov.vertex_index(x, shift);
    if (!id)
      throw window_too_small_error("orbit representative of vertex " + std::to_string(x) + " lies outside window radius " +
                                   std::to_string(cov.window().radius));
    orb.rep_vertex = *id;
    orbit_of[x] = out.orbits.size();
    out.orbits.push_back(std::move(orb));
  }
  for (std::size_t v = 0; v < cov.vertex_count(); ++v)
    out.orbits[orbit_of[cov.vertex(v).base]].realizing.push_back(v);
  // Local quantities are Γ-invariant, so evaluate each orbit at the level
  // whose realizing lifts are most central in the box.
  auto sup_norm = [&](std::size_t v) {
    std::int64_t m = 0;
    for (auto x : cov.vertex(v).translate) m = std::max<std::int64_t>(m, std::abs(x));
    return m;
  };
  std::int64_t reach = 0;
  for (auto& p : cov.edge_periods())
    for (auto x : p) reach = std::max<std::int64_t>(reach, std::abs(x));
  for (auto& o : out.orbits) {
    std::map<std::size_t, std::pair<std::size_t, std::int64_t>> by_level; // level -> (count, max norm)
    for (auto v : o.realizing) {
      auto& [n, m] = by_level[cov.level_of_vertex(v)];
      ++n;
      m = std::max(m, sup_norm(v));
    }
    std::optional<std::size_t> best;
    std::int64_t best_norm = 0;
    for (auto& [level, nm] : by_level)
      if (nm.first == o.base_vertices.size() && (!best || nm.second < best_norm)) {
        best = level;
        best_norm = nm.second;
      }
    o.eval_vertex = o.rep_vertex;
    o.eval_complete = false;
    if (!best) continue;
    for (auto v : o.realizing)
      if (cov.level_of_vertex(v) == *best) {
        o.eval_vertex = v;
        break;
      }
    o.eval_complete = best_norm + reach <= cov.window().radius;
  }
  std::sort(out.orbits.begin(), out.orbits.end(), [](auto& a, auto& b) { return a.rep < b.rep; });
  return out;
}

namespace {

template <class InRelative>
std::size_t relative_dim(const WindowedCover& cov, int r, InRelative in_rel, const PrimeField& field) {
  if (r < 0 || r > cov.dim()) return 0;
  auto select = [&](int d) {
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < cov.count(d); ++i)
      if (in_rel(d, i)) ids.push_back(i);
    return ids;
  };
  auto restricted_rank = [&](int d) -> std::size_t {
    if (d < 1 || d > cov.dim()) return 0;
    auto rows = select(d - 1), cols = select(d);
    if (rows.empty() || cols.empty()) return 0;
    std::vector<std::int64_t> row_map(cov.count(d - 1), -1);
    for (std::size_t i = 0; i < rows.size(); ++i) row_map[rows[i]] = static_cast<std::int64_t>(i);
    auto full = cov.boundary(d, field);
    std::vector<SparseColumn> out;
    for (auto j : cols) {
      SparseColumn col;
      for (auto& e : full.column(j))
        if (row_map[e.row] >= 0) col.push_back({static_cast<std::uint32_t>(row_map[e.row]), e.value});
      out.push_back(std::move(col));
    }
    return rank(SparseMatrix::from_columns(rows.size(), field, std::move(out)));
  };
  std::size_t n = select(r).size();
  return n - restricted_rank(r) - restricted_rank(r + 1);
}

} // namespace

std::size_t relative_dim_lower(const WindowedCover& cov, int r, std::size_t levels_a, std::size_t levels_b,
                               const PrimeField& field) {
  if (levels_b > levels_a) throw contract_error("relative_dim_lower: pair is not nested");
  return relative_dim(
      cov, r,
      [&](int d, std::size_t i) {
        auto l = cov.upper_level(d, i);
        return l < levels_a && l >= levels_b;
      },
      field);
}

std::size_t relative_dim_upper(const WindowedCover& cov, int r, std::size_t from_a, std::size_t from_b,
                               const PrimeField& field) {
  if (from_b < from_a) throw contract_error("relative_dim_upper: pair is not nested");
  return relative_dim(
      cov, r,
      [&](int d, std::size_t i) {
        auto l = cov.lower_level(d, i);
        return l >= from_a && l < from_b;
      },
      field);
}

std::size_t TamenessRow::total() const {
  return std::accumulate(sub_dims.begin(), sub_dims.end(), std::size_t{0}) +
         std::accumulate(super_dims.begin(), super_dims.end(), std::size_t{0});
}

TamenessRow tameness_row(const WindowedCover& cov, const RealValue& t, const PrimeField& field) {
  TamenessRow row{t, {}, {}};
  auto at_most = cov.levels_at_most(t);
  auto below = cov.levels_below(t);
  for (int r = 0; r <= cov.dim(); ++r) {
    row.sub_dims.push_back(relative_dim_lower(cov, r, at_most, below, field));
    row.super_dims.push_back(relative_dim_upper(cov, r, below, at_most, field));
  }
  return row;
}

TamenessReport verify_weak_tameness(const WindowedCover& cov, const PrimeField& field) {
  TamenessReport rep;
  auto orbits = critical_orbits(cov);
  rep.orbit_count = orbits.size();
  for (auto& o : orbits.orbits) {
    rep.table.push_back(tameness_row(cov, cov.vertex(o.eval_vertex).value, field));
    rep.table.back().value = o.rep;
  }
  // Finite window, finitely many cells: every local homology group is finite
  // dimensional and CR(f) is contained in the Γ-orbits of the vertex values.
  rep.finite_local_homology = true;
  rep.weakly_tame = rep.simplicial_sublevels && rep.finite_local_homology;
  return rep;
}

} // namespace anbar
