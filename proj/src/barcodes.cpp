#include "anbar/barcodes.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace anbar {

namespace {

// Column reduction over a filtration ordering, tracking V. Columns are indexed
// by filtration position and hold filtration positions as rows.
struct Reduction {
  std::vector<SparseColumn> r, v;
  std::vector<std::int64_t> pivot_col; // low row -> column, -1 if none
};

void axpy_col(SparseColumn& dst, Scalar a, const SparseColumn& src, const PrimeField& f) {
  SparseColumn out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].row < src[j].row)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].row < dst[i].row) {
      out.push_back({src[j].row, f.mul(a, src[j].value)});
      ++j;
    } else {
      auto s = f.add(dst[i].value, f.mul(a, src[j].value));
      if (s) out.push_back({dst[i].row, s});
      ++i, ++j;
    }
  }
  dst.swap(out);
}

Reduction reduce(std::vector<SparseColumn> cols, const PrimeField& f) {
  Reduction red;
  std::size_t n = cols.size();
  red.r = std::move(cols);
  red.v.resize(n);
  red.pivot_col.assign(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    red.v[j] = {{static_cast<std::uint32_t>(j), 1}};
    auto& col = red.r[j];
    while (!col.empty()) {
      auto low = col.back();
      auto k = red.pivot_col[low.row];
      if (k < 0) break;
      const auto& other = red.r[static_cast<std::size_t>(k)];
      auto factor = f.neg(f.mul(low.value, f.inv(other.back().value)));
      axpy_col(col, factor, other, f);
      axpy_col(red.v[j], factor, red.v[static_cast<std::size_t>(k)], f);
    }
    if (!col.empty()) red.pivot_col[col.back().row] = static_cast<std::int64_t>(j);
  }
  return red;
}

std::vector<std::size_t> iota_n(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), std::size_t{0});
  return v;
}

DenseVector unit(std::size_t n, std::size_t i) {
  DenseVector v(n, 0);
  v[i] = 1;
  return v;
}

} // namespace

BarcodeEngine::BarcodeEngine(const WindowedCover& cov, PrimeField field) : cov_(&cov), field_(field) {
  int top = cov.dim();
  boundaries_.reserve(static_cast<std::size_t>(std::max(top, 0)) + 2);
  for (int r = 0; r <= top + 1; ++r) {
    if (r >= 1 && r <= top)
      boundaries_.push_back(cov.boundary(r, field));
    else
      boundaries_.emplace_back(r == 0 ? 0 : cov.count(r - 1), 0, field);
  }
  zero_ = std::make_unique<QuotientCoordinates>(Subspace(0, field), Subspace(0, field));
  degrees_.resize(static_cast<std::size_t>(std::max(top + 1, 0)));
  for (int r = 0; r <= top; ++r) {
    auto all = iota_n(cov.count(r));
    auto z = cycles_of(r, all);
    auto b = r + 1 <= top ? boundaries_of(r, iota_n(cov.count(r + 1))) : Subspace(cov.count(r), field);
    degrees_[r].homology = std::make_unique<QuotientCoordinates>(std::move(z), std::move(b));
  }
  reduce_filtrations();
}

const QuotientCoordinates& BarcodeEngine::homology(int r) const {
  if (r < 0 || r >= static_cast<int>(degrees_.size())) return *zero_;
  return *degrees_[r].homology;
}

Subspace BarcodeEngine::cycles_of(int r, const std::vector<std::size_t>& cells) const {
  std::size_t n = cov_->count(r);
  Subspace out(n, field_);
  if (r == 0) {
    for (auto c : cells) out.insert(unit(n, c));
    return out;
  }
  auto m = boundaries_[r].select_columns(cells);
  auto ker = kernel_basis(m);
  for (auto& k : ker.basis()) {
    DenseVector v(n, 0);
    for (std::size_t i = 0; i < cells.size(); ++i) v[cells[i]] = k[i];
    out.insert(std::move(v));
  }
  return out;
}

Subspace BarcodeEngine::boundaries_of(int r, const std::vector<std::size_t>& cells) const {
  if (r + 1 > cov_->dim()) return Subspace(cov_->count(r), field_);
  return image_basis(boundaries_[r + 1].select_columns(cells));
}

std::vector<std::size_t> BarcodeEngine::cells_in_sublevel(int r, std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cov_->count(r); ++i)
    if (cov_->upper_level(r, i) < n) out.push_back(i);
  return out;
}

std::vector<std::size_t> BarcodeEngine::cells_in_superlevel(int r, std::size_t n) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < cov_->count(r); ++i)
    if (cov_->lower_level(r, i) >= n) out.push_back(i);
  return out;
}

Subspace BarcodeEngine::image_levels(int r, std::size_t n, bool super) const {
  if (r < 0 || r > cov_->dim()) return Subspace(0, field_);
  auto key = std::make_tuple(r, n, super);
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = image_cache_.find(key); it != image_cache_.end()) return it->second;
  }
  auto z = cycles_of(r, super ? cells_in_superlevel(r, n) : cells_in_sublevel(r, n));
  auto img = homology(r).image_of(z.basis());
  std::lock_guard lock(cache_mutex_);
  return image_cache_.emplace(key, std::move(img)).first->second;
}

Subspace BarcodeEngine::sublevel_image_levels(int r, std::size_t n) const { return image_levels(r, n, false); }

Subspace BarcodeEngine::superlevel_image_levels(int r, std::size_t n) const { return image_levels(r, n, true); }

Subspace BarcodeEngine::sublevel_image(int r, const RealValue& a) const {
  cov_->require_safe(a);
  return sublevel_image_levels(r, cov_->levels_at_most(a));
}

Subspace BarcodeEngine::sublevel_image_strict(int r, const RealValue& a) const {
  cov_->require_safe(a);
  return sublevel_image_levels(r, cov_->levels_below(a));
}

Subspace BarcodeEngine::superlevel_image(int r, const RealValue& b) const {
  cov_->require_safe(b);
  return superlevel_image_levels(r, cov_->levels_below(b));
}

Subspace BarcodeEngine::superlevel_image_strict(int r, const RealValue& b) const {
  cov_->require_safe(b);
  return superlevel_image_levels(r, cov_->levels_at_most(b));
}

std::size_t BarcodeEngine::delta_dim(int r, const RealValue& a, const RealValue& b) const {
  auto ia = sublevel_image(r, a), ia_strict = sublevel_image_strict(r, a);
  auto jb = superlevel_image(r, b), jb_strict = superlevel_image_strict(r, b);
  auto num = subspace_intersection(ia, jb);
  auto den = subspace_sum(subspace_intersection(ia_strict, jb), subspace_intersection(ia, jb_strict));
  return quotient_dim(num, den);
}

std::size_t BarcodeEngine::gamma_dim(int r, const RealValue& a, const RealValue& b) const {
  if (!(a < b)) throw domain_error("gamma_dim requires a < b, got a = " + a.str() + ", b = " + b.str());
  cov_->require_safe(a);
  cov_->require_safe(b);
  if (r < 0 || r > cov_->dim()) return 0;

  auto local = [&](std::size_t n) {
    auto z = cycles_of(r, cells_in_sublevel(r, n));
    auto bd = r + 1 <= cov_->dim() ? boundaries_of(r, cells_in_sublevel(r + 1, n)) : Subspace(cov_->count(r), field_);
    return QuotientCoordinates(std::move(z), std::move(bd));
  };
  auto h_a = local(cov_->levels_at_most(a));
  auto h_a_strict = local(cov_->levels_below(a));
  auto h_b = local(cov_->levels_at_most(b));
  auto h_b_strict = local(cov_->levels_below(b));

  // Kernel of the map from `from` to `to`, as a subspace of coordinates of `from`.
  auto kernel_into = [&](const QuotientCoordinates& from, const QuotientCoordinates& to) {
    std::vector<SparseColumn> cols;
    for (auto& rep : from.representatives()) {
      auto c = to.coords(rep);
      SparseColumn col;
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c[i]) col.push_back({static_cast<std::uint32_t>(i), c[i]});
      cols.push_back(std::move(col));
    }
    return kernel_basis(SparseMatrix::from_columns(to.dim(), field_, std::move(cols)));
  };
  auto chain_of = [&](const QuotientCoordinates& h, const DenseVector& x) {
    DenseVector v(cov_->count(r), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i])
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = field_.add(v[j], field_.mul(x[i], h.representatives()[i][j]));
    return v;
  };

  auto t_ab = kernel_into(h_a, h_b);
  auto t_a_bstrict = kernel_into(h_a, h_b_strict);
  auto t_astrict_b = kernel_into(h_a_strict, h_b);
  Subspace pushed(h_a.dim(), field_);
  for (auto& x : t_astrict_b.basis()) pushed.insert(h_a.coords(chain_of(h_a_strict, x)));
  return quotient_dim(t_ab, subspace_sum(pushed, t_a_bstrict));
}

void BarcodeEngine::reduce_filtrations() {
  int top = cov_->dim();
  if (top < 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    bool super = pass == 1;
    // (key, dim, index) with key the entry level in that filtration.
    std::vector<std::tuple<std::size_t, int, std::size_t>> order;
    std::size_t nlev = cov_->levels().size();
    for (int r = 0; r <= top; ++r)
      for (std::size_t i = 0; i < cov_->count(r); ++i) {
        std::size_t key = super ? nlev - 1 - cov_->lower_level(r, i) : cov_->upper_level(r, i);
        order.emplace_back(key, r, i);
      }
    std::sort(order.begin(), order.end());
    std::vector<std::vector<std::uint32_t>> pos(top + 1);
    for (int r = 0; r <= top; ++r) pos[r].resize(cov_->count(r));
    for (std::size_t p = 0; p < order.size(); ++p) pos[std::get<1>(order[p])][std::get<2>(order[p])] = static_cast<std::uint32_t>(p);

    std::vector<SparseColumn> cols(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
      auto [key, r, i] = order[p];
      if (r == 0) continue;
      for (auto& e : boundaries_[r].column(i)) cols[p].push_back({pos[r - 1][e.row], e.value});
      std::sort(cols[p].begin(), cols[p].end(), [](auto& x, auto& y) { return x.row < y.row; });
    }
    auto red = reduce(std::move(cols), field_);

    auto level_of = [&](std::size_t p) {
      auto key = std::get<0>(order[p]);
      return super ? nlev - 1 - key : key;
    };
    for (std::size_t p = 0; p < order.size(); ++p) {
      auto [key, r, i] = order[p];
      if (!red.r[p].empty()) {
        if (!super) {
          auto birth = red.r[p].back().row;
          degrees_[r - 1].pairs.emplace_back(level_of(birth), level_of(p));
        }
        continue;
      }
      DenseVector z(cov_->count(r), 0);
      for (auto& e : red.v[p]) z[std::get<2>(order[e.row])] = e.value;
      Filtered fc{level_of(p), homology(r).coords(z)};
      (super ? degrees_[r].super_cycles : degrees_[r].sub_cycles).push_back(std::move(fc));
    }
  }
}

Subspace BarcodeEngine::prefix_span(int r, std::size_t upto, bool super) const {
  // sublevel: levels < upto; superlevel: levels ≥ upto.
  const auto& h = homology(r);
  Subspace s(h.dim(), field_);
  if (r < 0 || r > cov_->dim()) return s;
  const auto& list = super ? degrees_[r].super_cycles : degrees_[r].sub_cycles;
  for (auto& c : list)
    if (super ? c.level >= upto : c.level < upto) s.insert(c.coords);
  return s;
}

std::map<std::size_t, std::size_t> BarcodeEngine::delta_row(int r, std::size_t a) const {
  std::map<std::size_t, std::size_t> row;
  if (r < 0 || r > cov_->dim()) return row;
  auto ia = prefix_span(r, a + 1, false);
  auto ia_strict = prefix_span(r, a, false);
  if (ia.dim() == ia_strict.dim()) return row;

  const auto& list = degrees_[r].super_cycles; // levels decreasing
  Subspace j_strict(homology(r).dim(), field_);
  std::size_t i = 0;
  while (i < list.size()) {
    std::size_t b = list[i].level;
    Subspace j = j_strict;
    bool grew = false;
    for (; i < list.size() && list[i].level == b; ++i) grew |= j.insert(list[i].coords);
    if (grew) {
      auto num = subspace_intersection(ia, j);
      auto den = subspace_sum(subspace_intersection(ia_strict, j), subspace_intersection(ia, j_strict));
      auto d = quotient_dim(num, den);
      if (d) row[b] = d;
    }
    j_strict = std::move(j);
  }
  return row;
}

std::map<std::size_t, std::size_t> BarcodeEngine::gamma_row(int r, std::size_t a) const {
  std::map<std::size_t, std::size_t> row;
  if (r < 0 || r > cov_->dim()) return row;
  for (auto [birth, death] : degrees_[r].pairs)
    if (birth == a && death > a) ++row[death];
  return row;
}

std::size_t BarcodeEngine::deaths_at(int r, std::size_t b) const {
  if (r < 0 || r > cov_->dim()) return 0;
  std::size_t n = 0;
  for (auto [birth, death] : degrees_[r].pairs)
    if (death == b && birth < death) ++n;
  return n;
}

std::size_t BarcodeEngine::essential_births_at(int r, std::size_t a) const {
  return prefix_span(r, a + 1, false).dim() - prefix_span(r, a, false).dim();
}

std::size_t BarcodeEngine::f_rank(int r, const RealValue& t) const {
  const auto& lv = cov_->levels();
  Subspace total(homology(r).dim(), field_);
  for (std::size_t a = 0; a < lv.size(); ++a) {
    // Smallest b with lv[a] - lv[b] ≤ t, i.e. lv[b] ≥ lv[a] - t.
    auto from = cov_->levels_below(lv[a] - t);
    if (from >= lv.size()) continue;
    total = subspace_sum(total, subspace_intersection(prefix_span(r, a + 1, false), prefix_span(r, from, true)));
  }
  return total.dim();
}

std::map<RealValue, std::size_t, RealLess> BarcodeEngine::f_rank_jumps(int r) const {
  std::map<RealValue, std::size_t, RealLess> jumps;
  const auto& lv = cov_->levels();
  for (std::size_t a = 0; a < lv.size(); ++a)
    for (auto [b, m] : delta_row(r, a)) jumps[lv[a] - lv[b]] += m;
  return jumps;
}

// ---------------------------------------------------------------------------

bool ANComplex::boundary_squared_zero() const {
  for (std::size_t r = 2; r < boundary.size(); ++r)
    if (!boundary[r - 1].multiply(boundary[r]).is_zero()) return false;
  return true;
}

std::vector<std::size_t> ANComplex::homology_dims() const {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < harmonic.size(); ++r) {
    std::size_t rk_in = r + 1 < boundary.size() ? rank(boundary[r + 1]) : 0;
    std::size_t rk_out = r >= 1 ? rank(boundary[r]) : 0;
    out.push_back(dim(static_cast<int>(r)) - rk_out - rk_in);
  }
  return out;
}

ANComplex an_complex(const std::vector<std::size_t>& beta, const std::vector<std::size_t>& rho, const PrimeField& field) {
  auto get = [](const std::vector<std::size_t>& v, std::size_t i) { return i < v.size() ? v[i] : 0; };
  std::size_t n = std::max(beta.size(), rho.size());
  // a nonzero top ρ needs one more degree to hold C^-
  if (n && get(rho, n - 1)) ++n;
  ANComplex an;
  for (std::size_t r = 0; r < n; ++r) {
    an.minus.push_back(r ? get(rho, r - 1) : 0);
    an.plus.push_back(get(rho, r));
    an.harmonic.push_back(get(beta, r));
  }
  an.boundary.emplace_back(0, an.dim(0), field);
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<SparseColumn> cols(an.dim(static_cast<int>(r)));
    for (std::size_t i = 0; i < an.minus[r]; ++i)
      cols[i].push_back({static_cast<std::uint32_t>(an.minus[r - 1] + i), 1});
    an.boundary.push_back(SparseMatrix::from_columns(an.dim(static_cast<int>(r - 1)), field, std::move(cols)));
  }
  return an;
}

// ---------------------------------------------------------------------------

const DegreeReport& BarcodeReport::degree(int r) const {
  static const DegreeReport none;
  if (r < 0 || r >= static_cast<int>(degrees.size())) return none;
  return degrees[r];
}

std::vector<std::size_t> BarcodeReport::betas() const {
  std::vector<std::size_t> v;
  for (auto& d : degrees) v.push_back(d.beta);
  return v;
}

std::vector<std::size_t> BarcodeReport::rhos() const {
  std::vector<std::size_t> v;
  for (auto& d : degrees) v.push_back(d.rho);
  return v;
}

namespace {

void finish_counts(BarcodeReport& rep) {
  for (std::size_t r = 0; r < rep.degrees.size(); ++r) {
    auto& d = rep.degrees[r];
    d.degree = static_cast<int>(r);
    d.beta = d.delta.mass();
    d.rho = d.gamma.mass();
    d.c = d.beta + d.rho + (r ? rep.degrees[r - 1].gamma.mass() : 0);
    d.lambda = d.delta.positive_part();
    d.lambda.add(d.gamma);
    if (r) d.lambda.add(rep.degrees[r - 1].gamma);
  }
}

// Report for one window plus whether all orbit representatives were safe.
std::pair<BarcodeReport, bool> window_report(const WindowedCover& cov, const PrimeField& field, int r_max) {
  BarcodeReport rep;
  rep.field = field.modulus();
  rep.dim = cov.base().dim();
  rep.lattice_rank = cov.lattice().rank();
  rep.window_radius = cov.window().radius;
  rep.euler_characteristic = cov.base().euler_characteristic();
  if (r_max < 0) r_max = cov.dim();
  rep.degrees.resize(static_cast<std::size_t>(std::max(r_max + 1, 0)));
  if (cov.vertex_count() == 0) return {rep, true};

  auto orbits = critical_orbits(cov);
  BarcodeEngine eng(cov, field);
  const auto& lv = cov.levels();
  bool safe = true;
  for (auto& o : orbits.orbits) {
    OrbitRow row{o.rep, o.base_vertices, {}};
    auto a = cov.level_of_vertex(o.eval_vertex);
    if (!cov.level_safe(a) || (cov.has_frontier() && !o.eval_complete)) safe = false;
    for (int r = 0; r <= r_max; ++r) {
      auto& d = rep.degrees[r];
      for (auto [b, m] : eng.delta_row(r, a)) {
        if (cov.level_safe(b))
          d.delta.add(lv[b] - lv[a], m);
        else
          d.truncated_delta += m;
      }
      for (auto [b, m] : eng.gamma_row(r, a)) {
        if (cov.level_safe(b))
          d.gamma.add(lv[b] - lv[a], m);
        else
          d.truncated_gamma += m;
      }
      auto rel = relative_dim_lower(cov, r, a + 1, a, field);
      row.relative_dims.push_back(rel);
      d.orbit_relative_total += rel;
    }
    rep.orbits.push_back(std::move(row));
  }
  finish_counts(rep);
  rep.weakly_tame = verify_weak_tameness(cov, field).weakly_tame;
  return {rep, safe};
}

} // namespace

BarcodeReport report_for_window(const WindowedCover& cov, const PrimeField& field, int r_max) {
  auto [rep, safe] = window_report(cov, field, r_max);
  if (!safe) rep.warnings.push_back("an orbit representative lies in the frontier margin of the window");
  return rep;
}

bool same_barcodes(const BarcodeReport& a, const BarcodeReport& b) {
  if (a.degrees.size() != b.degrees.size()) return false;
  for (std::size_t r = 0; r < a.degrees.size(); ++r) {
    auto& x = a.degrees[r];
    auto& y = b.degrees[r];
    if (!(x.delta == y.delta) || !(x.gamma == y.gamma) || x.beta != y.beta || x.rho != y.rho || x.c != y.c ||
        x.orbit_relative_total != y.orbit_relative_total)
      return false;
  }
  return true;
}

Configuration delta_with_sign(const Configuration& delta, DeltaSign sign) {
  return sign == DeltaSign::formula ? delta : delta.reflected();
}

namespace {

BarcodeReport stabilize_connected(const SimplicialComplex& kx, const Cocycle& c, const StabilizeOptions& opt) {
  PrimeField field(opt.field);
  int r_max = opt.r_max < 0 ? kx.dim() : opt.r_max;
  std::optional<BarcodeReport> prev, last;
  int prev_radius = -1;
  std::vector<std::string> notes;
  for (int n = std::max(opt.window_start, 0); n <= opt.window_max; ++n) {
    WindowedCover cov;
    try {
      cov = build_cover(kx, c, WindowSpec{n});
    } catch (const window_too_small_error& e) {
      notes.push_back(e.what());
      continue;
    }
    std::pair<BarcodeReport, bool> cur;
    try {
      cur = window_report(cov, field, r_max);
    } catch (const window_too_small_error& e) {
      notes.push_back(e.what());
      continue;
    }
    auto& [rep, safe] = cur;
    if (cov.lattice().rank() == 0) return rep;
    last = rep;
    if (!safe) {
      notes.push_back("radius " + std::to_string(n) + ": orbit representative within the frontier margin");
      prev.reset();
      continue;
    }
    if (prev && prev_radius == n - 1 && same_barcodes(*prev, rep)) return rep;
    prev = rep;
    prev_radius = n;
  }
  BarcodeReport out;
  if (prev) {
    out = *prev;
  } else if (last) {
    out = *last;
  } else {
    out.field = opt.field;
    out.dim = kx.dim();
    out.euler_characteristic = kx.euler_characteristic();
    out.degrees.resize(static_cast<std::size_t>(std::max(r_max + 1, 0)));
    out.window_radius = opt.window_max;
  }
  out.stabilized = false;
  out.warnings.push_back("window did not stabilize up to radius " + std::to_string(opt.window_max));
  for (auto& s : notes) out.warnings.push_back(s);
  return out;
}

} // namespace

BarcodeReport stabilize(const SimplicialComplex& kx, const Cocycle& c, const StabilizeOptions& opt) {
  require_cocycle(kx, c);
  int r_max = opt.r_max < 0 ? kx.dim() : opt.r_max;
  BarcodeReport total;
  total.field = opt.field;
  total.dim = kx.dim();
  total.euler_characteristic = kx.euler_characteristic();
  total.window_radius = 0;
  total.degrees.resize(static_cast<std::size_t>(std::max(r_max + 1, 0)));
  if (kx.vertex_count() == 0) return total;

  auto label = kx.components();
  std::size_t ncomp = *std::max_element(label.begin(), label.end()) + 1;
  for (std::size_t comp = 0; comp < ncomp; ++comp) {
    std::vector<Vertex> verts;
    for (Vertex v = 0; v < label.size(); ++v)
      if (label[v] == comp) verts.push_back(v);
    BarcodeReport part;
    if (ncomp == 1) {
      part = stabilize_connected(kx, c, opt);
    } else {
      auto sub = kx.induced(verts);
      Cocycle sc(c.basis());
      for (auto& e : sub.simplices(1)) sc.set(e[0], e[1], c.value(verts[e[0]], verts[e[1]]));
      part = stabilize_connected(sub, sc, opt);
      for (auto& o : part.orbits)
        for (auto& v : o.base_vertices) v = verts[v];
    }
    for (std::size_t r = 0; r < total.degrees.size() && r < part.degrees.size(); ++r) {
      auto& d = total.degrees[r];
      const auto& p = part.degrees[r];
      d.delta.add(p.delta);
      d.gamma.add(p.gamma);
      d.orbit_relative_total += p.orbit_relative_total;
      d.truncated_delta += p.truncated_delta;
      d.truncated_gamma += p.truncated_gamma;
    }
    for (auto& o : part.orbits) total.orbits.push_back(std::move(o));
    total.window_radius = std::max(total.window_radius, part.window_radius);
    total.lattice_rank = std::max(total.lattice_rank, part.lattice_rank);
    total.stabilized = total.stabilized && part.stabilized;
    total.weakly_tame = total.weakly_tame && part.weakly_tame;
    for (auto& w : part.warnings) total.warnings.push_back(w);
  }
  finish_counts(total);
  return total;
}

} // namespace anbar
