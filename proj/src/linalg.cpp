#include "anbar/linalg.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

namespace anbar {

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw contract_error("field modulus " + std::to_string(p) + " is not prime");
}

bool PrimeField::is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Scalar PrimeField::inv(Scalar a) const {
  if (a % p_ == 0) throw contract_error("inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_;
  std::uint32_t e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

namespace {

PrimeField field_of(const FieldElem& a, const FieldElem& b) {
  if (a.modulus != b.modulus) throw contract_error("field elements over different moduli");
  return PrimeField(a.modulus);
}

} // namespace

FieldElem FieldElem::operator+(FieldElem o) const { return {field_of(*this, o).add(value, o.value), modulus}; }
FieldElem FieldElem::operator-(FieldElem o) const { return {field_of(*this, o).sub(value, o.value), modulus}; }
FieldElem FieldElem::operator*(FieldElem o) const { return {field_of(*this, o).mul(value, o.value), modulus}; }
FieldElem FieldElem::inverse() const { return {PrimeField(modulus).inv(value), modulus}; }

// ---------------------------------------------------------------------------
// Sparse columns

namespace {

/// a += c * b, both sorted by row.
SparseColumn axpy(const PrimeField& f, const SparseColumn& a, Scalar c, const SparseColumn& b) {
  SparseColumn out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].row < a[i].row) {
      out.push_back({b[j].row, f.mul(c, b[j].value)});
      ++j;
    } else {
      Scalar v = f.add(a[i].value, f.mul(c, b[j].value));
      if (v != 0) out.push_back({a[i].row, v});
      ++i;
      ++j;
    }
  }
  return out;
}

SparseColumn normalize(const PrimeField& f, SparseColumn col) {
  std::sort(col.begin(), col.end(), [](auto& x, auto& y) { return x.row < y.row; });
  SparseColumn out;
  for (auto& e : col) {
    Scalar v = f.reduce(e.value);
    if (!out.empty() && out.back().row == e.row)
      out.back().value = f.add(out.back().value, v);
    else
      out.push_back({e.row, v});
  }
  std::erase_if(out, [](auto& e) { return e.value == 0; });
  return out;
}

struct Reduction {
  std::vector<SparseColumn> reduced;
  std::vector<SparseColumn> transform; // only filled when tracked
};

/// Left-to-right column reduction on lowest nonzero rows. After it, nonzero
/// reduced columns have distinct lows; reduced = m * transform.
Reduction reduce_columns(const SparseMatrix& m, bool track) {
  const auto& f = m.field();
  Reduction out;
  out.reduced = m.columns();
  if (track) {
    out.transform.resize(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.transform[j] = {{static_cast<std::uint32_t>(j), 1}};
  }
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_low;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto& col = out.reduced[j];
    while (!col.empty()) {
      auto low = col.back();
      auto it = pivot_of_low.find(low.row);
      if (it == pivot_of_low.end()) {
        pivot_of_low.emplace(low.row, j);
        break;
      }
      const auto& other = out.reduced[it->second];
      Scalar c = f.neg(f.mul(low.value, f.inv(other.back().value)));
      col = axpy(f, col, c, other);
      if (track) out.transform[j] = axpy(f, out.transform[j], c, out.transform[it->second]);
    }
  }
  return out;
}

DenseVector densify(const SparseColumn& col, std::size_t n) {
  DenseVector v(n, 0);
  for (auto& e : col) v[e.row] = e.value;
  return v;
}

constexpr std::size_t dense_threshold = 4096;

std::size_t dense_rank(const SparseMatrix& m) {
  Subspace s(m.rows(), m.field());
  for (std::size_t j = 0; j < m.cols(); ++j) s.insert(m.dense_column(j));
  return s.dim();
}

} // namespace

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), field_(field), columns_(cols) {}

SparseMatrix SparseMatrix::from_columns(std::size_t rows, PrimeField field,
                                        std::vector<SparseColumn> columns) {
  SparseMatrix m(rows, 0, field);
  m.columns_.reserve(columns.size());
  for (auto& c : columns) {
    for (auto& e : c)
      if (e.row >= rows) throw contract_error("sparse entry row out of range");
    m.columns_.push_back(normalize(field, std::move(c)));
  }
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                      PrimeField field) {
  std::size_t nr = rows.size(), nc = rows.empty() ? 0 : rows[0].size();
  std::vector<SparseColumn> cols(nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw contract_error("ragged dense matrix literal");
    for (std::size_t j = 0; j < nc; ++j)
      if (auto v = field.reduce(rows[i][j]))
        cols[j].push_back({static_cast<std::uint32_t>(i), v});
  }
  return from_columns(nr, field, std::move(cols));
}

SparseMatrix SparseMatrix::identity(std::size_t n, PrimeField field) {
  std::vector<SparseColumn> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = {{static_cast<std::uint32_t>(j), 1}};
  return from_columns(n, field, std::move(cols));
}

Scalar SparseMatrix::at(std::size_t row, std::size_t col) const {
  for (auto& e : columns_[col])
    if (e.row == row) return e.value;
  return 0;
}

DenseVector SparseMatrix::dense_column(std::size_t j) const { return densify(columns_[j], rows_); }

DenseVector SparseMatrix::apply(std::span<const Scalar> x) const {
  if (x.size() != cols()) throw contract_error("matrix-vector dimension mismatch");
  DenseVector y(rows_, 0);
  for (std::size_t j = 0; j < cols(); ++j) {
    if (x[j] == 0) continue;
    for (auto& e : columns_[j]) y[e.row] = field_.add(y[e.row], field_.mul(e.value, x[j]));
  }
  return y;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (cols() != rhs.rows()) throw contract_error("matrix product dimension mismatch");
  std::vector<SparseColumn> out(rhs.cols());
  for (std::size_t j = 0; j < rhs.cols(); ++j) {
    SparseColumn acc;
    for (auto& e : rhs.column(j)) acc = axpy(field_, acc, e.value, columns_[e.row]);
    out[j] = std::move(acc);
  }
  return from_columns(rows_, field_, std::move(out));
}

SparseMatrix SparseMatrix::select_columns(std::span<const std::size_t> keep) const {
  SparseMatrix m(rows_, 0, field_);
  m.columns_.reserve(keep.size());
  for (auto j : keep) m.columns_.push_back(columns_.at(j));
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (auto& c : columns_) n += c.size();
  return n;
}

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(std::size_t ambient_dim, PrimeField field) : ambient_(ambient_dim), field_(field) {}

Subspace Subspace::span(std::size_t ambient_dim, PrimeField field, const std::vector<DenseVector>& vectors) {
  Subspace s(ambient_dim, field);
  for (auto& v : vectors) s.insert(v);
  return s;
}

Subspace Subspace::full(std::size_t ambient_dim, PrimeField field) {
  Subspace s(ambient_dim, field);
  for (std::size_t i = 0; i < ambient_dim; ++i) {
    DenseVector e(ambient_dim, 0);
    e[i] = 1;
    s.basis_.push_back(std::move(e));
    s.pivots_.push_back(i);
  }
  return s;
}

DenseVector Subspace::residue(DenseVector v) const {
  if (v.size() != ambient_) throw contract_error("vector length does not match ambient dimension");
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    Scalar c = v[pivots_[k]];
    if (c == 0) continue;
    Scalar m = field_.neg(c);
    const auto& b = basis_[k];
    for (std::size_t i = pivots_[k]; i < ambient_; ++i)
      if (b[i]) v[i] = field_.add(v[i], field_.mul(m, b[i]));
  }
  return v;
}

bool Subspace::insert(DenseVector v) {
  v = residue(std::move(v));
  auto first = std::find_if(v.begin(), v.end(), [](Scalar x) { return x != 0; });
  if (first == v.end()) return false;
  std::size_t q = static_cast<std::size_t>(first - v.begin());
  Scalar s = field_.inv(v[q]);
  for (std::size_t i = q; i < ambient_; ++i) v[i] = field_.mul(v[i], s);
  for (auto& b : basis_) {
    Scalar c = b[q];
    if (c == 0) continue;
    Scalar m = field_.neg(c);
    for (std::size_t i = q; i < ambient_; ++i)
      if (v[i]) b[i] = field_.add(b[i], field_.mul(m, v[i]));
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), q) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, q);
  basis_.insert(basis_.begin() + pos, std::move(v));
  return true;
}

bool Subspace::contains(const DenseVector& v) const {
  auto r = residue(v);
  return std::all_of(r.begin(), r.end(), [](Scalar x) { return x == 0; });
}

bool Subspace::contains(const Subspace& w) const {
  if (w.ambient_ != ambient_) throw contract_error("ambient dimension mismatch");
  if (w.dim() > dim()) return false;
  return std::all_of(w.basis_.begin(), w.basis_.end(), [&](auto& b) { return contains(b); });
}

std::optional<DenseVector> Subspace::coordinates(const DenseVector& v) const {
  if (!contains(v)) return std::nullopt;
  DenseVector c(basis_.size());
  for (std::size_t k = 0; k < basis_.size(); ++k) c[k] = v[pivots_[k]];
  return c;
}

// ---------------------------------------------------------------------------
// Operations

std::size_t rank(const SparseMatrix& m) {
  if (m.rows() * m.cols() <= dense_threshold) return dense_rank(m);
  auto red = reduce_columns(m, false);
  return static_cast<std::size_t>(
      std::count_if(red.reduced.begin(), red.reduced.end(), [](auto& c) { return !c.empty(); }));
}

Subspace image_basis(const SparseMatrix& m) {
  Subspace s(m.rows(), m.field());
  if (m.rows() * m.cols() <= dense_threshold) {
    for (std::size_t j = 0; j < m.cols(); ++j) s.insert(m.dense_column(j));
    return s;
  }
  auto red = reduce_columns(m, false);
  for (auto& c : red.reduced)
    if (!c.empty()) s.insert(densify(c, m.rows()));
  return s;
}

Subspace kernel_basis(const SparseMatrix& m) {
  auto red = reduce_columns(m, true);
  Subspace s(m.cols(), m.field());
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (red.reduced[j].empty()) s.insert(densify(red.transform[j], m.cols()));
  return s;
}

Subspace subspace_sum(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim() || !(u.field() == v.field()))
    throw contract_error("subspace_sum: ambient dimension mismatch");
  Subspace s = u.dim() >= v.dim() ? u : v;
  const Subspace& other = u.dim() >= v.dim() ? v : u;
  for (auto& b : other.basis()) s.insert(b);
  return s;
}

Subspace subspace_intersection(const Subspace& u, const Subspace& v) {
  if (u.ambient_dim() != v.ambient_dim() || !(u.field() == v.field()))
    throw contract_error("subspace_intersection: ambient dimension mismatch");
  const auto& f = u.field();
  if (u.dim() == 0 || v.dim() == 0) return Subspace(u.ambient_dim(), f);
  if (u.contains(v)) return v;
  if (v.contains(u)) return u;
  // Kernel of [U | V]: (x, y) with U x + V y = 0 gives U x in both.
  std::vector<SparseColumn> cols;
  for (const auto* s : {&u, &v})
    for (auto& b : s->basis()) {
      SparseColumn c;
      for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) c.push_back({static_cast<std::uint32_t>(i), b[i]});
      cols.push_back(std::move(c));
    }
  auto joint = SparseMatrix::from_columns(u.ambient_dim(), f, std::move(cols));
  auto ker = kernel_basis(joint);
  Subspace out(u.ambient_dim(), f);
  for (auto& k : ker.basis()) {
    DenseVector x(u.ambient_dim(), 0);
    for (std::size_t j = 0; j < u.dim(); ++j) {
      if (k[j] == 0) continue;
      const auto& b = u.basis()[j];
      for (std::size_t i = 0; i < x.size(); ++i)
        if (b[i]) x[i] = f.add(x[i], f.mul(k[j], b[i]));
    }
    out.insert(std::move(x));
  }
  return out;
}

std::size_t quotient_dim(const Subspace& u, const Subspace& w) {
  if (u.ambient_dim() != w.ambient_dim()) throw contract_error("quotient_dim: ambient dimension mismatch");
  if (!u.contains(w)) throw containment_error("quotient_dim: denominator is not contained in numerator");
  return u.dim() - w.dim();
}

Subspace map_subspace(const SparseMatrix& m, const Subspace& s) {
  if (s.ambient_dim() != m.cols()) throw contract_error("map_subspace: dimension mismatch");
  Subspace out(m.rows(), m.field());
  for (auto& b : s.basis()) out.insert(m.apply(b));
  return out;
}

QuotientCoordinates::QuotientCoordinates(Subspace cycles, Subspace boundaries)
    : boundaries_(std::move(boundaries)), complement_(cycles.ambient_dim(), cycles.field()) {
  if (!cycles.contains(boundaries_)) throw containment_error("boundaries are not contained in cycles");
  for (auto& z : cycles.basis()) complement_.insert(boundaries_.residue(z));
}

DenseVector QuotientCoordinates::coords(const DenseVector& z) const {
  auto c = complement_.coordinates(boundaries_.residue(z));
  if (!c) throw contract_error("vector is not a cycle of this quotient");
  return *c;
}

Subspace QuotientCoordinates::image_of(const std::vector<DenseVector>& zs) const {
  Subspace out(dim(), field());
  for (auto& z : zs) out.insert(coords(z));
  return out;
}

} // namespace anbar
