#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "anbar/error.hpp"

namespace anbar {

using Scalar = std::uint32_t;
using DenseVector = std::vector<Scalar>;

/// Arithmetic in Z/p. All vectors and matrices of one computation share one
/// instance; the modulus is checked to be prime on construction.
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p = 2);

  std::uint32_t modulus() const { return p_; }

  Scalar reduce(std::int64_t v) const {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const {
    auto s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Scalar sub(Scalar a, Scalar b) const { return a >= b ? a - b : a + p_ - b; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Scalar inv(Scalar a) const;

  static bool is_prime(std::uint32_t p);

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
  std::uint32_t p_;
};

/// A single field element paired with its modulus.
struct FieldElem {
  Scalar value = 0;
  std::uint32_t modulus = 2;

  FieldElem operator+(FieldElem o) const;
  FieldElem operator-(FieldElem o) const;
  FieldElem operator*(FieldElem o) const;
  FieldElem inverse() const;
  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

struct SparseEntry {
  std::uint32_t row;
  Scalar value;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

using SparseColumn = std::vector<SparseEntry>;

/// Column-major sparse matrix over Z/p. Columns hold strictly increasing rows
/// and never store zeros.
class SparseMatrix {
public:
  SparseMatrix(std::size_t rows, std::size_t cols, PrimeField field);

  /// Builds from arbitrary (row, value) lists; sorts, merges duplicates and
  /// drops zeros.
  static SparseMatrix from_columns(std::size_t rows, PrimeField field,
                                   std::vector<SparseColumn> columns);
  /// Row-major dense literal, values reduced mod p.
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows,
                                 PrimeField field);
  static SparseMatrix identity(std::size_t n, PrimeField field);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const PrimeField& field() const { return field_; }
  const SparseColumn& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseColumn>& columns() const { return columns_; }

  Scalar at(std::size_t row, std::size_t col) const;
  DenseVector dense_column(std::size_t j) const;
  DenseVector apply(std::span<const Scalar> x) const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;
  /// Keeps the listed columns, in the given order.
  SparseMatrix select_columns(std::span<const std::size_t> keep) const;
  std::size_t nonzeros() const;
  bool is_zero() const { return nonzeros() == 0; }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.field_ == b.field_ && a.columns_ == b.columns_;
  }

private:
  std::size_t rows_;
  PrimeField field_;
  std::vector<SparseColumn> columns_;
};

/// A subspace of F_p^n stored by its reduced column echelon basis: the pivot
/// of a basis vector is its first nonzero coordinate, equal to 1; every other
/// basis vector vanishes there; pivots are strictly increasing.
class Subspace {
public:
  Subspace(std::size_t ambient_dim, PrimeField field);

  static Subspace span(std::size_t ambient_dim, PrimeField field,
                       const std::vector<DenseVector>& vectors);
  static Subspace full(std::size_t ambient_dim, PrimeField field);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const PrimeField& field() const { return field_; }
  const std::vector<DenseVector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Adds a vector to the span; returns false when it was already contained.
  bool insert(DenseVector v);
  /// `v` minus its projection along the pivots; zero iff `v` lies in the span.
  DenseVector residue(DenseVector v) const;
  bool contains(const DenseVector& v) const;
  bool contains(const Subspace& w) const;
  /// Coefficients of `v` in the stored basis; nullopt if `v` is outside.
  std::optional<DenseVector> coordinates(const DenseVector& v) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.field_ == b.field_ && a.basis_ == b.basis_;
  }

private:
  std::size_t ambient_;
  PrimeField field_;
  std::vector<DenseVector> basis_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const SparseMatrix& m);
Subspace image_basis(const SparseMatrix& m);
Subspace kernel_basis(const SparseMatrix& m);
Subspace subspace_sum(const Subspace& u, const Subspace& v);
Subspace subspace_intersection(const Subspace& u, const Subspace& v);
/// dim u - dim w; throws containment_error unless w is a subspace of u.
std::size_t quotient_dim(const Subspace& u, const Subspace& w);
/// Image of a subspace of the domain under m.
Subspace map_subspace(const SparseMatrix& m, const Subspace& s);

/// Coordinates on a quotient Z/B for subspaces B ⊆ Z of a common ambient
/// space. A vector of Z maps to its coefficients on a fixed complement of B.
class QuotientCoordinates {
public:
  QuotientCoordinates(Subspace cycles, Subspace boundaries);

  std::size_t dim() const { return complement_.dim(); }
  std::size_t ambient_dim() const { return complement_.ambient_dim(); }
  const PrimeField& field() const { return complement_.field(); }
  /// Representative vectors of a basis of Z/B.
  const std::vector<DenseVector>& representatives() const { return complement_.basis(); }
  const Subspace& boundaries() const { return boundaries_; }
  /// Throws contract_error if `z` is not in Z.
  DenseVector coords(const DenseVector& z) const;
  /// Image in Z/B of the span of the given vectors of Z.
  Subspace image_of(const std::vector<DenseVector>& zs) const;

private:
  Subspace boundaries_;
  Subspace complement_;
};

} // namespace anbar
