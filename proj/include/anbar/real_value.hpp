#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace anbar {

using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal ("0.25", "-1e-3") exactly.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Period basis θ_1..θ_k (θ_0 = 1 is implicit) plus the collision tolerance
/// used to order values by their float embedding.
struct PeriodBasis {
  std::vector<long double> theta;
  double tolerance = 1e-9;

  std::size_t k() const { return theta.size(); }

  /// Integer relations c_0 + c_i θ_i = 0 or c_i θ_i = c_j θ_j with |c| ≤ bound
  /// detected by continued fractions; empty when none is found. The check is
  /// pairwise, so it cannot rule out longer relations.
  std::vector<std::string> independence_warnings(long long bound = 1000000) const;
};

using BasisPtr = std::shared_ptr<const PeriodBasis>;

BasisPtr make_basis(std::vector<long double> theta, double tolerance = 1e-9);

/// An exact real number q_0 + Σ q_i θ_i. Equality is exact on coordinates;
/// ordering goes through the float embedding and raises precision_error when
/// two distinct values embed closer than the tolerance.
class RealValue {
public:
  RealValue() = default;
  explicit RealValue(BasisPtr basis);
  RealValue(BasisPtr basis, std::vector<Rational> coords);
  static RealValue rational(BasisPtr basis, const Rational& q);

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }
  double embed() const { return static_cast<double>(embed_); }
  long double embed_long() const { return embed_; }
  bool is_zero() const;
  bool is_rational() const;

  RealValue operator+(const RealValue& o) const;
  RealValue operator-(const RealValue& o) const;
  RealValue operator-() const;
  RealValue operator*(const Rational& s) const;
  RealValue& operator+=(const RealValue& o) { return *this = *this + o; }

  friend bool operator==(const RealValue& a, const RealValue& b) { return a.coords_ == b.coords_; }

  /// -1, 0, +1.
  int compare(const RealValue& o) const;
  bool operator<(const RealValue& o) const { return compare(o) < 0; }
  bool operator<=(const RealValue& o) const { return compare(o) <= 0; }
  bool operator>(const RealValue& o) const { return compare(o) > 0; }
  bool operator>=(const RealValue& o) const { return compare(o) >= 0; }

  std::vector<std::string> coord_strings() const;
  std::string str() const;

private:
  void check_basis(const RealValue& o) const;
  void refresh_embed();

  BasisPtr basis_;
  std::vector<Rational> coords_;
  long double embed_ = 0;
};

/// Comparator for ordered containers keyed by RealValue.
struct RealLess {
  bool operator()(const RealValue& a, const RealValue& b) const { return a.compare(b) < 0; }
};

} // namespace anbar
