#include "anbar/real_value.hpp"

#include <cmath>
#include <sstream>

#include "anbar/error.hpp"

namespace anbar {

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  if (text.empty()) throw input_error("empty rational literal");
  try {
    if (text.find('/') != std::string::npos) {
      Rational q(text, 10);
      if (q.get_den() == 0) throw input_error("zero denominator in '" + raw + "'");
      q.canonicalize();
      return q;
    }
    // decimal with optional exponent
    std::string mant = text;
    long exp10 = 0;
    if (auto e = text.find_first_of("eE"); e != std::string::npos) {
      mant = text.substr(0, e);
      exp10 = std::stol(text.substr(e + 1));
    }
    bool negative = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      negative = mant[0] == '-';
      mant = mant.substr(1);
    }
    std::string digits;
    long frac = 0;
    bool seen_point = false;
    for (char ch : mant) {
      if (ch == '.') {
        if (seen_point) throw input_error("malformed number '" + raw + "'");
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        digits.push_back(ch);
        if (seen_point) ++frac;
      } else {
        throw input_error("malformed number '" + raw + "'");
      }
    }
    if (digits.empty()) throw input_error("malformed number '" + raw + "'");
    mpz_class num(digits, 10);
    mpz_class den = 1;
    long shift = exp10 - frac;
    mpz_class ten = 10;
    if (shift >= 0) {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift));
      num *= p;
    } else {
      mpz_pow_ui(den.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(-shift));
    }
    Rational q(num, den);
    q.canonicalize();
    return negative ? Rational(-q) : q;
  } catch (const std::invalid_argument&) {
    throw input_error("malformed rational '" + raw + "'");
  } catch (const std::out_of_range&) {
    throw input_error("malformed rational '" + raw + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

/// Continued-fraction convergents p/q of x with q ≤ bound; returns a relation
/// (p, q) with |q x - p| < tol if one exists.
bool near_rational(long double x, long long bound, double tol, long long& p_out, long long& q_out) {
  long double v = x;
  long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    long double a = std::floor(v);
    if (std::fabs(a) > 1e15L) break;
    long long ai = static_cast<long long>(a);
    long long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > bound) break;
    if (std::fabs(static_cast<long double>(q2) * x - static_cast<long double>(p2)) < tol) {
      p_out = p2;
      q_out = q2;
      return true;
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    long double frac = v - a;
    if (frac == 0) break;
    v = 1 / frac;
  }
  return false;
}

} // namespace

std::vector<std::string> PeriodBasis::independence_warnings(long long bound) const {
  std::vector<std::string> out;
  long long p, q;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0)) out.push_back("theta_" + std::to_string(i + 1) + " is not positive");
    if (near_rational(theta[i], bound, tolerance, p, q))
      out.push_back("theta_" + std::to_string(i + 1) + " is numerically " + std::to_string(p) + "/" +
                    std::to_string(q));
    for (std::size_t j = 0; j < i; ++j)
      if (theta[j] > 0 && near_rational(theta[i] / theta[j], bound, tolerance, p, q))
        out.push_back("theta_" + std::to_string(i + 1) + "/theta_" + std::to_string(j + 1) +
                      " is numerically " + std::to_string(p) + "/" + std::to_string(q));
  }
  return out;
}

BasisPtr make_basis(std::vector<long double> theta, double tolerance) {
  auto b = std::make_shared<PeriodBasis>();
  b->theta = std::move(theta);
  b->tolerance = tolerance;
  return b;
}

RealValue::RealValue(BasisPtr basis) : basis_(std::move(basis)) {
  coords_.assign(basis_->k() + 1, Rational(0));
}

RealValue::RealValue(BasisPtr basis, std::vector<Rational> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
  if (coords_.size() != basis_->k() + 1)
    throw contract_error("value has " + std::to_string(coords_.size()) + " coordinates, expected " +
                         std::to_string(basis_->k() + 1));
  refresh_embed();
}

RealValue RealValue::rational(BasisPtr basis, const Rational& q) {
  RealValue v(std::move(basis));
  v.coords_[0] = q;
  v.refresh_embed();
  return v;
}

namespace {

// mpq_get_d truncates toward zero; dividing the parts rounds correctly
long double to_long_double(const Rational& q) {
  return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
}

} // namespace

void RealValue::refresh_embed() {
  for (auto& q : coords_) q.canonicalize();
  long double e = to_long_double(coords_[0]);
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) e += to_long_double(coords_[i]) * basis_->theta[i - 1];
  embed_ = e;
}

bool RealValue::is_zero() const {
  for (auto& c : coords_)
    if (c != 0) return false;
  return true;
}

bool RealValue::is_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return false;
  return true;
}

void RealValue::check_basis(const RealValue& o) const {
  if (basis_ != o.basis_ && (!basis_ || !o.basis_ || basis_->theta != o.basis_->theta))
    throw contract_error("values over different period bases");
}

RealValue RealValue::operator+(const RealValue& o) const {
  check_basis(o);
  RealValue r(basis_);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] + o.coords_[i];
  r.refresh_embed();
  return r;
}

RealValue RealValue::operator-(const RealValue& o) const {
  check_basis(o);
  RealValue r(basis_);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] - o.coords_[i];
  r.refresh_embed();
  return r;
}

RealValue RealValue::operator-() const {
  RealValue r(basis_);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = -coords_[i];
  r.refresh_embed();
  return r;
}

RealValue RealValue::operator*(const Rational& s) const {
  RealValue r(basis_);
  for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] * s;
  r.refresh_embed();
  return r;
}

int RealValue::compare(const RealValue& o) const {
  if (coords_ == o.coords_) return 0;
  auto d = *this - o;
  if (d.is_rational()) return sgn(d.coords_[0]);
  if (std::fabs(d.embed_) < basis_->tolerance)
    throw precision_error("values " + str() + " and " + o.str() + " differ by " +
                          std::to_string(static_cast<double>(d.embed_)) + ", below the collision tolerance");
  return d.embed_ < 0 ? -1 : 1;
}

std::vector<std::string> RealValue::coord_strings() const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (auto& c : coords_) out.push_back(c.get_str());
  return out;
}

std::string RealValue::str() const {
  std::ostringstream os;
  os << coords_[0].get_str();
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) os << (coords_[i] > 0 ? "+" : "") << coords_[i].get_str() << "*t" << i;
  return os.str();
}

} // namespace anbar
