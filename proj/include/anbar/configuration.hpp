#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "anbar/real_value.hpp"

namespace anbar {

enum class ConfigDomain { real, positive };

/// Finite-support map from ℝ (or ℝ₊ = (0, ∞)) to positive multiplicities.
/// Points are kept sorted with pairwise distinct locations.
class Configuration {
public:
  explicit Configuration(ConfigDomain domain = ConfigDomain::real) : domain_(domain) {}

  ConfigDomain domain() const { return domain_; }
  const std::vector<std::pair<RealValue, std::size_t>>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t mass() const;
  std::size_t at(const RealValue& t) const;

  /// Adds multiplicity at t (no-op for m = 0). Positive domains reject t ≤ 0.
  void add(const RealValue& t, std::size_t m = 1);
  void add(const Configuration& other);
  /// Points with t > 0, retagged as a positive-domain configuration.
  Configuration positive_part() const;
  /// t ↦ -t (real domain only).
  Configuration reflected() const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.domain_ == b.domain_ && a.points_ == b.points_;
  }

private:
  ConfigDomain domain_;
  std::vector<std::pair<RealValue, std::size_t>> points_;
};

} // namespace anbar
