#include "anbar/configuration.hpp"

#include <algorithm>

#include "anbar/error.hpp"

namespace anbar {

std::size_t Configuration::mass() const {
  std::size_t m = 0;
  for (auto& p : points_) m += p.second;
  return m;
}

std::size_t Configuration::at(const RealValue& t) const {
  for (auto& p : points_)
    if (p.first == t) return p.second;
  return 0;
}

void Configuration::add(const RealValue& t, std::size_t m) {
  if (m == 0) return;
  if (domain_ == ConfigDomain::positive && t <= RealValue(t.basis()))
    throw domain_error("configuration on (0, inf) cannot hold the point " + t.str());
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const auto& p, const RealValue& v) { return p.first < v; });
  if (it != points_.end() && it->first == t)
    it->second += m;
  else
    points_.insert(it, {t, m});
}

void Configuration::add(const Configuration& other) {
  for (auto& [t, m] : other.points_) add(t, m);
}

Configuration Configuration::positive_part() const {
  Configuration out(ConfigDomain::positive);
  for (auto& [t, m] : points_)
    if (t > RealValue(t.basis())) out.add(t, m);
  return out;
}

Configuration Configuration::reflected() const {
  if (domain_ != ConfigDomain::real) throw domain_error("only configurations on the real line can be reflected");
  Configuration out(ConfigDomain::real);
  for (auto& [t, m] : points_) out.add(-t, m);
  return out;
}

} // namespace anbar
