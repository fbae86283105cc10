#include "anbar/duality.hpp"

#include <map>

#include "anbar/error.hpp"

namespace anbar {

std::string pseudo_manifold_violation(const SimplicialComplex& kx) {
  int n = kx.dim();
  if (n < 1) return "complex has no simplices of positive dimension";
  std::map<Simplex, int> cofaces;
  for (auto& f : kx.simplices(n - 1)) cofaces[f] = 0;
  for (auto& s : kx.simplices(n))
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto f = s;
      f.erase(f.begin() + static_cast<long>(i));
      ++cofaces[f];
    }
  for (auto& [f, k] : cofaces) {
    if (k != 2) {
      std::string name;
      for (auto v : f) name += (name.empty() ? "" : ",") + std::to_string(v);
      return "(" + std::to_string(n - 1) + ")-simplex {" + name + "} lies in " + std::to_string(k) + " top simplices";
    }
  }
  for (auto& s : kx.maximal_simplices())
    if (static_cast<int>(s.size()) != n + 1) return "complex is not pure";
  return {};
}

bool DualityResult::all_pass() const {
  for (auto& r : rows)
    if (!r.delta_ok || !r.gamma_ok) return false;
  return true;
}

DualityResult duality_check(const SimplicialComplex& kx, const Cocycle& c, const StabilizeOptions& opt) {
  if (auto why = pseudo_manifold_violation(kx); !why.empty()) throw input_error("not a pseudo-manifold: " + why);
  DualityResult res;
  res.n = kx.dim();
  auto o = opt;
  o.r_max = res.n;
  res.forward = stabilize(kx, c, o);
  res.backward = stabilize(kx, -c, o);
  for (int r = 0; r <= res.n; ++r) {
    DualityRow row;
    row.degree = r;
    row.delta_ok = res.forward.degree(r).delta == res.forward.degree(res.n - r).delta.reflected();
    const auto& lhs = res.forward.degree(r).gamma;
    int dual = res.n - r - 1;
    row.gamma_ok = dual < 0 ? lhs.empty() : lhs == res.backward.degree(dual).gamma;
    res.rows.push_back(row);
  }
  return res;
}

} // namespace anbar
