#include "anbar/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include "anbar/error.hpp"

namespace anbar {

namespace {

std::vector<RealValue> expand(const Configuration& c) {
  std::vector<RealValue> out;
  for (auto& [t, m] : c.points())
    for (std::size_t i = 0; i < m; ++i) out.push_back(t);
  return out;
}

double gap(const RealValue& a, const RealValue& b) {
  if (a == b) return 0;
  return static_cast<double>(std::fabs(a.embed_long() - b.embed_long()));
}

// Perfect matching in a bipartite graph given by adjacency lists (Kuhn).
bool has_perfect_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right) {
  std::vector<std::size_t> match(right, SIZE_MAX);
  for (std::size_t u = 0; u < adj.size(); ++u) {
    std::vector<char> seen(right, 0);
    std::function<bool(std::size_t)> augment = [&](std::size_t x) {
      for (auto y : adj[x]) {
        if (seen[y]) continue;
        seen[y] = 1;
        if (match[y] == SIZE_MAX || augment(match[y])) {
          match[y] = x;
          return true;
        }
      }
      return false;
    };
    if (!augment(u)) return false;
  }
  return true;
}

} // namespace

double matching_distance(const Configuration& c1, const Configuration& c2, MatchingRegime regime) {
  if (c1.domain() != c2.domain()) throw contract_error("matching_distance: configurations have different domains");
  auto a = expand(c1), b = expand(c2);
  std::size_t n = a.size(), m = b.size();
  if (regime == MatchingRegime::collision && n != m) return std::numeric_limits<double>::infinity();
  if (n == 0 && m == 0) return 0;

  // Candidate values of the optimal threshold.
  std::vector<double> cand{0};
  for (auto& x : a)
    for (auto& y : b) cand.push_back(gap(x, y));
  if (regime == MatchingRegime::bottleneck) {
    for (auto& x : a) cand.push_back(std::fabs(x.embed()));
    for (auto& y : b) cand.push_back(std::fabs(y.embed()));
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto feasible = [&](double eps) {
    if (regime == MatchingRegime::collision) {
      std::vector<std::vector<std::size_t>> adj(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (gap(a[i], b[j]) <= eps) adj[i].push_back(j);
      return has_perfect_matching(adj, m);
    }
    // Left: a_0..a_{n-1}, then a deletion slot per b_j. Right: b_0..b_{m-1},
    // then a deletion slot per a_i. Slots pair with each other freely.
    std::vector<std::vector<std::size_t>> adj(n + m);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j)
        if (gap(a[i], b[j]) <= eps) adj[i].push_back(j);
      if (std::fabs(a[i].embed()) <= eps) adj[i].push_back(m + i);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (std::fabs(b[j].embed()) <= eps) adj[n + j].push_back(j);
      for (std::size_t i = 0; i < n; ++i) adj[n + j].push_back(m + i);
    }
    return has_perfect_matching(adj, n + m);
  };

  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    auto mid = (lo + hi) / 2;
    if (feasible(cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

Cocycle exact_perturbation(const SimplicialComplex& kx, const Cocycle& c, const Rational& epsilon, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-1000, 1000);
  std::size_t nv = kx.vertex_count();
  std::vector<Rational> u(nv);
  for (auto& x : u) x = Rational(dist(rng), 1000);
  if (nv >= 2) {
    // Guarantee a nonzero spread.
    u[0] = -1;
    u[nv - 1] = 1;
  }
  auto [lo, hi] = std::minmax_element(u.begin(), u.end());
  Rational spread = *hi - *lo;
  std::vector<RealValue> g;
  for (auto& x : u) {
    Rational v = spread == 0 ? Rational(0) : Rational(x * 2 * epsilon / spread);
    v.canonicalize();
    g.push_back(RealValue::rational(c.basis(), v));
  }
  return c + Cocycle::coboundary(kx, g);
}

StabilityResult stability_experiment(const SimplicialComplex& kx, const Cocycle& c, const std::string& epsilon,
                                     std::size_t trials, std::uint64_t seed, const StabilizeOptions& opt) {
  Rational eps = parse_rational(epsilon);
  if (eps < 0) throw input_error("perturbation scale must be nonnegative");
  // mpq_get_d truncates; num/den divides with correct rounding for small terms
  double eps_d = eps.get_num().get_d() / eps.get_den().get_d();
  StabilityResult res;
  auto base = stabilize(kx, c, opt);
  if (!base.stabilized) res.warnings.push_back("unperturbed input did not stabilize");
  std::vector<std::uint64_t> seeds(trials);
  std::mt19937_64 master(seed);
  for (auto& s : seeds) s = master();

  for (std::size_t t = 0; t < trials; ++t) {
    auto c2 = exact_perturbation(kx, c, eps, seeds[t]);
    auto din = d_flat(kx, c, c2);
    if (!din) {
      ++res.rejected;
      continue;
    }
    auto rep = stabilize(kx, c2, opt);
    if (!rep.stabilized) res.warnings.push_back("trial " + std::to_string(t) + " did not stabilize");
    for (std::size_t r = 0; r < base.degrees.size(); ++r) {
      StabilityRow row;
      row.trial = t;
      row.epsilon = eps_d;
      row.degree = static_cast<int>(r);
      row.d_input = *din;
      row.d_delta = matching_distance(base.degrees[r].delta, rep.degree(static_cast<int>(r)).delta, MatchingRegime::collision);
      row.d_gamma = matching_distance(base.degrees[r].gamma, rep.degree(static_cast<int>(r)).gamma, MatchingRegime::bottleneck);
      row.modulus = eps_d > 0 ? std::max(row.d_delta, row.d_gamma) / eps_d : 0;
      res.max_modulus = std::max(res.max_modulus, row.modulus);
      res.rows.push_back(row);
    }
  }
  return res;
}

namespace {

// shortest representation that reads back to the same double
std::string shortest(double x) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

} // namespace

std::string stability_csv(const StabilityResult& res) {
  std::ostringstream os;
  os << "trial,epsilon,degree,d_delta,d_gamma,modulus\n";
  for (auto& r : res.rows)
    os << r.trial << ',' << shortest(r.epsilon) << ',' << r.degree << ',' << shortest(r.d_delta) << ','
       << shortest(r.d_gamma) << ',' << shortest(r.modulus) << '\n';
  return os.str();
}

} // namespace anbar
