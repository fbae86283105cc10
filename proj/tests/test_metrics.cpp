#include "doctest.h"

#include <limits>

#include "anbar/fixtures.hpp"
#include "anbar/metrics.hpp"
#include "helpers.hpp"

using namespace anbar;
using testing_support::q;

namespace {

Configuration conf(std::initializer_list<std::pair<const char*, std::size_t>> pts,
                   ConfigDomain dom = ConfigDomain::real) {
  Configuration c(dom);
  for (auto& [t, m] : pts) c.add(q(t), m);
  return c;
}

// Brute force over all bijections of the expanded point lists.
double collision_brute(const Configuration& a, const Configuration& b) {
  std::vector<double> x, y;
  for (auto& [t, m] : a.points()) x.insert(x.end(), m, t.embed());
  for (auto& [t, m] : b.points()) y.insert(y.end(), m, t.embed());
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(y.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return x.empty() ? 0 : best;
}

Configuration random_conf(std::mt19937_64& rng, std::size_t mass, ConfigDomain dom = ConfigDomain::real) {
  std::uniform_int_distribution<int> num(dom == ConfigDomain::real ? -20 : 1, 20);
  Configuration c(dom);
  for (std::size_t i = 0; i < mass; ++i) c.add(RealValue::rational(testing_support::rational_basis(), Rational(num(rng), 8)));
  return c;
}

} // namespace

TEST_CASE("configuration basics") {
  auto c = conf({{"1/2", 1}, {"-1", 2}});
  c.add(q("1/2"));
  CHECK(c.mass() == 4);
  CHECK(c.at(q("1/2")) == 2);
  CHECK(c.at(q("3")) == 0);
  CHECK(c.points().front().first == q("-1"));
  CHECK(c.positive_part().mass() == 2);
  CHECK(c.reflected().at(q("1")) == 2);
  Configuration p(ConfigDomain::positive);
  CHECK_THROWS_AS(p.add(q("0")), domain_error);
  CHECK_THROWS_AS(p.add(q("-1")), domain_error);
  c.add(q("7"), 0);
  CHECK(c.mass() == 4);
}

TEST_CASE("matching distance examples") {
  auto a = conf({{"0", 1}, {"1", 2}});
  CHECK(matching_distance(a, a, MatchingRegime::collision) == 0);
  CHECK(matching_distance(conf({{"0", 1}}), conf({{"3/10", 1}}), MatchingRegime::collision) == doctest::Approx(0.3));
  auto p = conf({{"1/10", 1}}, ConfigDomain::positive);
  Configuration empty(ConfigDomain::positive);
  CHECK(matching_distance(p, empty, MatchingRegime::bottleneck) == doctest::Approx(0.1));
  CHECK(std::isinf(matching_distance(conf({{"0", 1}}), Configuration(ConfigDomain::real), MatchingRegime::collision)));
  CHECK_THROWS_AS(matching_distance(a, empty, MatchingRegime::collision), contract_error);
  // bottleneck prefers deletion when it is cheaper than matching
  auto x = conf({{"1/10", 1}, {"5", 1}}, ConfigDomain::positive);
  auto y = conf({{"5", 1}}, ConfigDomain::positive);
  CHECK(matching_distance(x, y, MatchingRegime::bottleneck) == doctest::Approx(0.1));
  auto u = conf({{"1", 1}}, ConfigDomain::positive);
  auto v = conf({{"2", 1}}, ConfigDomain::positive);
  CHECK(matching_distance(u, v, MatchingRegime::bottleneck) == doctest::Approx(1.0));
  auto w = conf({{"4", 1}}, ConfigDomain::positive);
  CHECK(matching_distance(u, w, MatchingRegime::bottleneck) == doctest::Approx(3.0));
  auto s = conf({{"3", 1}}, ConfigDomain::positive);
  auto z = conf({{"9", 1}}, ConfigDomain::positive);
  CHECK(matching_distance(s, z, MatchingRegime::bottleneck) == doctest::Approx(6.0));
  auto s2 = conf({{"1/2", 1}}, ConfigDomain::positive);
  auto z2 = conf({{"9/5", 1}}, ConfigDomain::positive);
  CHECK(matching_distance(s2, z2, MatchingRegime::bottleneck) == doctest::Approx(1.3));
}

TEST_CASE("collision distance agrees with brute force and is a metric") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::size_t> mass(0, 5);
  for (int t = 0; t < 120; ++t) {
    std::size_t m = mass(rng);
    auto a = random_conf(rng, m), b = random_conf(rng, m), c = random_conf(rng, m);
    double ab = matching_distance(a, b, MatchingRegime::collision);
    double ba = matching_distance(b, a, MatchingRegime::collision);
    double ac = matching_distance(a, c, MatchingRegime::collision);
    double bc = matching_distance(b, c, MatchingRegime::collision);
    CHECK(ab == doctest::Approx(collision_brute(a, b)));
    CHECK(ab == ba);
    CHECK(ac <= ab + bc + 1e-12);
    CHECK((ab == 0) == (a == b));
    CHECK(matching_distance(a, a, MatchingRegime::collision) == 0);
  }
}

TEST_CASE("bottleneck distance is a metric and measures distance to zero") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::size_t> mass(0, 4);
  Configuration empty(ConfigDomain::positive);
  for (int t = 0; t < 120; ++t) {
    auto a = random_conf(rng, mass(rng), ConfigDomain::positive);
    auto b = random_conf(rng, mass(rng), ConfigDomain::positive);
    auto c = random_conf(rng, mass(rng), ConfigDomain::positive);
    double ab = matching_distance(a, b, MatchingRegime::bottleneck);
    CHECK(ab == matching_distance(b, a, MatchingRegime::bottleneck));
    CHECK(matching_distance(a, c, MatchingRegime::bottleneck) <= ab + matching_distance(b, c, MatchingRegime::bottleneck) + 1e-12);
    CHECK((ab == 0) == (a == b));
    double far = 0;
    for (auto& [x, m] : a.points()) far = std::max(far, x.embed());
    CHECK(matching_distance(a, empty, MatchingRegime::bottleneck) == doctest::Approx(far));
  }
}

TEST_CASE("exact perturbations") {
  auto in = fixture_input("torus_exact");
  for (const char* e : {"1/10", "1/100"}) {
    auto c2 = exact_perturbation(in.complex, in.cocycle, parse_rational(e), 5);
    CHECK(check_cocycle(in.complex, c2).valid);
    auto d = d_flat(in.complex, in.cocycle, c2);
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(parse_rational(e).get_d()));
  }
  auto same = exact_perturbation(in.complex, in.cocycle, Rational(0), 5);
  CHECK(*d_flat(in.complex, in.cocycle, same) == 0);
}

TEST_CASE("path perturbation example") {
  auto in = fixture_input("path_w");
  auto base = stabilize(in.complex, in.cocycle, {});
  // raise the potential of the last vertex by 1/10
  auto u = testing_support::lift({Rational(0), Rational(0), Rational(1, 10)});
  auto moved = in.cocycle + Cocycle::coboundary(in.complex, u);
  CHECK(*d_flat(in.complex, in.cocycle, moved) == doctest::Approx(0.05));
  auto rep = stabilize(in.complex, moved, {});
  CHECK(matching_distance(base.degree(0).gamma, rep.degree(0).gamma, MatchingRegime::bottleneck) <= 0.1 + 1e-12);
}

TEST_CASE("stability experiment") {
  auto in = fixture_input("path_w");
  auto zero = stability_experiment(in.complex, in.cocycle, "0", 3, 1, {});
  for (auto& row : zero.rows) {
    CHECK(row.d_delta == 0);
    CHECK(row.d_gamma == 0);
  }
  std::vector<double> maxima;
  for (const char* e : {"0.1", "0.05", "0.01", "0.005"}) {
    auto res = stability_experiment(in.complex, in.cocycle, e, 10, 42, {});
    CHECK(res.rejected == 0);
    double mx = 0;
    for (auto& row : res.rows) {
      CHECK(row.d_input == doctest::Approx(row.epsilon));
      mx = std::max({mx, row.d_delta, row.d_gamma});
    }
    CHECK(res.max_modulus <= 4 + 1e-9);
    maxima.push_back(mx);
  }
  for (std::size_t i = 1; i < maxima.size(); ++i) CHECK(maxima[i] <= maxima[i - 1]);
  auto csv = stability_csv(stability_experiment(in.complex, in.cocycle, "0.1", 2, 9, {}));
  CHECK(csv.rfind("trial,epsilon,degree,d_delta,d_gamma,modulus\n", 0) == 0);
  CHECK(csv == stability_csv(stability_experiment(in.complex, in.cocycle, "0.1", 2, 9, {})));
}
