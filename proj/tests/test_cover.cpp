#include "doctest.h"

#include "anbar/fixtures.hpp"
#include "helpers.hpp"

using namespace anbar;
using testing_support::q;

namespace {

struct Circle3 {
  SimplicialComplex kx = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}, {0, 2}});
  Cocycle c{testing_support::rational_basis()};
  Circle3() {
    c.set(0, 1, q("1/3"));
    c.set(1, 2, q("1/3"));
    c.set(2, 0, q("1/3"));
  }
};

struct Eight {
  BasisPtr theta = make_basis({std::sqrt(2.0L)});
  SimplicialComplex kx = SimplicialComplex::from_maximal(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
  Cocycle c{theta};
  explicit Eight(bool irrational = false) {
    auto v = [&](const char* a, const char* b) { return RealValue(theta, {parse_rational(a), parse_rational(b)}); };
    const char* s = irrational ? "1/3" : "0";
    const char* t = irrational ? "0" : "1/3";
    c.set(0, 1, v("1/3", "0"));
    c.set(1, 2, v("1/3", "0"));
    c.set(2, 0, v("1/3", "0"));
    c.set(0, 3, v(s, t));
    c.set(3, 4, v(s, t));
    c.set(4, 0, v(s, t));
  }
};

// Figure-eight as a single vertex with two loops cannot be simplicial; the
// wedge point is vertex 0 of two triangles.
RealValue rv(const BasisPtr& b, std::initializer_list<const char*> xs) {
  std::vector<Rational> v;
  for (auto* x : xs) v.push_back(parse_rational(x));
  return RealValue(b, v);
}

} // namespace

TEST_CASE("period lattice examples") {
  auto theta = make_basis({std::sqrt(2.0L)});
  CHECK(compute_lattice({}, theta).rank() == 0);
  auto l = compute_lattice({rv(theta, {"2", "0"}), rv(theta, {"3", "0"})}, theta);
  REQUIRE(l.rank() == 1);
  CHECK(l.basis()[0] == std::vector<Rational>{Rational(1), Rational(0)});
  auto l2 = compute_lattice({rv(theta, {"1", "0"}), rv(theta, {"0", "1"})}, theta);
  CHECK(l2.rank() == 2);
  auto l3 = compute_lattice({rv(theta, {"2/3", "0"}), rv(theta, {"1/2", "0"})}, theta);
  REQUIRE(l3.rank() == 1);
  CHECK(l3.basis()[0][0] == Rational(1, 6));
  CHECK(l3.coordinates(rv(theta, {"5/6", "0"})) == LatticePoint{5});
  CHECK_FALSE(l3.coordinates(rv(theta, {"1/7", "0"})).has_value());
}

TEST_CASE("lattice generates every period") {
  std::mt19937_64 rng(3);
  auto theta = make_basis({std::sqrt(3.0L)});
  std::uniform_int_distribution<int> num(-12, 12), den(1, 6);
  for (int t = 0; t < 50; ++t) {
    std::vector<RealValue> periods;
    for (int i = 0; i < 4; ++i) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng));
      a.canonicalize();
      b.canonicalize();
      periods.emplace_back(theta, std::vector<Rational>{a, b});
    }
    auto l = compute_lattice(periods, theta);
    CHECK(l.rank() <= 2);
    for (auto& p : periods) {
      auto n = l.coordinates(p);
      REQUIRE(n.has_value());
      CHECK(l.value_of(*n) == p);
    }
  }
}

TEST_CASE("window box") {
  WindowSpec w{1};
  CHECK(w.points(0).size() == 1);
  CHECK(w.points(1).size() == 3);
  CHECK(w.points(2).size() == 9);
  for (auto& p : WindowSpec{2}.points(2)) {
    LatticePoint m;
    for (auto x : p) m.push_back(-x);
    CHECK(WindowSpec{2}.contains(m));
  }
  CHECK_FALSE(w.contains({2, 0}));
}

TEST_CASE("circle cover at radius 1 is a path") {
  Circle3 s;
  auto cov = build_cover(s.kx, s.c, WindowSpec{1});
  CHECK(cov.lattice().rank() == 1);
  CHECK(cov.vertex_count() == 9);
  CHECK(cov.count(1) == 8);
  CHECK(cov.flagged(1).size() == 1);
  std::vector<int> degree(9, 0);
  for (auto& e : cov.cells(1)) {
    degree[e.vertices[0]]++;
    degree[e.vertices[1]]++;
  }
  CHECK(std::count(degree.begin(), degree.end(), 1) == 2);
  CHECK(std::count(degree.begin(), degree.end(), 2) == 7);
  CHECK(betti(s.kx, 1, PrimeField(2)) == 1);
}

TEST_CASE("exact cover is the base complex") {
  auto kx = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}});
  Cocycle c(testing_support::rational_basis());
  c.set(0, 1, q("1"));
  c.set(1, 2, q("-1/2"));
  for (int n : {1, 3}) {
    auto cov = build_cover(kx, c, WindowSpec{n});
    CHECK(cov.lattice().rank() == 0);
    CHECK(cov.vertex_count() == 3);
    CHECK(cov.count(1) == 2);
    CHECK(cov.flagged(1).empty());
    CHECK(cov.levels().size() == 3);
  }
}

TEST_CASE("figure-eight cover has nine wedge copies") {
  Eight e;
  auto cov = build_cover(e.kx, e.c, WindowSpec{1});
  CHECK(cov.lattice().rank() == 2);
  std::size_t wedge = 0;
  for (std::size_t v = 0; v < cov.vertex_count(); ++v)
    if (cov.vertex(v).base == 0) ++wedge;
  CHECK(wedge == 9);
  // the interior wedge copy has four neighbours in the cover
  auto center = *cov.vertex_index(0, {0, 0});
  int deg = 0;
  for (auto& c : cov.cells(1))
    if (c.vertices[0] == center || c.vertices[1] == center) ++deg;
  CHECK(deg == 4);
}

TEST_CASE("deck equivariance, local isomorphism and monotone windows") {
  for (bool irr : {false, true}) {
    Eight e(irr);
    auto cov = build_cover(e.kx, e.c, WindowSpec{2});
    std::size_t k = cov.lattice().rank();
    for (std::size_t v = 0; v < cov.vertex_count(); ++v)
      for (auto& g : WindowSpec{1}.points(k)) {
        auto w = cov.translate_vertex(v, g);
        if (!w) continue;
        CHECK(cov.vertex(*w).value - cov.vertex(v).value == cov.lattice().value_of(g));
        CHECK(cov.vertex(*w).base == cov.vertex(v).base);
      }
    // star of a cover vertex with the whole star complete matches the base star
    for (std::size_t v = 0; v < cov.vertex_count(); ++v) {
      const auto& t = cov.vertex(v).translate;
      bool interior = std::all_of(t.begin(), t.end(), [](std::int64_t x) { return std::abs(x) <= 1; });
      if (!interior) continue;
      for (int r = 1; r <= cov.dim(); ++r) {
        std::size_t up = 0, base = 0;
        for (auto& c : cov.cells(r))
          if (std::find(c.vertices.begin(), c.vertices.end(), v) != c.vertices.end()) ++up;
        for (auto& s : e.kx.simplices(r))
          if (std::find(s.begin(), s.end(), cov.vertex(v).base) != s.end()) ++base;
        CHECK(up == base);
      }
    }
    auto small = build_cover(e.kx, e.c, WindowSpec{1});
    for (int r = 0; r <= small.dim(); ++r)
      for (auto& c : small.cells(r)) CHECK(cov.cell_index(r, c.base, c.anchor).has_value());
    for (int r = 1; r <= cov.dim(); ++r) {
      auto d = cov.boundary(r, PrimeField(3));
      if (r >= 2) CHECK(cov.boundary(r - 1, PrimeField(3)).multiply(d).is_zero());
    }
  }
}

TEST_CASE("critical orbits") {
  auto kx = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}, {0, 2}});
  Cocycle c(testing_support::rational_basis());
  c.set(0, 1, q("1/3"));
  c.set(1, 2, q("1/3"));
  c.set(2, 0, q("1/3"));
  auto cov = build_cover(kx, c, WindowSpec{2});
  auto orb = critical_orbits(cov);
  REQUIRE(orb.size() == 3);
  CHECK(orb.orbits[0].rep == q("0"));
  CHECK(orb.orbits[1].rep == q("1/3"));
  CHECK(orb.orbits[2].rep == q("2/3"));
  std::size_t total = 0;
  for (auto& o : orb.orbits) total += o.realizing.size();
  CHECK(total == cov.vertex_count());

  Eight e;
  auto c8 = build_cover(e.kx, e.c, WindowSpec{1});
  auto o8 = critical_orbits(c8);
  std::size_t with_wedge = 0;
  for (auto& o : o8.orbits)
    if (std::find(o.base_vertices.begin(), o.base_vertices.end(), 0u) != o.base_vertices.end()) {
      ++with_wedge;
      CHECK(o.rep == RealValue::rational(e.theta, Rational(0)));
    }
  CHECK(with_wedge == 1);

  auto path = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}});
  Cocycle p(testing_support::rational_basis());
  p.set(0, 1, q("1"));
  p.set(1, 2, q("-1/2"));
  auto po = critical_orbits(build_cover(path, p, WindowSpec{1}));
  REQUIRE(po.size() == 3);
  CHECK(po.orbits[1].rep - po.orbits[0].rep == q("1/2"));
  CHECK(po.orbits[2].rep - po.orbits[0].rep == q("1"));
}

TEST_CASE("orbit partition on random cocycles") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    auto [kx, c] = testing_support::random_graph_cocycle(rng, 5);
    std::optional<WindowedCover> built;
    for (int n = 1; !built && n <= 12; ++n) {
      try {
        built = build_cover(kx, c, WindowSpec{n});
      } catch (const window_too_small_error&) {
      }
    }
    REQUIRE(built.has_value());
    const auto& cov = *built;
    auto orb = critical_orbits(cov);
    std::size_t total = 0;
    for (auto& o : orb.orbits) total += o.realizing.size();
    CHECK(total == cov.vertex_count());
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (std::size_t j = i + 1; j < orb.size(); ++j)
        CHECK_FALSE(cov.lattice().coordinates(orb.orbits[i].rep - orb.orbits[j].rep).has_value());
  }
}

TEST_CASE("weak tameness") {
  auto path = SimplicialComplex::from_maximal(3, {{0, 1}, {1, 2}});
  Cocycle p(testing_support::rational_basis());
  p.set(0, 1, q("1"));
  p.set(1, 2, q("-1/2"));
  auto cov = build_cover(path, p, WindowSpec{1});
  PrimeField f(2);
  auto rep = verify_weak_tameness(cov, f);
  CHECK(rep.weakly_tame);
  CHECK(rep.orbit_count == 3);
  auto row = tameness_row(cov, q("1/2"), f);
  CHECK(row.sub_dims[0] == 1);
  CHECK(tameness_row(cov, q("1/4"), f).total() == 0);
  CHECK(tameness_row(cov, q("3/4"), f).total() == 0);
  // X_<1 is two points, so H_1(X_1, X_<1) is one-dimensional
  CHECK(tameness_row(cov, q("1"), f).sub_dims[1] == 1);

  Circle3 s;
  auto cc = build_cover(s.kx, s.c, WindowSpec{3});
  CHECK(verify_weak_tameness(cc, f).weakly_tame);
  CHECK(tameness_row(cc, q("1/6"), f).total() == 0);
}

TEST_CASE("window too small") {
  // a single edge with period 1: some cell always has a complete lift at radius 1
  Circle3 s;
  CHECK_NOTHROW(build_cover(s.kx, s.c, WindowSpec{1}));
  // loop periods 2 and 3 give generator 1, and the loop edges need lattice steps of 2 and 3
  auto kx = SimplicialComplex::from_maximal(5, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}});
  Cocycle c(testing_support::rational_basis());
  c.set(0, 1, q("0"));
  c.set(1, 2, q("0"));
  c.set(2, 0, q("2"));
  c.set(0, 3, q("0"));
  c.set(3, 4, q("0"));
  c.set(4, 0, q("3"));
  CHECK_THROWS_AS(build_cover(kx, c, WindowSpec{1}), window_too_small_error);
}
