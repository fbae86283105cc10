#include "anbar/fixtures.hpp"

#include "anbar/error.hpp"

namespace anbar {

namespace {

// Triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7: the minimal torus.
std::vector<Simplex> torus_triangles() {
  std::vector<Simplex> out;
  for (Vertex i = 0; i < 7; ++i) {
    out.push_back({i, (i + 1) % 7, (i + 3) % 7});
    out.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return out;
}

// Exact parts: distinct values for the height function, a larger generic
// perturbation of the integral class so that critical points exist.
const char* const torus_g[7] = {"0", "3/10", "7/10", "1/10", "9/10", "1/2", "4/5"};
const char* const torus_g_integral[7] = {"0", "-22/25", "24/31", "-26/15", "-23/22", "6/7", "0"};

json torus(bool integral) {
  json j;
  j["theta"] = json::array();
  j["vertex_count"] = 7;
  j["max_simplices"] = torus_triangles();
  j["cocycle"] = json::object();
  auto sc = SimplicialComplex::from_maximal(7, torus_triangles());
  for (auto& e : sc.simplices(1)) {
    Vertex x = e[0], y = e[1];
    Rational v = parse_rational(integral ? torus_g_integral[y] : torus_g[y]) -
                 parse_rational(integral ? torus_g_integral[x] : torus_g[x]);
    if (integral) {
      int step = static_cast<int>(y - x); // 1..6
      if (step > 3) step -= 7;
      v += Rational(step, 7);
    }
    v.canonicalize();
    j["cocycle"][std::to_string(x) + "-" + std::to_string(y)] = {to_string(v)};
  }
  return j;
}

} // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"circle_exact",  "circle_integral", "path_w",      "figure_eight_irrational",
                                                 "torus_integral", "torus_exact",     "square_cloud"};
  return names;
}

bool fixture_is_metric(const std::string& name) { return name == "square_cloud"; }

json fixture_json(const std::string& name) {
  if (name == "circle_exact") {
    // Height function on a 4-cycle: h = (0, 1/3, 1, 2/3).
    return {{"theta", json::array()},
            {"max_simplices", {{0, 1}, {1, 2}, {2, 3}, {0, 3}}},
            {"cocycle", {{"0-1", {"1/3"}}, {"1-2", {"2/3"}}, {"2-3", {"-1/3"}}, {"0-3", {"2/3"}}}}};
  }
  if (name == "circle_integral") {
    return {{"theta", json::array()},
            {"max_simplices", {{0, 1}, {1, 2}, {0, 2}}},
            {"cocycle", {{"0-1", {"1/3"}}, {"1-2", {"1/3"}}, {"0-2", {"-1/3"}}}}};
  }
  if (name == "path_w") {
    return {{"theta", json::array()}, {"max_simplices", {{0, 1}, {1, 2}}}, {"cocycle", {{"0-1", {"1"}}, {"1-2", {"-1/2"}}}}};
  }
  if (name == "figure_eight_irrational") {
    // Two hollow triangles glued at vertex 0; periods 1 and √2.
    return {{"theta", {1.4142135623730951}},
            {"max_simplices", {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {3, 4}, {0, 4}}},
            {"cocycle",
             {{"0-1", {"1/3", "0"}},
              {"1-2", {"1/3", "0"}},
              {"0-2", {"-1/3", "0"}},
              {"0-3", {"0", "1/3"}},
              {"3-4", {"0", "1/3"}},
              {"0-4", {"0", "-1/3"}}}}};
  }
  if (name == "torus_integral") return torus(true);
  if (name == "torus_exact") return torus(false);
  if (name == "square_cloud") {
    // Unit square; f goes once around the boundary with total 1.
    return {{"theta", json::array()},
            {"points", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
            {"metric", "euclidean"},
            {"pairs", {{"0-1", {"1/4"}}, {"1-2", {"1/4"}}, {"2-3", {"1/4"}}, {"0-3", {"-1/4"}}}}};
  }
  throw input_error("unknown fixture '" + name + "'");
}

CocycleInput fixture_input(const std::string& name) {
  if (fixture_is_metric(name)) throw input_error("fixture '" + name + "' is metric data, not a cocycle");
  return parse_cocycle_json(fixture_json(name).dump());
}

} // namespace anbar
