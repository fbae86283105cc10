#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "anbar/duality.hpp"
#include "anbar/fixtures.hpp"
#include "anbar/io.hpp"
#include "helpers.hpp"

using namespace anbar;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("anbar_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(ANBAR_CLI) + " " + args + " >" + (log / "stdout.txt").string() + " 2>" +
                    (log / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

} // namespace

TEST_CASE("cocycle parsing") {
  auto in = parse_cocycle_json(R"({"max_simplices": [[0,1],[1,2],[0,2]],
                                   "theta": [1.4142135623730951],
                                   "cocycle": {"0-1": ["1/3", "0"], "1-2": "1/3", "2-0": [-0.5, 1]}})");
  CHECK(in.complex.count(1) == 3);
  CHECK(in.cocycle.value(0, 1).coords() == std::vector<Rational>{Rational(1, 3), Rational(0)});
  CHECK(in.cocycle.value(1, 2).coords() == std::vector<Rational>{Rational(1, 3), Rational(0)});
  CHECK(in.cocycle.value(0, 2).coords() == std::vector<Rational>{Rational(1, 2), Rational(-1)});

  // JSON numbers are read as the decimal they print as, not the binary double
  auto dec = parse_cocycle_json(R"({"max_simplices": [[0,1]], "cocycle": {"0-1": 0.1}})");
  CHECK(dec.cocycle.value(0, 1).coords()[0] == Rational(1, 10));

  auto bad = [](const std::string& text, const std::string& needle) {
    try {
      parse_cocycle_json(text);
      FAIL("accepted malformed input: " << text);
    } catch (const input_error& e) {
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  bad(R"({"max_simplices": [[0,1],[1,2]], "cocycle": {"0-1": "1"}})", "1-2");
  bad(R"({"max_simplices": [[0,1]], "cocycle": {"0-1": "1", "0-5": "2"}})", "0-5");
  bad(R"({"max_simplices": [[0,1]], "cocycle": {"0_1": "1"}})", "0_1");
  bad(R"({"max_simplices": [[0,1]], "cocycle": {"0-1": ["1", "2"]}})", "0-1");
  bad(R"({"max_simplices": [[0,1,2]], "cocycle": {"0-1": "1", "1-2": "1", "0-2": "1"}})", "0");
  bad(R"({"max_simplices": [[0,1]], "cocycle": {"0-1": "1/0"}})", "");
  bad(R"({"max_simplices": [[0,1]], "cocycle": {"0-1": "abc"}})", "abc");
  bad("{\"max_simplices\": [[0,1]],\n \"cocycle\": {", ":2:");
  CHECK_THROWS_AS(parse_rational("1.2.3"), input_error);
  CHECK(parse_rational("2.5e-1") == Rational(1, 4));
  CHECK(parse_rational(" -3/6 ") == Rational(-1, 2));
}

TEST_CASE("fixtures round-trip through report JSON") {
  for (auto& name : fixture_names()) {
    if (fixture_is_metric(name)) continue;
    auto in = fixture_input(name);
    auto again = parse_cocycle_json(dump(cocycle_to_json(in.complex, in.cocycle, in.theta_text)));
    CHECK(again.complex.maximal_simplices() == in.complex.maximal_simplices());
    for (auto& e : in.complex.simplices(1)) CHECK(again.cocycle.value(e[0], e[1]) == in.cocycle.value(e[0], e[1]));

    auto rep = stabilize(in.complex, in.cocycle, {});
    auto j = report_to_json(rep, DeltaSign::formula, in.theta_text, json{{"command", "test"}});
    CHECK(j["format"] == "anbar-report/1");
    CHECK(j["run_config"]["command"] == "test");
    CHECK(j["window"]["radius"] == rep.window_radius);
    DeltaSign sign;
    auto back = report_from_json(parse_json_text(dump(j), "report"), &sign);
    CHECK(sign == DeltaSign::formula);
    CHECK(same_barcodes(rep, back));
    CHECK(dump(report_to_json(back, sign, in.theta_text, json{{"command", "test"}})) == dump(j));
  }
}

TEST_CASE("figure sign convention is stored in the report") {
  auto in = fixture_input("path_w");
  auto rep = stabilize(in.complex, in.cocycle, {});
  auto j = report_to_json(rep, DeltaSign::figure, in.theta_text, json::object());
  CHECK(j["sign_convention"] == "figure");
  CHECK(j["degrees"][0]["delta"][0]["t_coords"][0] == "-1");
  DeltaSign sign;
  auto back = report_from_json(j, &sign);
  CHECK(sign == DeltaSign::figure);
  CHECK(same_barcodes(rep, back));
}

TEST_CASE("configuration JSON") {
  auto b = testing_support::rational_basis();
  Configuration c(ConfigDomain::positive);
  c.add(RealValue::rational(b, Rational(1, 3)), 2);
  auto j = configuration_to_json(c);
  CHECK(j[0]["mult"] == 2);
  CHECK(j[0]["t_coords"][0] == "1/3");
  CHECK(configuration_from_json(j, ConfigDomain::positive, b) == c);
  CHECK_THROWS_AS(report_from_json(json{{"format", "other"}}), input_error);
}

TEST_CASE("duality on the tori") {
  for (const char* name : {"torus_exact", "torus_integral"}) {
    auto in = fixture_input(name);
    CHECK(pseudo_manifold_violation(in.complex).empty());
    auto res = duality_check(in.complex, in.cocycle, {});
    CHECK(res.n == 2);
    CHECK(res.rows.size() == 3);
    CHECK(res.all_pass());
  }
  auto torus = fixture_input("torus_exact");
  auto res = duality_check(torus.complex, torus.cocycle, {});
  for (int r = 0; r <= 2; ++r) CHECK(res.forward.degree(r).beta == res.forward.degree(2 - r).beta);
  auto eight = fixture_input("figure_eight_irrational");
  CHECK_FALSE(pseudo_manifold_violation(eight.complex).empty());
}

TEST_CASE("command line") {
  auto dir = scratch("cli");
  REQUIRE(run_cli("generate all --out " + (dir / "fx").string(), dir) == 0);
  for (auto& name : fixture_names()) CHECK(fs::exists(dir / "fx" / (name + ".json")));

  REQUIRE(run_cli("compute " + (dir / "fx" / "path_w.json").string() + " --out " + (dir / "a").string() + " --plot", dir) == 0);
  auto rep = read_json_file(dir / "a" / "report.json");
  CHECK(rep["degrees"][0]["beta"] == 1);
  CHECK(rep["degrees"][0]["rho"] == 1);
  CHECK(rep["run_config"]["command"] == "compute");
  CHECK(fs::exists(dir / "a" / "degree_0.svg"));
  REQUIRE(run_cli("compute " + (dir / "fx" / "path_w.json").string() + " --out " + (dir / "a").string(), dir) == 0);
  auto once = read_text_file(dir / "a" / "report.json");
  REQUIRE(run_cli("compute " + (dir / "fx" / "path_w.json").string() + " --out " + (dir / "a").string(), dir) == 0);
  CHECK(read_text_file(dir / "a" / "report.json") == once);

  CHECK(run_cli("compute " + (dir / "fx" / "circle_integral.json").string() + " --out " + (dir / "b").string(), dir) == 0);
  CHECK(run_cli("plot " + (dir / "b" / "report.json").string() + " --out " + (dir / "c").string(), dir) == 0);
  CHECK(fs::exists(dir / "c" / "degree_1.svg"));

  write_text_file(dir / "bad.json", R"({"max_simplices": [[0,1],[1,2]], "cocycle": {"0-1": "1"}})");
  CHECK(run_cli("compute " + (dir / "bad.json").string(), dir) == 2);
  CHECK(read_text_file(dir / "stderr.txt").find("1-2") != std::string::npos);
  CHECK(run_cli("compute " + (dir / "missing.json").string(), dir) == 2);
  CHECK(run_cli("compute " + (dir / "fx" / "path_w.json").string() + " --field 4", dir) == 2);
  CHECK(run_cli("frobnicate", dir) == 2);

  CHECK(run_cli("duality " + (dir / "fx" / "torus_integral.json").string() + " --manifold", dir) == 0);
  CHECK(run_cli("duality " + (dir / "fx" / "figure_eight_irrational.json").string() + " --manifold", dir) == 2);

  CHECK(run_cli("stability " + (dir / "fx" / "path_w.json").string() + " --perturbation 0 --trials 2 --out " + (dir / "s").string(), dir) == 0);
  auto csv = read_text_file(dir / "s" / "stability.csv");
  CHECK(csv.rfind("trial,epsilon,degree,d_delta,d_gamma,modulus", 0) == 0);
  CHECK(run_cli("stability " + (dir / "fx" / "circle_exact.json").string() + " --against " + (dir / "fx" / "circle_integral.json").string(), dir) == 2);

  CHECK(run_cli("geometrize " + (dir / "fx" / "square_cloud.json").string() + " --epsilon 0.5 1.2 --out " + (dir / "g").string(), dir) == 0);
  CHECK(fs::exists(dir / "g" / "scale_1.json"));
  CHECK(run_cli("compute " + (dir / "fx" / "figure_eight_irrational.json").string() + " --window-max 1", dir) == 1);
  fs::remove_all(dir);
}
