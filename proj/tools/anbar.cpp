// anbar: barcodes of closed one-forms given as simplicial cocycles.
//
// Exit codes: 0 success, 1 computation warning or failure (non-stabilized
// window, precision collision), 2 input error.

#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "anbar/duality.hpp"
#include "anbar/error.hpp"
#include "anbar/fixtures.hpp"
#include "anbar/geometrize.hpp"
#include "anbar/io.hpp"
#include "anbar/metrics.hpp"

namespace fs = std::filesystem;
using namespace anbar;

namespace {

struct Shared {
  std::uint32_t field = 2;
  int window = 1;
  int window_max = 6;
  double tol = 1e-9;
  std::string delta_sign = "formula";
  std::uint64_t seed = 1;
  std::string out;
  int degrees = -1;
};

void add_shared(CLI::App* cmd, Shared& s) {
  cmd->add_option("--field", s.field, "prime p of the coefficient field Z/p")->capture_default_str();
  cmd->add_option("--window", s.window, "starting window radius")->capture_default_str();
  cmd->add_option("--window-max", s.window_max, "largest window radius tried")->capture_default_str();
  cmd->add_option("--tol", s.tol, "collision tolerance for float embeddings")->capture_default_str();
  cmd->add_option("--delta-sign", s.delta_sign, "location convention for delta")
      ->check(CLI::IsMember({"formula", "figure"}))
      ->capture_default_str();
  cmd->add_option("--seed", s.seed, "random seed")->capture_default_str();
  cmd->add_option("--out", s.out, "output directory (stdout when omitted)");
  cmd->add_option("--degrees", s.degrees, "highest degree reported (default: dimension)");
}

void validate(const Shared& s) {
  if (!PrimeField::is_prime(s.field)) throw input_error("--field " + std::to_string(s.field) + " is not prime");
  if (s.window < 0 || s.window_max < s.window) throw input_error("need 0 <= --window <= --window-max");
  if (!(s.tol > 0)) throw input_error("--tol must be positive");
}

StabilizeOptions options(const Shared& s) {
  StabilizeOptions o;
  o.field = s.field;
  o.window_start = s.window;
  o.window_max = s.window_max;
  o.r_max = s.degrees;
  return o;
}

DeltaSign sign_of(const Shared& s) { return s.delta_sign == "figure" ? DeltaSign::figure : DeltaSign::formula; }

json run_config(const std::string& command, const std::vector<std::string>& inputs, const Shared& s,
                const json& extra = json::object()) {
  json j = {{"command", command},
            {"inputs", inputs},
            {"field", s.field},
            {"degrees", s.degrees},
            {"window_start", s.window},
            {"window_max", s.window_max},
            {"tolerance", s.tol},
            {"delta_sign", s.delta_sign},
            {"seed", s.seed},
            {"out", s.out}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  return j;
}

void emit(const Shared& s, const std::string& name, const std::string& text) {
  if (s.out.empty())
    std::cout << text;
  else
    write_text_file(fs::path(s.out) / name, text);
}

void warn_all(const std::vector<std::string>& warnings) {
  for (auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

int cmd_compute(const Shared& s, const std::string& input, bool plot, bool dump_cover) {
  validate(s);
  auto in = load_cocycle_file(input, s.tol);
  warn_all(in.warnings);
  auto rep = stabilize(in.complex, in.cocycle, options(s));
  auto j = report_to_json(rep, sign_of(s), in.theta_text, run_config("compute", {input}, s));
  emit(s, "report.json", dump(j));
  if (plot) {
    if (s.out.empty()) throw input_error("--plot needs --out");
    for (auto& d : rep.degrees) write_text_file(fs::path(s.out) / ("degree_" + std::to_string(d.degree) + ".svg"), degree_svg(d, sign_of(s)));
  }
  if (dump_cover) {
    if (s.out.empty()) throw input_error("--dump-cover needs --out");
    auto comp = in.complex.components();
    if (std::any_of(comp.begin(), comp.end(), [](std::size_t c) { return c != 0; }))
      std::cerr << "warning: cover dump skipped for a disconnected complex\n";
    else
      write_text_file(fs::path(s.out) / "cover.json", dump(cover_to_json(build_cover(in.complex, in.cocycle, WindowSpec{rep.window_radius}))));
  }
  warn_all(rep.warnings);
  return rep.stabilized ? 0 : 1;
}

int cmd_duality(const Shared& s, const std::string& input, bool manifold) {
  validate(s);
  if (!manifold) throw input_error("duality requires --manifold (the input must be a closed triangulated manifold)");
  auto in = load_cocycle_file(input, s.tol);
  warn_all(in.warnings);
  auto res = duality_check(in.complex, in.cocycle, options(s));
  json j;
  j["run_config"] = run_config("duality", {input}, s);
  j["n"] = res.n;
  j["rows"] = json::array();
  std::ostringstream table;
  table << "degree  delta_r(t)=delta_{n-r}(-t)  gamma_r(t)=gamma^{-w}_{n-r-1}(t)\n";
  for (auto& r : res.rows) {
    j["rows"].push_back({{"degree", r.degree}, {"delta", r.delta_ok}, {"gamma", r.gamma_ok}});
    table << r.degree << "       " << (r.delta_ok ? "pass" : "FAIL") << "                        "
          << (r.gamma_ok ? "pass" : "FAIL") << "\n";
  }
  j["pass"] = res.all_pass();
  j["stabilized"] = res.forward.stabilized && res.backward.stabilized;
  std::cerr << table.str();
  emit(s, "duality.json", dump(j));
  warn_all(res.forward.warnings);
  warn_all(res.backward.warnings);
  if (!res.all_pass()) return 1;
  return res.forward.stabilized && res.backward.stabilized ? 0 : 1;
}

int cmd_stability(const Shared& s, const std::string& input, const std::string& eps, std::size_t trials,
                  const std::string& against) {
  validate(s);
  auto in = load_cocycle_file(input, s.tol);
  warn_all(in.warnings);
  if (!against.empty()) {
    auto other = load_cocycle_file(against, s.tol);
    if (!(other.complex == in.complex)) throw input_error("perturbed input lives on a different complex");
    if (!d_flat(in.complex, in.cocycle, other.cocycle))
      throw input_error("rejected: the perturbation changes the cohomology class");
    auto a = stabilize(in.complex, in.cocycle, options(s));
    auto b = stabilize(other.complex, other.cocycle, options(s));
    double din = *d_flat(in.complex, in.cocycle, other.cocycle);
    StabilityResult res;
    for (std::size_t r = 0; r < a.degrees.size(); ++r) {
      StabilityRow row;
      row.epsilon = din;
      row.degree = static_cast<int>(r);
      row.d_input = din;
      row.d_delta = matching_distance(a.degrees[r].delta, b.degree(static_cast<int>(r)).delta, MatchingRegime::collision);
      row.d_gamma = matching_distance(a.degrees[r].gamma, b.degree(static_cast<int>(r)).gamma, MatchingRegime::bottleneck);
      row.modulus = din > 0 ? std::max(row.d_delta, row.d_gamma) / din : 0;
      res.rows.push_back(row);
    }
    emit(s, "stability.csv", stability_csv(res));
    return 0;
  }
  auto res = stability_experiment(in.complex, in.cocycle, eps, trials, s.seed, options(s));
  emit(s, "stability.csv", stability_csv(res));
  warn_all(res.warnings);
  std::cerr << "max modulus " << res.max_modulus << " (4 is the empirical bound under test)\n";
  return res.warnings.empty() ? 0 : 1;
}

int cmd_geometrize(const Shared& s, const std::string& input, const std::vector<double>& scales, const std::string& metric,
                   const std::string& pairs_csv, const std::vector<std::string>& theta, int dim_cap) {
  validate(s);
  auto md = pairs_csv.empty() ? load_metric_file(input, metric) : load_metric_csv(input, pairs_csv, theta);
  auto em = epsilon_max(md);
  std::cerr << "eps(f,d) = " << (em.value ? std::to_string(*em.value) : std::string("unbounded")) << "\n";
  auto runs = geometrize_pipeline(md, scales, options(s), dim_cap);
  json all = json::array();
  bool stable = true;
  std::vector<std::string> inputs{input};
  if (!pairs_csv.empty()) inputs.push_back(pairs_csv);
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto j = report_to_json(runs[i].report, sign_of(s), md.theta_text,
                            run_config("geometrize", inputs, s, {{"epsilon", runs[i].epsilon}, {"dim_cap", dim_cap}}));
    j["epsilon"] = runs[i].epsilon;
    j["epsilon_max"] = em.value ? json(*em.value) : json("unbounded");
    stable = stable && runs[i].report.stabilized;
    warn_all(runs[i].report.warnings);
    if (s.out.empty())
      all.push_back(j);
    else
      write_text_file(fs::path(s.out) / ("scale_" + std::to_string(i) + ".json"), dump(j));
  }
  if (s.out.empty()) std::cout << dump(all);
  return stable ? 0 : 1;
}

int cmd_generate(const std::string& name, const std::string& out) {
  std::vector<std::string> names;
  if (name == "all")
    names = fixture_names();
  else
    names = {name};
  for (auto& n : names) {
    auto j = fixture_json(n);
    if (out.empty())
      std::cout << dump(j);
    else
      write_text_file(fs::path(out) / (n + ".json"), dump(j));
  }
  return 0;
}

int cmd_plot(const std::string& report_path, const std::string& out) {
  if (out.empty()) throw input_error("plot needs --out");
  DeltaSign sign;
  auto rep = report_from_json(read_json_file(report_path), &sign);
  for (auto& d : rep.degrees) write_text_file(fs::path(out) / ("degree_" + std::to_string(d.degree) + ".svg"), degree_svg(d, sign));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Barcodes of closed one-forms (simplicial cocycles) via windowed covers"};
  app.require_subcommand(1);
  Shared s;

  auto* compute = app.add_subcommand("compute", "barcode report for a complex with a cocycle");
  std::string input;
  bool plot = false, dump_cover = false;
  compute->add_option("input", input, "complex/cocycle JSON")->required();
  compute->add_flag("--plot", plot, "write one SVG per degree into --out");
  compute->add_flag("--dump-cover", dump_cover, "write the final windowed cover into --out");
  add_shared(compute, s);

  auto* duality = app.add_subcommand("duality", "Poincare duality check on a closed manifold");
  bool manifold = false;
  duality->add_option("input", input, "complex/cocycle JSON")->required();
  duality->add_flag("--manifold", manifold, "assert the input is a closed triangulated manifold");
  add_shared(duality, s);

  auto* stability = app.add_subcommand("stability", "perturbation experiment, CSV output");
  std::string eps = "0.05", against;
  std::size_t trials = 20;
  stability->add_option("input", input, "complex/cocycle JSON")->required();
  stability->add_option("--perturbation", eps, "perturbation size (decimal, used exactly)")->capture_default_str();
  stability->add_option("--trials", trials, "number of trials")->capture_default_str();
  stability->add_option("--against", against, "compare with this perturbed cocycle instead of random trials");
  add_shared(stability, s);

  auto* geometrize = app.add_subcommand("geometrize", "Rips complexes with induced cocycles from metric data");
  std::vector<double> scales;
  std::string metric, pairs_csv;
  std::vector<std::string> theta;
  int dim_cap = 3;
  geometrize->add_option("input", input, "metric data JSON, or distance matrix CSV with --pairs")->required();
  geometrize->add_option("--epsilon", scales, "Rips scales")->required();
  geometrize->add_option("--metric", metric, "metric for point coordinates")
      ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}));
  geometrize->add_option("--pairs", pairs_csv, "pair list CSV (x,y,q0[,q1...])");
  geometrize->add_option("--theta", theta, "period basis for CSV input");
  geometrize->add_option("--dim-cap", dim_cap, "largest simplex dimension")->capture_default_str();
  add_shared(geometrize, s);

  auto* generate = app.add_subcommand("generate", "write a canonical fixture (or 'all')");
  std::string name;
  generate->add_option("name", name, "fixture name")->required();
  generate->add_option("--out", s.out, "output directory (stdout when omitted)");

  auto* plotcmd = app.add_subcommand("plot", "SVG plots from a report");
  plotcmd->add_option("report", input, "report JSON")->required();
  plotcmd->add_option("--out", s.out, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*compute) return cmd_compute(s, input, plot, dump_cover);
    if (*duality) return cmd_duality(s, input, manifold);
    if (*stability) return cmd_stability(s, input, eps, trials, against);
    if (*geometrize) return cmd_geometrize(s, input, scales, metric, pairs_csv, theta, dim_cap);
    if (*generate) return cmd_generate(name, s.out);
    if (*plotcmd) return cmd_plot(input, s.out);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
