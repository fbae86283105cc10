#include "anbar/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "anbar/error.hpp"

namespace anbar {

namespace {

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Rational rational_from(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()), 10);
    if (j.is_number()) {
      // dump() gives the shortest round-trip text, read back as an exact decimal
      return parse_rational(j.dump());
    }
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
  throw input_error(where + ": expected a rational string or number");
}

long double theta_from(const json& j, std::string& text, std::size_t i) {
  std::string where = "theta[" + std::to_string(i) + "]";
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw input_error(where + ": expected a decimal literal");
  }
  char* end = nullptr;
  long double v = std::strtold(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) throw input_error(where + ": malformed number '" + text + "'");
  if (!(v > 0)) throw input_error(where + " must be positive");
  return v;
}

std::pair<Vertex, Vertex> parse_edge_key(const std::string& key) {
  auto dash = key.find('-');
  auto fail = [&] { return input_error("cocycle key '" + key + "' is not of the form \"x-y\""); };
  if (dash == std::string::npos || dash == 0 || dash + 1 >= key.size()) throw fail();
  auto digits = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto a = key.substr(0, dash), b = key.substr(dash + 1);
  if (!digits(a) || !digits(b)) throw fail();
  return {static_cast<Vertex>(std::stoul(a)), static_cast<Vertex>(std::stoul(b))};
}

std::string edge_name(Vertex a, Vertex b) { return std::to_string(a) + "-" + std::to_string(b); }

} // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write " + path.string());
  out << text;
}

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte ? e.byte - 1 : 0);
    throw input_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": JSON syntax error");
  }
}

json read_json_file(const std::filesystem::path& path) { return parse_json_text(read_text_file(path), path.string()); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

CocycleInput parse_cocycle_json(const std::string& text, double tolerance) {
  auto doc = parse_json_text(text, "cocycle input");
  if (!doc.is_object()) throw input_error("cocycle input: top level must be an object");
  CocycleInput in;
  std::vector<long double> theta;
  if (doc.contains("theta")) {
    if (!doc["theta"].is_array()) throw input_error("theta must be an array");
    for (std::size_t i = 0; i < doc["theta"].size(); ++i) {
      std::string t;
      theta.push_back(theta_from(doc["theta"][i], t, i));
      in.theta_text.push_back(t);
    }
  }
  in.basis = make_basis(theta, tolerance);
  in.warnings = in.basis->independence_warnings();

  if (!doc.contains("max_simplices") || !doc["max_simplices"].is_array())
    throw input_error("missing array \"max_simplices\"");
  std::vector<Simplex> maximal;
  std::size_t nv = 0;
  for (std::size_t i = 0; i < doc["max_simplices"].size(); ++i) {
    const auto& s = doc["max_simplices"][i];
    if (!s.is_array() || s.empty()) throw input_error("max_simplices[" + std::to_string(i) + "] must be a non-empty array");
    Simplex simplex;
    for (auto& v : s) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw input_error("max_simplices[" + std::to_string(i) + "] holds a non-vertex entry");
      simplex.push_back(v.get<Vertex>());
      nv = std::max<std::size_t>(nv, simplex.back() + 1);
    }
    auto sorted = simplex;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw input_error("max_simplices[" + std::to_string(i) + "] repeats a vertex");
    maximal.push_back(simplex);
  }
  if (doc.contains("vertex_count")) {
    auto n = doc["vertex_count"].get<std::size_t>();
    if (n < nv) throw input_error("vertex_count is smaller than the largest vertex index + 1");
    nv = n;
  }
  in.complex = SimplicialComplex::from_maximal(nv, maximal);

  in.cocycle = Cocycle(in.basis);
  const json empty = json::object();
  const auto& cj = doc.contains("cocycle") ? doc["cocycle"] : empty;
  if (!cj.is_object()) throw input_error("\"cocycle\" must be an object");
  std::size_t k = theta.size();
  for (auto& [key, val] : cj.items()) {
    auto [x, y] = parse_edge_key(key);
    if (!in.complex.edge_index(x, y)) throw input_error("cocycle edge " + key + " is not an edge of the complex");
    std::vector<Rational> coords(k + 1, Rational(0));
    if (val.is_array()) {
      if (val.size() > k + 1)
        throw input_error("cocycle edge " + key + ": " + std::to_string(val.size()) + " coordinates for " +
                          std::to_string(k) + " theta values");
      for (std::size_t i = 0; i < val.size(); ++i) coords[i] = rational_from(val[i], "cocycle edge " + key);
    } else {
      coords[0] = rational_from(val, "cocycle edge " + key);
    }
    try {
      in.cocycle.set(x, y, RealValue(in.basis, coords));
    } catch (const invalid_cocycle_error& e) {
      throw input_error("cocycle edge " + key + ": " + e.what());
    }
  }
  for (auto& e : in.complex.simplices(1))
    if (!in.cocycle.has(e[0], e[1])) throw input_error("cocycle has no value on edge " + edge_name(e[0], e[1]));
  auto verdict = check_cocycle(in.complex, in.cocycle);
  if (!verdict.valid) {
    const auto& s = *verdict.violating;
    throw input_error("cocycle identity fails on triangle " + std::to_string(s[0]) + "," + std::to_string(s[1]) + "," +
                      std::to_string(s[2]));
  }
  return in;
}

CocycleInput load_cocycle_file(const std::filesystem::path& path, double tolerance) {
  try {
    return parse_cocycle_json(read_text_file(path), tolerance);
  } catch (const input_error& e) {
    throw input_error(path.string() + ": " + e.what());
  }
}

json cocycle_to_json(const SimplicialComplex& kx, const Cocycle& c, const std::vector<std::string>& theta_text) {
  json j;
  j["theta"] = json::array();
  for (auto& t : theta_text) j["theta"].push_back(std::stod(t));
  j["vertex_count"] = kx.vertex_count();
  j["max_simplices"] = json::array();
  for (auto& s : kx.maximal_simplices()) j["max_simplices"].push_back(s);
  j["cocycle"] = json::object();
  for (auto& [e, v] : c.entries()) j["cocycle"][edge_name(e.first, e.second)] = v.coord_strings();
  return j;
}

json value_to_json(const RealValue& v) { return v.coord_strings(); }

RealValue value_from_json(const json& j, const BasisPtr& basis) {
  std::vector<Rational> coords(basis->k() + 1, Rational(0));
  if (!j.is_array() || j.size() != coords.size()) throw input_error("value does not match the period basis");
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = rational_from(j[i], "value");
  return RealValue(basis, coords);
}

json configuration_to_json(const Configuration& c) {
  json arr = json::array();
  for (auto& [t, m] : c.points()) arr.push_back({{"t_coords", t.coord_strings()}, {"t_embed", t.embed()}, {"mult", m}});
  return arr;
}

Configuration configuration_from_json(const json& j, ConfigDomain domain, const BasisPtr& basis) {
  Configuration c(domain);
  if (!j.is_array()) throw input_error("configuration must be an array");
  for (auto& p : j) {
    if (!p.is_object() || !p.contains("t_coords") || !p.contains("mult")) throw input_error("malformed configuration point");
    c.add(value_from_json(p["t_coords"], basis), p["mult"].get<std::size_t>());
  }
  return c;
}

json report_to_json(const BarcodeReport& rep, DeltaSign sign, const std::vector<std::string>& theta_text,
                    const json& run_config) {
  json j;
  j["format"] = "anbar-report/1";
  j["run_config"] = run_config;
  j["field"] = rep.field;
  j["sign_convention"] = sign == DeltaSign::formula ? "formula" : "figure";
  j["theta"] = theta_text;
  j["dimension"] = rep.dim;
  j["euler_characteristic"] = rep.euler_characteristic;
  j["lattice_rank"] = rep.lattice_rank;
  j["weakly_tame"] = rep.weakly_tame;
  j["window"] = {{"radius", rep.window_radius}, {"stabilized", rep.stabilized}};
  j["warnings"] = rep.warnings;
  j["degrees"] = json::array();
  for (auto& d : rep.degrees) {
    j["degrees"].push_back({{"r", d.degree},
                            {"delta", configuration_to_json(delta_with_sign(d.delta, sign))},
                            {"gamma", configuration_to_json(d.gamma)},
                            {"lambda", configuration_to_json(d.lambda)},
                            {"beta", d.beta},
                            {"rho", d.rho},
                            {"c", d.c},
                            {"orbit_relative_total", d.orbit_relative_total},
                            {"truncated_delta", d.truncated_delta},
                            {"truncated_gamma", d.truncated_gamma}});
  }
  j["orbits"] = json::array();
  for (auto& o : rep.orbits)
    j["orbits"].push_back({{"rep_coords", o.rep.coord_strings()},
                           {"rep_embed", o.rep.embed()},
                           {"base_vertices", o.base_vertices},
                           {"relative_dims", o.relative_dims}});
  auto an = an_complex(rep.betas(), rep.rhos(), PrimeField(rep.field));
  j["an_complex"] = {{"minus", an.minus},
                     {"plus", an.plus},
                     {"harmonic", an.harmonic},
                     {"boundary_squared_zero", an.boundary_squared_zero()},
                     {"homology", an.homology_dims()}};
  return j;
}

BarcodeReport report_from_json(const json& j, DeltaSign* sign) {
  try {
    if (!j.is_object() || j.value("format", "") != "anbar-report/1") throw input_error("not a barcode report");
    std::vector<long double> theta;
    for (auto& t : j.at("theta")) theta.push_back(std::strtold(t.get<std::string>().c_str(), nullptr));
    auto basis = make_basis(theta);
    DeltaSign s = j.at("sign_convention").get<std::string>() == "figure" ? DeltaSign::figure : DeltaSign::formula;
    if (sign) *sign = s;
    BarcodeReport rep;
    rep.field = j.at("field").get<std::uint32_t>();
    rep.dim = j.at("dimension").get<int>();
    rep.euler_characteristic = j.at("euler_characteristic").get<long>();
    rep.lattice_rank = j.at("lattice_rank").get<std::size_t>();
    rep.weakly_tame = j.at("weakly_tame").get<bool>();
    rep.window_radius = j.at("window").at("radius").get<int>();
    rep.stabilized = j.at("window").at("stabilized").get<bool>();
    rep.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (auto& dj : j.at("degrees")) {
      DegreeReport d;
      d.degree = dj.at("r").get<int>();
      // Stored δ carries the chosen sign; keep the formula sign in memory.
      d.delta = delta_with_sign(configuration_from_json(dj.at("delta"), ConfigDomain::real, basis), s);
      d.gamma = configuration_from_json(dj.at("gamma"), ConfigDomain::positive, basis);
      d.lambda = configuration_from_json(dj.at("lambda"), ConfigDomain::positive, basis);
      d.beta = dj.at("beta").get<std::size_t>();
      d.rho = dj.at("rho").get<std::size_t>();
      d.c = dj.at("c").get<std::size_t>();
      d.orbit_relative_total = dj.at("orbit_relative_total").get<std::size_t>();
      d.truncated_delta = dj.at("truncated_delta").get<std::size_t>();
      d.truncated_gamma = dj.at("truncated_gamma").get<std::size_t>();
      rep.degrees.push_back(std::move(d));
    }
    for (auto& oj : j.at("orbits")) {
      OrbitRow o;
      o.rep = value_from_json(oj.at("rep_coords"), basis);
      o.base_vertices = oj.at("base_vertices").get<std::vector<Vertex>>();
      o.relative_dims = oj.at("relative_dims").get<std::vector<std::size_t>>();
      rep.orbits.push_back(std::move(o));
    }
    return rep;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed report: ") + e.what());
  }
}

json cover_to_json(const WindowedCover& cov) {
  json j;
  j["window_radius"] = cov.window().radius;
  j["lattice_basis"] = json::array();
  for (std::size_t i = 0; i < cov.lattice().rank(); ++i) j["lattice_basis"].push_back(cov.lattice().basis_value(i).coord_strings());
  j["vertices"] = json::array();
  for (std::size_t v = 0; v < cov.vertex_count(); ++v) {
    const auto& cv = cov.vertex(v);
    j["vertices"].push_back({{"base", cv.base}, {"translate", cv.translate}, {"value", cv.value.coord_strings()}});
  }
  j["cells"] = json::array();
  j["flagged"] = json::array();
  for (int r = 0; r <= cov.dim(); ++r) {
    json cells = json::array();
    for (auto& c : cov.cells(r)) cells.push_back({{"base", c.base}, {"anchor", c.anchor}, {"vertices", c.vertices}});
    j["cells"].push_back(cells);
    json flagged = json::array();
    for (auto& [b, g] : cov.flagged(r)) flagged.push_back({{"base", b}, {"anchor", g}});
    j["flagged"].push_back(flagged);
  }
  return j;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

struct Axis {
  double lo, hi, x0, x1;
  double map(double v) const { return hi > lo ? x0 + (v - lo) / (hi - lo) * (x1 - x0) : (x0 + x1) / 2; }
};

void draw_axis(std::ostringstream& os, const Axis& ax, double y, const std::string& label) {
  os << "<line x1=\"" << fmt(ax.x0) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(ax.x1) << "\" y2=\"" << fmt(y)
     << "\" stroke=\"#444\"/>\n";
  os << "<text x=\"" << fmt(ax.x0) << "\" y=\"" << fmt(y + 18) << "\" font-size=\"11\">" << fmt(ax.lo) << "</text>\n";
  os << "<text x=\"" << fmt(ax.x1 - 30) << "\" y=\"" << fmt(y + 18) << "\" font-size=\"11\">" << fmt(ax.hi)
     << "</text>\n";
  os << "<text x=\"10\" y=\"" << fmt(y + 4) << "\" font-size=\"13\">" << label << "</text>\n";
}

} // namespace

std::string degree_svg(const DegreeReport& d, DeltaSign sign) {
  auto delta = delta_with_sign(d.delta, sign);
  double lo = -1, hi = 1;
  for (auto& [t, m] : delta.points()) lo = std::min(lo, t.embed()), hi = std::max(hi, t.embed());
  double ghi = 1;
  for (auto& [t, m] : d.gamma.points()) ghi = std::max(ghi, t.embed());
  double pad = 0.1 * (hi - lo);
  Axis dax{lo - pad, hi + pad, 80, 580};
  Axis gax{0, ghi * 1.1, 80, 580};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"620\" height=\"240\" font-family=\"sans-serif\">\n";
  os << "<text x=\"10\" y=\"20\" font-size=\"14\">degree " << d.degree << ": beta=" << d.beta << " rho=" << d.rho
     << " c=" << d.c << "</text>\n";
  draw_axis(os, dax, 90, "delta");
  double zx = dax.map(0);
  os << "<line x1=\"" << fmt(zx) << "\" y1=\"82\" x2=\"" << fmt(zx) << "\" y2=\"98\" stroke=\"#444\"/>\n";
  for (auto& [t, m] : delta.points()) {
    double x = dax.map(t.embed());
    const char* colour = t.embed() > 0 ? "#c0392b" : "#2471a3";
    for (std::size_t i = 0; i < m; ++i)
      os << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(80 - 9.0 * i) << "\" r=\"4\" fill=\"" << colour << "\"/>\n";
  }
  draw_axis(os, gax, 190, "gamma");
  for (auto& [t, m] : d.gamma.points()) {
    double x = gax.map(t.embed());
    for (std::size_t i = 0; i < m; ++i)
      os << "<rect x=\"" << fmt(x - 4) << "\" y=\"" << fmt(176 - 9.0 * i) << "\" width=\"8\" height=\"8\" fill=\"#1e8449\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

} // namespace anbar
