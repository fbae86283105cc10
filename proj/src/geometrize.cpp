#include "anbar/geometrize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "anbar/error.hpp"

namespace anbar {

namespace {

Edge oriented(Vertex x, Vertex y) { return x < y ? Edge{x, y} : Edge{y, x}; }

std::string triple_name(Vertex x, Vertex y, Vertex z) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) + ")";
}

double point_distance(const std::vector<double>& p, const std::vector<double>& q, const std::string& metric) {
  double acc = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double g = std::fabs(p[i] - q[i]);
    if (metric == "euclidean")
      acc += g * g;
    else if (metric == "manhattan")
      acc += g;
    else
      acc = std::max(acc, g);
  }
  return metric == "euclidean" ? std::sqrt(acc) : acc;
}

void set_pair(MetricData& md, Vertex x, Vertex y, std::vector<Rational> coords, const std::string& where) {
  if (x >= md.n || y >= md.n || x == y) throw input_error(where + ": pair is not two distinct points");
  coords.resize(md.basis->k() + 1, Rational(0));
  RealValue v(md.basis, coords);
  if (x > y) {
    std::swap(x, y);
    v = -v;
  }
  auto [it, inserted] = md.f.emplace(Edge{x, y}, v);
  if (!inserted && !(it->second == v)) throw input_error(where + ": contradicts the reverse pair (f must be antisymmetric)");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return out;
}

BasisPtr basis_from_text(const std::vector<std::string>& theta_text) {
  std::vector<long double> theta;
  for (auto& t : theta_text) {
    char* end = nullptr;
    long double v = std::strtold(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0' || !(v > 0)) throw input_error("theta value '" + t + "' is not a positive number");
    theta.push_back(v);
  }
  return make_basis(theta);
}

} // namespace

bool MetricData::in_s(Vertex x, Vertex y) const { return f.count(oriented(x, y)) > 0; }

RealValue MetricData::value(Vertex x, Vertex y) const {
  auto it = f.find(oriented(x, y));
  if (it == f.end()) throw input_error("pair " + std::to_string(x) + "-" + std::to_string(y) + " is not in S");
  return x < y ? it->second : -it->second;
}

void validate_metric(const MetricData& md) {
  if (md.d.size() != md.n) throw input_error("distance table has the wrong number of rows");
  for (std::size_t i = 0; i < md.n; ++i) {
    if (md.d[i].size() != md.n) throw input_error("distance table row " + std::to_string(i) + " has the wrong length");
    if (md.d[i][i] != 0) throw input_error("distance table has a nonzero diagonal entry at " + std::to_string(i));
    for (std::size_t j = 0; j < md.n; ++j) {
      if (!(md.d[i][j] >= 0) || !std::isfinite(md.d[i][j]))
        throw input_error("distance " + std::to_string(i) + "-" + std::to_string(j) + " is negative or not finite");
      if (md.d[i][j] != md.d[j][i]) throw input_error("distance table is not symmetric at " + std::to_string(i) + "-" + std::to_string(j));
    }
  }
  for (std::size_t i = 0; i < md.n; ++i)
    for (std::size_t j = 0; j < md.n; ++j)
      for (std::size_t k = 0; k < md.n; ++k)
        if (md.d[i][k] > md.d[i][j] + md.d[j][k] + 1e-12 * (1 + md.d[i][k]))
          throw input_error("triangle inequality fails for " + triple_name(static_cast<Vertex>(i), static_cast<Vertex>(j), static_cast<Vertex>(k)));
}

MetricData parse_metric_json(const json& doc, const std::string& metric_override) {
  try {
    if (!doc.is_object()) throw input_error("metric data must be a JSON object");
    MetricData md;
    if (doc.contains("theta"))
      for (auto& t : doc["theta"]) {
        if (t.is_string()) {
          md.theta_text.push_back(t.get<std::string>());
        } else {
          md.theta_text.push_back(t.dump());
        }
      }
    md.basis = basis_from_text(md.theta_text);
    if (doc.contains("distances")) {
      md.d = doc["distances"].get<std::vector<std::vector<double>>>();
      md.n = md.d.size();
    } else if (doc.contains("points")) {
      auto pts = doc["points"].get<std::vector<std::vector<double>>>();
      std::string metric = metric_override.empty() ? doc.value("metric", std::string("euclidean")) : metric_override;
      if (metric != "euclidean" && metric != "manhattan" && metric != "chebyshev")
        throw input_error("unknown metric '" + metric + "'");
      md.n = pts.size();
      for (auto& p : pts)
        if (p.size() != pts.front().size()) throw input_error("points have different dimensions");
      md.d.assign(md.n, std::vector<double>(md.n, 0));
      for (std::size_t i = 0; i < md.n; ++i)
        for (std::size_t j = 0; j < md.n; ++j) md.d[i][j] = i == j ? 0 : point_distance(pts[i], pts[j], metric);
    } else {
      throw input_error("metric data needs \"points\" or \"distances\"");
    }
    if (doc.contains("pairs")) {
      for (auto& [key, val] : doc["pairs"].items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos) throw input_error("pair key '" + key + "' is not of the form \"x-y\"");
        Vertex x, y;
        try {
          x = static_cast<Vertex>(std::stoul(key.substr(0, dash)));
          y = static_cast<Vertex>(std::stoul(key.substr(dash + 1)));
        } catch (const std::exception&) {
          throw input_error("pair key '" + key + "' is not of the form \"x-y\"");
        }
        std::vector<Rational> coords;
        auto items = val.is_array() ? val : json::array({val});
        if (items.size() > md.basis->k() + 1) throw input_error("pair " + key + " has too many coordinates");
        for (auto& q : items) coords.push_back(q.is_string() ? parse_rational(q.get<std::string>()) : parse_rational(q.dump()));
        set_pair(md, x, y, coords, "pair " + key);
      }
    }
    validate_metric(md);
    return md;
  } catch (const json::exception& e) {
    throw input_error(std::string("malformed metric data: ") + e.what());
  }
}

MetricData load_metric_file(const std::filesystem::path& path, const std::string& metric_override) {
  try {
    return parse_metric_json(read_json_file(path), metric_override);
  } catch (const input_error& e) {
    throw input_error(path.string() + ": " + e.what());
  }
}

MetricData load_metric_csv(const std::filesystem::path& distances, const std::filesystem::path& pairs,
                           const std::vector<std::string>& theta_text) {
  MetricData md;
  md.theta_text = theta_text;
  md.basis = basis_from_text(theta_text);
  {
    std::istringstream in(read_text_file(distances));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      std::vector<double> row;
      for (auto& cell : split_csv(line)) {
        char* end = nullptr;
        double v = std::strtod(cell.c_str(), &end);
        if (cell.empty() || *end != '\0')
          throw input_error(distances.string() + ":" + std::to_string(lineno) + ": '" + cell + "' is not a number");
        row.push_back(v);
      }
      md.d.push_back(row);
    }
    md.n = md.d.size();
  }
  {
    std::istringstream in(read_text_file(pairs));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
      auto cells = split_csv(line);
      std::string where = pairs.string() + ":" + std::to_string(lineno);
      if (cells.size() < 3) throw input_error(where + ": expected x,y,q0[,q1...]");
      std::vector<Rational> coords;
      for (std::size_t i = 2; i < cells.size(); ++i) coords.push_back(parse_rational(cells[i]));
      if (coords.size() > md.basis->k() + 1) throw input_error(where + ": too many coordinates");
      try {
        set_pair(md, static_cast<Vertex>(std::stoul(cells[0])), static_cast<Vertex>(std::stoul(cells[1])), coords, where);
      } catch (const std::invalid_argument&) {
        throw input_error(where + ": bad point index");
      }
    }
  }
  validate_metric(md);
  return md;
}

EpsilonMax epsilon_max(const MetricData& md) {
  EpsilonMax out;
  for (Vertex x = 0; x < md.n; ++x)
    for (Vertex y = x + 1; y < md.n; ++y) {
      if (!md.in_s(x, y)) continue;
      for (Vertex z = y + 1; z < md.n; ++z) {
        if (!md.in_s(y, z) || !md.in_s(x, z)) continue;
        auto sum = md.value(x, y) + md.value(y, z) + md.value(z, x);
        if (sum.is_zero()) continue;
        double diam = std::max({md.d[x][y], md.d[y][z], md.d[x][z]});
        if (!out.value || diam < *out.value) {
          out.value = diam;
          out.triple = std::array<Vertex, 3>{x, y, z};
        }
      }
    }
  return out;
}

SimplicialComplex rips_complex(const MetricData& md, double epsilon, int dim_cap) {
  if (!(epsilon > 0)) throw input_error("Rips scale must be positive");
  std::vector<Simplex> simplices;
  // Grow cliques by appending larger vertices.
  std::vector<Simplex> layer;
  for (Vertex v = 0; v < md.n; ++v) layer.push_back({v});
  for (int r = 1; r <= dim_cap && !layer.empty(); ++r) {
    std::vector<Simplex> next;
    for (auto& s : layer)
      for (Vertex v = s.back() + 1; v < md.n; ++v) {
        bool ok = true;
        for (auto u : s)
          if (!(md.d[u][v] < epsilon)) {
            ok = false;
            break;
          }
        if (ok) {
          auto t = s;
          t.push_back(v);
          next.push_back(std::move(t));
        }
      }
    for (auto& s : next) simplices.push_back(s);
    layer = std::move(next);
  }
  return SimplicialComplex::from_maximal(md.n, simplices);
}

Cocycle induced_cocycle(const MetricData& md, const SimplicialComplex& kx) {
  Cocycle c(md.basis);
  for (auto& e : kx.simplices(1)) {
    if (!md.in_s(e[0], e[1]))
      throw input_error("edge " + std::to_string(e[0]) + "-" + std::to_string(e[1]) + " of the Rips complex is not in S");
    c.set(e[0], e[1], md.value(e[0], e[1]));
  }
  auto verdict = check_cocycle(kx, c);
  if (!verdict.valid) {
    const auto& s = *verdict.violating;
    throw invalid_cocycle_error("f violates the cocycle identity on the triple " + triple_name(s[0], s[1], s[2]));
  }
  return c;
}

std::vector<ScaleReport> geometrize_pipeline(const MetricData& md, const std::vector<double>& scales,
                                             const StabilizeOptions& opt, int dim_cap) {
  auto em = epsilon_max(md);
  for (double eps : scales)
    if (em.value && eps > *em.value) {
      auto& t = *em.triple;
      throw input_error("scale " + std::to_string(eps) + " exceeds eps(f,d) = " + std::to_string(*em.value) +
                        "; violating triple " + triple_name(t[0], t[1], t[2]));
    }
  std::vector<ScaleReport> out;
  for (double eps : scales) {
    ScaleReport sr;
    sr.epsilon = eps;
    sr.complex = rips_complex(md, eps, dim_cap);
    auto c = induced_cocycle(md, sr.complex);
    sr.report = stabilize(sr.complex, c, opt);
    out.push_back(std::move(sr));
  }
  return out;
}

} // namespace anbar
