#include "symrigid/io.hpp"

#include "symrigid/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace symrigid {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::InvalidDocument, path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(path + "/" + key, "missing");
  return *it;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) bad(path, "expected an integer");
  return j.get<int>();
}

std::vector<int> ints_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], path + "/" + std::to_string(i)));
  return out;
}

Json number_to_json(double x, NumberFormat fmt) {
  if (fmt == NumberFormat::exact_string) return exact_decimal(x);
  return x;
}

Json vector_to_json(const Vector& v, NumberFormat fmt) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(number_to_json(v[i], fmt));
  return a;
}

Vector vector_from_json(const Json& j, int len, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  if (len >= 0 && static_cast<int>(j.size()) != len) bad(path, "expected " + std::to_string(len) + " entries");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = number_from_json(j[i], path + "/" + std::to_string(i));
  return v;
}

Json matrix_to_json(const Matrix& m, NumberFormat fmt) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vector_to_json(m.row(r).transpose(), fmt));
  return rows;
}

Matrix matrix_from_json(const Json& j, int dim, const std::string& path) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim) bad(path, "expected " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) m.row(r) = vector_from_json(j[r], dim, path + "/" + std::to_string(r)).transpose();
  return m;
}

std::string space_name(Space s) {
  switch (s) {
    case Space::euclidean:
      return "euclidean";
    case Space::spherical:
      return "spherical";
    case Space::ph:
      return "ph";
  }
  return "euclidean";
}

Space space_from_name(const std::string& s, const std::string& path) {
  if (s == "euclidean") return Space::euclidean;
  if (s == "spherical") return Space::spherical;
  if (s == "ph") return Space::ph;
  bad(path, "unknown space '" + s + "'");
}

bool is_catalog_group(const SymmetryGroup& g) {
  if (!g.name()) return false;
  try {
    const SymmetryGroup ref = make_schoenflies(g.dim(), g.name()->label, g.name()->n);
    if (ref.order() != g.order()) return false;
    for (int a = 0; a < g.order(); ++a)
      if ((ref.rep(a) - g.rep(a)).cwiseAbs().maxCoeff() > 0.0) return false;
    return ref.table() == g.table();
  } catch (const Error&) {
    return false;
  }
}

std::vector<Perm> full_action_from_json(const Json& j, const Graph& graph, const SymmetryGroup& group,
                                        const std::string& path) {
  if (j.contains("elements")) {
    std::vector<Perm> action;
    const Json& e = j["elements"];
    if (!e.is_array() || static_cast<int>(e.size()) != group.order()) {
      bad(path + "/elements", "expected one permutation per group element");
    }
    for (std::size_t g = 0; g < e.size(); ++g) action.push_back(ints_from_json(e[g], path + "/elements/" + std::to_string(g)));
    return make_symmetric_graph_full(graph, group, action).action;
  }
  const Json& gens = field(j, "generators", path);
  if (!gens.is_object()) bad(path + "/generators", "expected an object keyed by element id");
  std::vector<Perm> per_gen;
  for (int gid : group.generators()) {
    const std::string key = std::to_string(gid);
    if (!gens.contains(key)) bad(path + "/generators/" + key, "missing permutation for generator");
    per_gen.push_back(ints_from_json(gens[key], path + "/generators/" + key));
  }
  for (auto it = gens.begin(); it != gens.end(); ++it) {
    bool known = false;
    for (int gid : group.generators()) known |= it.key() == std::to_string(gid);
    if (!known) bad(path + "/generators/" + it.key(), "not a generator id");
  }
  return make_symmetric_graph(graph, group, per_gen).action;
}

Json action_to_json(const SymmetryGroup& group, const std::vector<Perm>& action) {
  Json gens = Json::object();
  for (int gid : group.generators()) gens[std::to_string(gid)] = action[gid];
  return Json{{"generators", gens}};
}

}  // namespace

std::string exact_decimal(double x) {
  using boost::multiprecision::cpp_int;
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "cannot print a non-finite number");
  if (x == 0.0) return "0";
  int e = 0;
  const double frac = std::frexp(std::abs(x), &e);
  cpp_int mant = static_cast<long long>(std::ldexp(frac, 53));
  e -= 53;
  std::string sign = x < 0 ? "-" : "";
  if (e >= 0) return sign + cpp_int(mant << e).str();
  // mant * 2^e = mant * 5^-e / 10^-e
  cpp_int scaled = mant * boost::multiprecision::pow(cpp_int(5), -e);
  std::string digits = scaled.str();
  const std::size_t places = static_cast<std::size_t>(-e);
  if (digits.size() <= places) digits = std::string(places - digits.size() + 1, '0') + digits;
  std::string whole = digits.substr(0, digits.size() - places);
  std::string fraction = digits.substr(digits.size() - places);
  while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
  return sign + whole + (fraction.empty() ? "" : "." + fraction);
}

double number_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (!j.is_string()) bad(path, "expected a number");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  auto parse = [&](const std::string& t) {
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) bad(path, "malformed number '" + s + "'");
    return v;
  };
  double v = 0;
  if (slash == std::string::npos) {
    v = parse(s);
  } else {
    const double den = parse(s.substr(slash + 1));
    if (den == 0.0) bad(path, "zero denominator");
    v = parse(s.substr(0, slash)) / den;
  }
  if (!std::isfinite(v)) bad(path, "non-finite number");
  return v;
}

Json group_to_json(const SymmetryGroup& g, NumberFormat fmt) {
  Json j = Json::object();
  j["dim"] = g.dim();
  if (is_catalog_group(g)) {
    j["label"] = g.name()->label;
    j["n"] = g.name()->n;
    return j;
  }
  Json mats = Json::array();
  for (const Matrix& m : g.reps()) mats.push_back(matrix_to_json(m, fmt));
  j["matrices"] = mats;
  j["table"] = g.table();
  if (g.name()) {
    j["name"] = g.name()->label;
    j["name_n"] = g.name()->n;
  }
  return j;
}

SymmetryGroup group_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) bad(path, "expected an object");
  const int dim = int_from_json(field(j, "dim", path), path + "/dim");
  if (dim < 1) bad(path + "/dim", "must be positive");
  if (j.contains("label")) {
    const int n = j.contains("n") ? int_from_json(j["n"], path + "/n") : 1;
    if (!j["label"].is_string()) bad(path + "/label", "expected a string");
    return make_schoenflies(dim, j["label"].get<std::string>(), n);
  }
  std::optional<GroupName> name;
  if (j.contains("name")) name = GroupName{j["name"].get<std::string>(), j.value("name_n", 1)};
  if (j.contains("generators")) {
    const Json& gens = j["generators"];
    if (!gens.is_array()) bad(path + "/generators", "expected an array of matrices");
    std::vector<Matrix> ms;
    for (std::size_t i = 0; i < gens.size(); ++i)
      ms.push_back(matrix_from_json(gens[i], dim, path + "/generators/" + std::to_string(i)));
    return SymmetryGroup::from_generators(dim, ms, name);
  }
  const Json& mats = field(j, "matrices", path);
  if (!mats.is_array() || mats.empty()) bad(path + "/matrices", "expected a non-empty array");
  std::vector<Matrix> reps;
  for (std::size_t i = 0; i < mats.size(); ++i)
    reps.push_back(matrix_from_json(mats[i], dim, path + "/matrices/" + std::to_string(i)));
  if (!j.contains("table")) return SymmetryGroup::from_generators(dim, reps, name);
  const Json& t = j["table"];
  if (!t.is_array() || t.size() != reps.size()) bad(path + "/table", "expected one row per element");
  std::vector<std::vector<int>> table;
  for (std::size_t i = 0; i < t.size(); ++i) table.push_back(ints_from_json(t[i], path + "/table/" + std::to_string(i)));
  return SymmetryGroup::from_table(table, reps, name);
}

Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
  return Json{{"kind", "graph"}, {"version", kDocumentVersion}, {"n", g.n}, {"edges", edges}};
}

namespace {

Graph graph_fields(const Json& j, int n, const std::string& path) {
  const Json& edges = field(j, "edges", path);
  if (!edges.is_array()) bad(path + "/edges", "expected an array");
  Graph g(n, {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = path + "/edges/" + std::to_string(i);
    const auto e = ints_from_json(edges[i], p);
    if (e.size() != 2) bad(p, "expected [u, v]");
    if (e[0] < 0 || e[1] < 0 || e[0] >= n || e[1] >= n) bad(p, "vertex out of range");
    if (e[0] == e[1]) bad(p, "loops are not allowed");
    if (g.find_edge(e[0], e[1]) >= 0) bad(p, "duplicate edge");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

}  // namespace

Graph graph_from_json(const Json& j) {
  expect_kind(j, "graph");
  const int n = int_from_json(field(j, "n", ""), "/n");
  if (n < 0) bad("/n", "must be non-negative");
  return graph_fields(j, n, "");
}

Json gaingraph_to_json(const GainGraph& gg, NumberFormat fmt) {
  Json edges = Json::array();
  for (const GainEdge& e : gg.edges) edges.push_back({e.tail, e.head, e.gain});
  return Json{{"kind", "gaingraph"}, {"version", kDocumentVersion}, {"n", gg.n},
              {"group", group_to_json(gg.group, fmt)}, {"edges", edges}};
}

GainGraph gaingraph_from_json(const Json& j) {
  expect_kind(j, "gaingraph");
  GainGraph gg;
  gg.n = int_from_json(field(j, "n", ""), "/n");
  gg.group = group_from_json(field(j, "group", ""));
  const Json& edges = field(j, "edges", "");
  if (!edges.is_array()) bad("/edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string p = "/edges/" + std::to_string(i);
    const auto e = ints_from_json(edges[i], p);
    if (e.size() != 3) bad(p, "expected [tail, head, gain]");
    if (e[0] < 0 || e[1] < 0 || e[0] >= gg.n || e[1] >= gg.n) bad(p, "vertex out of range");
    if (e[2] < 0 || e[2] >= gg.group.order()) bad(p, "gain is not a group element");
    gg.edges.push_back({e[0], e[1], e[2]});
  }
  return gg;
}

Json framework_to_json(const FrameworkDocument& doc, NumberFormat fmt) {
  const Graph& g = graph_of(doc.fw);
  Json j = Json::object();
  j["kind"] = "framework";
  j["version"] = kDocumentVersion;
  j["space"] = space_name(space_of(doc.fw));
  Json vertices = Json::array();
  for (int v = 0; v < g.n; ++v) vertices.push_back(v);
  Json edges = Json::array();
  for (const Edge& e : g.edges) edges.push_back({e.u, e.v});
  Json coords = Json::object();
  Json x = Json::array();
  Json lines = Json::object();
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        j["d"] = f.d;
        if constexpr (std::is_same_v<T, EuclideanFramework>) {
          for (int v = 0; v < g.n; ++v) coords[std::to_string(v)] = vector_to_json(f.p[v], fmt);
        } else if constexpr (std::is_same_v<T, SphericalFramework>) {
          for (int v = 0; v < g.n; ++v) {
            coords[std::to_string(v)] = vector_to_json(f.p[v], fmt);
            if (f.equator[v]) x.push_back(v);
          }
        } else {
          for (int v = 0; v < g.n; ++v) {
            if (f.is_hyperplane(v)) {
              x.push_back(v);
              lines[std::to_string(v)] = Json{{"a", vector_to_json(f.coord[v], fmt)},
                                              {"r", number_to_json(f.offset[v], fmt)}};
            } else {
              coords[std::to_string(v)] = vector_to_json(f.coord[v], fmt);
            }
          }
        }
      },
      doc.fw);
  j["vertices"] = vertices;
  j["edges"] = edges;
  j["X"] = x;
  j["coords"] = coords;
  if (space_of(doc.fw) == Space::ph) j["lines"] = lines;
  if (doc.group) {
    j["group"] = group_to_json(*doc.group, fmt);
    j["action"] = action_to_json(*doc.group, doc.action);
  }
  return j;
}

FrameworkDocument framework_from_json(const Json& j) {
  expect_kind(j, "framework");
  const Space space = space_from_name(field(j, "space", "").get<std::string>(), "/space");
  const int d = int_from_json(field(j, "d", ""), "/d");
  if (d < 1) bad("/d", "must be positive");
  const auto verts = ints_from_json(field(j, "vertices", ""), "/vertices");
  const int n = static_cast<int>(verts.size());
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (verts[i] < 0 || verts[i] >= n || seen[verts[i]]) {
      bad("/vertices/" + std::to_string(i), "vertex ids must be 0..n-1 without repeats");
    }
    seen[verts[i]] = 1;
  }
  const Graph graph = graph_fields(j, n, "");
  std::vector<char> special(n, 0);
  if (j.contains("X")) {
    const auto xs = ints_from_json(j["X"], "/X");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 0 || xs[i] >= n) bad("/X/" + std::to_string(i), "vertex out of range");
      special[xs[i]] = 1;
    }
  }
  const Json empty = Json::object();
  const Json& coords = j.contains("coords") ? j["coords"] : empty;
  const Json& lines = j.contains("lines") ? j["lines"] : empty;
  if (!coords.is_object()) bad("/coords", "expected an object keyed by vertex id");
  if (!lines.is_object()) bad("/lines", "expected an object keyed by vertex id");
  auto coord_of = [&](int v, int len) {
    const std::string key = std::to_string(v);
    if (!coords.contains(key)) bad("/coords/" + key, "missing");
    return vector_from_json(coords[key], len, "/coords/" + key);
  };

  FrameworkDocument doc;
  if (space == Space::euclidean) {
    EuclideanFramework f{graph, d, {}};
    for (int v = 0; v < n; ++v) f.p.push_back(coord_of(v, d));
    check(f);
    doc.fw = f;
  } else if (space == Space::spherical) {
    SphericalFramework f{graph, d, {}, special};
    for (int v = 0; v < n; ++v) f.p.push_back(coord_of(v, d + 1));
    check(f, 1e-9);
    doc.fw = f;
  } else {
    PHFramework f;
    f.graph = graph;
    f.d = d;
    for (auto it = lines.begin(); it != lines.end(); ++it) {
      const int v = std::atoi(it.key().c_str());
      if (std::to_string(v) != it.key() || v < 0 || v >= n) bad("/lines/" + it.key(), "not a vertex id");
      special[v] = 1;
    }
    for (int v = 0; v < n; ++v) {
      if (special[v]) {
        const std::string key = std::to_string(v);
        if (!lines.contains(key)) bad("/lines/" + key, "missing hyperplane for a vertex in X");
        const Json& l = lines[key];
        f.kind.push_back(VertexKind::hyperplane);
        f.coord.push_back(vector_from_json(field(l, "a", "/lines/" + key), d, "/lines/" + key + "/a"));
        f.offset.push_back(l.contains("r") ? number_from_json(l["r"], "/lines/" + key + "/r") : 0.0);
      } else {
        f.kind.push_back(VertexKind::point);
        f.coord.push_back(coord_of(v, d));
        f.offset.push_back(0.0);
      }
    }
    check(f, 1e-9);
    doc.fw = f;
  }
  if (j.contains("group")) {
    doc.group = group_from_json(j["group"]);
    if (doc.group->dim() != ambient_dim(doc.fw)) bad("/group/dim", "does not match the framework");
    if (j.contains("action")) {
      doc.action = full_action_from_json(j["action"], graph, *doc.group, "/action");
    } else if (doc.group->order() == 1) {
      doc.action = {Perm(n)};
      for (int v = 0; v < n; ++v) doc.action[0][v] = v;
    } else {
      bad("/action", "missing for a non-trivial group");
    }
  } else if (j.contains("action")) {
    bad("/action", "given without a group");
  }
  return doc;
}

Json report_to_json(const RigidityReport& r) {
  return Json{{"rows", r.rows},
              {"cols", r.cols},
              {"rank", r.rank},
              {"nullity", r.nullity},
              {"trivial_dim", r.trivial_dim},
              {"span_deficient", r.span_deficient},
              {"is_inf_rigid", r.is_inf_rigid},
              {"is_isostatic", r.is_isostatic},
              {"redundant_edges", r.redundant_edges},
              {"degenerate_edges", r.degenerate_edges}};
}

Json report_to_json(const ForcedReport& r) {
  return Json{{"symmetric_dim", r.symmetric_dim},
              {"restricted_rank", r.restricted_rank},
              {"forced_nullity", r.forced_nullity},
              {"trivial_symmetric_dim", r.trivial_symmetric_dim},
              {"forced_rigid", r.forced_rigid}};
}

Json report_to_json(const CombinatorialVerdict& v) {
  Json j = Json::object();
  auto opt = [](const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); };
  j["applicable"] = v.applicable();
  j["tags"] = v.tags;
  j["predicted_forced_rigid"] = opt(v.predicted_forced_rigid);
  j["predicted_inf_rigid"] = opt(v.predicted_inf_rigid);
  j["predicted_isostatic"] = opt(v.predicted_isostatic);
  if (v.tight_231) j["tight_231_witness"] = *v.tight_231;
  if (v.tight_232) j["tight_232_witness"] = *v.tight_232;
  Json fixed = Json::array();
  for (const FixedCount& f : v.fixed)
    fixed.push_back({{"element", f.element}, {"fixed_vertices", f.fixed_vertices}, {"fixed_edges", f.fixed_edges}});
  j["fixed"] = fixed;
  return j;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidDocument, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_document(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::InvalidDocument, file + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_document(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidDocument, file + ": " + e.what());
  }
}

void write_document(const std::string& file, const Json& j) {
  std::ofstream out(file);
  if (!out) throw Error(ErrorCode::InvalidArgument, file + ": cannot write");
  out << j.dump(2) << "\n";
}

void expect_kind(const Json& j, const std::string& kind) {
  if (!j.is_object()) bad("", "expected an object");
  const Json& k = field(j, "kind", "");
  if (!k.is_string() || k.get<std::string>() != kind) bad("/kind", "expected '" + kind + "'");
  if (j.contains("version") && j["version"] != kDocumentVersion) bad("/version", "unsupported version");
}

double default_tolerance() {
  const char* env = std::getenv("SYMRIGID_TOL");
  if (!env || !*env) return TolerancePolicy{}.relative_tol;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::InvalidArgument, "SYMRIGID_TOL must be a positive number");
  }
  return v;
}

}  // namespace symrigid
