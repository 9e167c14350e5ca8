#include "symrigid/error.hpp"
#include "symrigid/io.hpp"
#include "symrigid/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace symrigid;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitCheckFailed = 3;

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    write_document(out, j);
  }
}

TolerancePolicy policy(double tol_flag, bool exact) {
  TolerancePolicy t;
  t.relative_tol = tol_flag > 0 ? tol_flag : default_tolerance();
  t.mode = exact ? RankMode::exact_rational : RankMode::floating;
  return t;
}

std::vector<int> parse_ids(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw Error(ErrorCode::InvalidArgument, "bad id '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<char> hyperplane_mask(const Framework& fw) {
  std::vector<char> mask(graph_of(fw).n, 0);
  if (const auto* ph = std::get_if<PHFramework>(&fw))
    for (int v = 0; v < ph->graph.n; ++v) mask[v] = ph->is_hyperplane(v);
  return mask;
}

Json analysis_json(const FrameworkDocument& doc, const TolerancePolicy& tol, bool redundant) {
  Json j = Json::object();
  j["kind"] = "report";
  j["version"] = kDocumentVersion;
  const RigidityReport r = analyze(doc.fw, {tol, redundant});
  j["analysis"] = report_to_json(r);
  if (doc.group) {
    j["forced"] = report_to_json(forced_rigidity(doc.fw, *doc.group, doc.action, TolerancePolicy{tol.relative_tol}));
    const SymmetricGraph sg{graph_of(doc.fw), *doc.group, doc.action};
    const VerdictContext ctx{space_of(doc.fw), doc.group->dim() - (space_of(doc.fw) == Space::spherical ? 1 : 0),
                             hyperplane_mask(doc.fw)};
    j["combinatorial"] = report_to_json(combinatorial_verdict(sg, ctx));
  }
  return j;
}

int cmd_analyze(const std::string& input, const std::string& out, double tol, bool exact, bool redundant) {
  const FrameworkDocument doc = framework_from_json(read_document(input));
  emit(analysis_json(doc, policy(tol, exact), redundant), out);
  return kExitOk;
}

Subgroup choose_subgroup(const SymmetryGroup& g, const std::string& spec) {
  if (spec == "trivial") return Subgroup{{0}};
  if (spec == "proper") {
    Subgroup h;
    for (int a = 0; a < g.order(); ++a)
      if (g.rep(a).determinant() > 0) h.members.push_back(a);
    return h;
  }
  if (!spec.empty()) return subgroup_generated(g, parse_ids(spec));
  const auto all = index2_subgroups(g);
  if (all.empty()) throw Error(ErrorCode::NotIndex2, "no index-2 subgroup");
  if (all.size() > 1) throw Error(ErrorCode::InvalidArgument, "several index-2 subgroups; pass --subgroup");
  return all.front();
}

Matrix parse_matrix(const std::string& text, int dim) {
  const Json j = parse_document(text);
  if (!j.is_array() || static_cast<int>(j.size()) != dim) {
    throw Error(ErrorCode::InvalidArgument, "--matrix needs " + std::to_string(dim) + " rows");
  }
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) {
      throw Error(ErrorCode::InvalidArgument, "--matrix row " + std::to_string(r) + " has the wrong length");
    }
    for (int c = 0; c < dim; ++c) m(r, c) = number_from_json(j[r][c], "/matrix");
  }
  return m;
}

const SphericalFramework& need_sphere(const FrameworkDocument& doc, const std::string& op) {
  const auto* s = std::get_if<SphericalFramework>(&doc.fw);
  if (!s) throw Error(ErrorCode::InvalidArgument, op + " needs a spherical framework");
  return *s;
}

void expect_equal(const std::string& what, long long a, long long b) {
  if (a != b) throw CheckFailed(what + ": " + std::to_string(a) + " before, " + std::to_string(b) + " after");
}

struct TransferArgs {
  std::string op;
  std::string vertices;
  std::string subgroup;
  std::string matrix;
  bool quarter = false;
  bool check = false;
};

int cmd_transfer(const std::string& input, const std::string& out, const TransferArgs& a, double tol_flag) {
  const FrameworkDocument doc = framework_from_json(read_document(input));
  const TolerancePolicy tol = policy(tol_flag, false);
  auto sym = [&]() -> std::optional<Symmetry> {
    if (!doc.group) return std::nullopt;
    return Symmetry{*doc.group, doc.action};
  };
  auto gap = [&](const Framework& fw) {
    const RigidityReport r = analyze(fw, {tol, false});
    return r.nullity - r.trivial_dim;
  };
  FrameworkDocument res;
  if (a.op == "invert") {
    const SphericalFramework& s = need_sphere(doc, a.op);
    res = {partial_inversion(s, parse_ids(a.vertices), sym()), doc.group, doc.action};
    if (a.check) {
      expect_equal("rank", rank(rigidity_matrix(doc.fw), tol), rank(rigidity_matrix(res.fw), tol));
    }
  } else if (a.op == "to-sphere") {
    const auto* ph = std::get_if<PHFramework>(&doc.fw);
    if (!ph) throw Error(ErrorCode::InvalidArgument, "to-sphere needs a point-hyperplane framework");
    res.fw = project_ph_to_sphere(*ph);
    if (doc.group) {
      res.group = augment(*doc.group);
      // A hyperplane fixed with its normal reversed lands on its own antipode.
      if (!validate_symmetric(res.fw, *res.group, doc.action)) {
        throw Error(ErrorCode::NotSymmetric,
                    "spherical image is not symmetric (a group element reverses a fixed hyperplane normal)");
      }
    }
    res.action = doc.action;
  } else if (a.op == "to-ph") {
    const SphericalFramework& s = need_sphere(doc, a.op);
    res.fw = project_sphere_to_ph(s, sym());
    if (doc.group) res.group = restrict_group(*doc.group);
    res.action = doc.action;
  } else if (a.op == "pair") {
    const SphericalFramework& s = need_sphere(doc, a.op);
    if (!doc.group) throw Error(ErrorCode::InvalidArgument, "pair needs a group");
    const Subgroup h = choose_subgroup(*doc.group, a.subgroup);
    SymmetricSpherical p = pairing_transform(s, *doc.group, doc.action, h);
    if (a.check) {
      expect_equal("full rank", rank(rigidity_matrix(doc.fw), tol), rank(rigidity_matrix(p.fw), tol));
      expect_equal("orbit rank", rank(orbit_matrix_spherical(s, *doc.group, doc.action).matrix, tol),
                   rank(orbit_matrix_spherical(p.fw, p.group, p.action).matrix, tol));
    }
    res = {p.fw, p.group, p.action};
  } else if (a.op == "double-cover") {
    const SphericalFramework& s = need_sphere(doc, a.op);
    const SymmetryGroup g = doc.group ? *doc.group : trivial_group(s.d + 1);
    std::vector<Perm> act = doc.action;
    if (!doc.group) {
      act = {Perm(s.graph.n)};
      for (int v = 0; v < s.graph.n; ++v) act[0][v] = v;
    }
    SymmetricSpherical c = double_cover(s, g, act);
    if (a.check) {
      const ForcedReport before = forced_rigidity(s, g, act, tol);
      const ForcedReport after = forced_rigidity(c.fw, c.group, c.action, tol);
      expect_equal("forced verdict", before.forced_rigid, after.forced_rigid);
      if (analyze(c.fw, {tol, false}).is_inf_rigid) throw CheckFailed("double cover reported rigid");
    }
    res = {c.fw, c.group, c.action};
  } else if (a.op == "rotate") {
    const SphericalFramework& s = need_sphere(doc, a.op);
    const Matrix q = a.quarter ? quarter_turn(s.d + 1) : parse_matrix(a.matrix, s.d + 1);
    res.fw = rotate(s, q);
    if (doc.group) res.group = conjugate(*doc.group, q);
    res.action = doc.action;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown --op '" + a.op + "'");
  }
  if (a.check && (a.op == "to-sphere" || a.op == "to-ph" || a.op == "rotate")) {
    expect_equal("nullity minus trivial", gap(doc.fw), gap(res.fw));
    if (doc.group) {
      const ForcedReport b = forced_rigidity(doc.fw, *doc.group, doc.action, tol);
      const ForcedReport c = forced_rigidity(res.fw, *res.group, res.action, tol);
      expect_equal("forced nullity minus trivial", b.forced_nullity - b.trivial_symmetric_dim,
                   c.forced_nullity - c.trivial_symmetric_dim);
    }
  }
  emit(framework_to_json(res), out);
  return kExitOk;
}

int cmd_gain(const std::string& input, const std::string& out, int k, int l, int m, bool find_tight) {
  if (k < 1 || m < 0 || m > l || l > 2 * k - 1) {
    throw Error(ErrorCode::InvalidArgument, "need k >= 1 and 0 <= m <= l <= 2k-1");
  }
  const GainGraph gg = gaingraph_from_json(read_document(input));
  Json g = Json::object();
  g["k"] = k;
  g["l"] = l;
  g["m"] = m;
  const SparsityVerdict v = is_gain_sparse(gg, k, l, m);
  g["sparse"] = v.sparse;
  g["tight"] = v.sparse && v.tight;
  if (!v.sparse) g["violating"] = v.violating;
  if (find_tight) {
    const auto w = has_spanning_gain_tight(gg, k, l, m);
    g["spanning_tight"] = w.has_value();
    if (w) g["witness"] = *w;
  }
  emit(Json{{"kind", "report"}, {"version", kDocumentVersion}, {"gain", g}}, out);
  return kExitOk;
}

int cmd_sample(const std::string& input, const std::string& out, const std::string& space_name, int d,
               std::uint64_t seed, const std::string& special_ids, bool regular, double tol_flag) {
  const Json j = read_document(input);
  SymmetricGraph sg;
  const std::string kind = j.value("kind", "");
  if (kind == "gaingraph") {
    sg = lift(gaingraph_from_json(j));
  } else if (kind == "graph") {
    const Graph g = graph_from_json(j);
    sg = trivially_symmetric(g, space_name == "spherical" ? d + 1 : d);
  } else {
    throw Error(ErrorCode::InvalidDocument, "/kind: expected 'gaingraph' or 'graph'");
  }
  Space space = Space::euclidean;
  if (space_name == "spherical") space = Space::spherical;
  else if (space_name == "ph") space = Space::ph;
  else if (space_name != "euclidean") throw Error(ErrorCode::InvalidArgument, "unknown --space");
  if (sg.group.dim() != (space == Space::spherical ? d + 1 : d)) {
    throw Error(ErrorCode::DimensionMismatch, "group dimension does not fit --space/--d");
  }
  std::vector<char> special(sg.graph.n, 0);
  for (int v : parse_ids(special_ids)) {
    if (v < 0 || v >= sg.graph.n) throw Error(ErrorCode::InvalidArgument, "--special vertex out of range");
    special[v] = 1;
  }
  FrameworkDocument doc;
  doc.fw = regular ? sample_regular(sg, space, d, special, seed, 3, policy(tol_flag, false)).fw
                   : sample_symmetric(sg, space, d, special, seed);
  if (sg.group.order() > 1) {
    doc.group = sg.group;
    doc.action = sg.action;
  }
  emit(framework_to_json(doc), out);
  return kExitOk;
}

int cmd_verify(const std::string& suite, int trials, std::uint64_t seed, double tol_flag, int threads) {
  SuiteOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.tol = policy(tol_flag, false).relative_tol;
  opt.threads = threads;
  std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
  int failures = 0;
  for (const auto& name : names) {
    const SuiteResult r = run_suite(name, opt);
    failures += r.failures + (r.cases == 0 ? 1 : 0);
    std::cout << name << ": " << (r.cases - r.failures) << "/" << r.cases << " pass";
    if (!r.summary.empty()) std::cout << " (" << r.summary << ")";
    std::cout << "\n";
    for (const auto& msg : r.messages) std::cout << "  " << msg << "\n";
  }
  return failures == 0 ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetric rigidity toolkit"};
  app.require_subcommand(1);
  double tol = 0.0;
  std::string out;

  auto* analyze_cmd = app.add_subcommand("analyze", "Rank analysis of a framework document");
  std::string a_input;
  bool a_exact = false, a_redundant = false;
  analyze_cmd->add_option("input", a_input, "framework file")->required();
  analyze_cmd->add_option("-o,--output", out, "report file (stdout by default)");
  analyze_cmd->add_option("--tol", tol, "relative rank tolerance");
  analyze_cmd->add_flag("--exact", a_exact, "exact rational rank");
  analyze_cmd->add_flag("--redundant", a_redundant, "list redundant edges");

  auto* transfer_cmd = app.add_subcommand("transfer", "Apply a transfer operator");
  std::string t_input;
  TransferArgs targs;
  transfer_cmd->add_option("input", t_input, "framework file")->required();
  transfer_cmd->add_option("--op", targs.op, "invert|to-sphere|to-ph|pair|double-cover|rotate")
      ->required()
      ->check(CLI::IsMember({"invert", "to-sphere", "to-ph", "pair", "double-cover", "rotate"}));
  transfer_cmd->add_option("--vertices", targs.vertices, "comma separated vertices for invert");
  transfer_cmd->add_option("--subgroup", targs.subgroup, "trivial, proper, or generating element ids");
  transfer_cmd->add_option("--matrix", targs.matrix, "rotation as a JSON array of rows");
  transfer_cmd->add_flag("--quarter-turn", targs.quarter, "rotate by the (first, last) quarter turn");
  transfer_cmd->add_flag("--check", targs.check, "re-analyze and assert the preservation property");
  transfer_cmd->add_option("-o,--output", out, "framework file (stdout by default)");
  transfer_cmd->add_option("--tol", tol, "relative rank tolerance");

  auto* gain_cmd = app.add_subcommand("gain", "Gain-sparsity counts");
  std::string g_input;
  int k = 2, l = 3, m = 1;
  bool find_tight = false;
  gain_cmd->add_option("input", g_input, "gaingraph file")->required();
  gain_cmd->add_option("--k", k, "k");
  gain_cmd->add_option("--l", l, "l");
  gain_cmd->add_option("--m", m, "m");
  gain_cmd->add_flag("--find-tight", find_tight, "search for a spanning tight subgraph");
  gain_cmd->add_option("-o,--output", out, "report file (stdout by default)");

  auto* sample_cmd = app.add_subcommand("sample", "Symmetric random realization");
  std::string s_input, s_space = "euclidean", s_special;
  int s_d = 2;
  std::uint64_t s_seed = 1;
  bool s_regular = false;
  sample_cmd->add_option("input", s_input, "gaingraph or graph file")->required();
  sample_cmd->add_option("--space", s_space, "euclidean|spherical|ph");
  sample_cmd->add_option("--d", s_d, "dimension");
  sample_cmd->add_option("--seed", s_seed, "seed");
  sample_cmd->add_option("--special", s_special, "equator or hyperplane vertices, comma separated");
  sample_cmd->add_flag("--regular", s_regular, "best of three seeds by rank");
  sample_cmd->add_option("-o,--output", out, "framework file (stdout by default)");
  sample_cmd->add_option("--tol", tol, "relative rank tolerance");

  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  std::string suite = "all";
  int trials = 0, threads = 0;
  std::uint64_t v_seed = 1;
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify_cmd->add_option("--suite", suite, "suite name or all")->check(CLI::IsMember(choices));
  verify_cmd->add_option("--trials", trials, "trials per suite (0 = default)");
  verify_cmd->add_option("--seed", v_seed, "seed");
  verify_cmd->add_option("--tol", tol, "relative rank tolerance");
  verify_cmd->add_option("--threads", threads, "worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(a_input, out, tol, a_exact, a_redundant);
    if (*transfer_cmd) return cmd_transfer(t_input, out, targs, tol);
    if (*gain_cmd) return cmd_gain(g_input, out, k, l, m, find_tight);
    if (*sample_cmd) return cmd_sample(s_input, out, s_space, s_d, s_seed, s_special, s_regular, tol);
    if (*verify_cmd) return cmd_verify(suite, trials, v_seed, tol, threads);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
