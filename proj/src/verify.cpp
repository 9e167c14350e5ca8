#include "symrigid/verify.hpp"

#include "symrigid/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace symrigid {

namespace {

struct Outcome {
  int cases = 1;
  int failures = 0;
  std::string message;
};

Outcome pass(int cases = 1) { return Outcome{cases, 0, {}}; }
Outcome fail(std::string msg, int cases = 1) { return Outcome{cases, 1, std::move(msg)}; }

using TrialFn = std::function<Outcome(int)>;

// Runs trials on a pool; results stay in trial order.
std::vector<Outcome> run_trials(int n, int threads, const TrialFn& fn) {
  std::vector<Outcome> out(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int t = next++; t < n; t = next++) {
      try {
        out[t] = fn(t);
      } catch (const std::exception& e) {
        out[t] = fail(std::string("exception: ") + e.what());
      }
    }
  };
  int k = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  k = std::clamp(k, 1, std::max(1, n));
  if (k == 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (int i = 0; i < k; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

void absorb(SuiteResult& res, const std::vector<Outcome>& outs, const std::string& label) {
  for (std::size_t t = 0; t < outs.size(); ++t) {
    res.cases += outs[t].cases;
    res.failures += outs[t].failures;
    if (outs[t].failures > 0 && res.messages.size() < 20) {
      res.messages.push_back(label + " trial " + std::to_string(t) + ": " + outs[t].message);
    }
  }
}

int pick(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Vector random_unit(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = nd(rng);
  return v.normalized();
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  Graph g(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng, p)) g.add_edge(i, j);
  return g;
}

std::vector<char> random_orbit_subset(const SymmetricGraph& sg, std::mt19937_64& rng, double p) {
  std::vector<char> mask(sg.graph.n, 0);
  for (const auto& orb : sg.orbits()) {
    if (!coin(rng, p)) continue;
    for (int v : orb) mask[v] = 1;
  }
  return mask;
}

std::vector<int> mask_to_list(const std::vector<char>& mask) {
  std::vector<int> out;
  for (std::size_t v = 0; v < mask.size(); ++v)
    if (mask[v]) out.push_back(static_cast<int>(v));
  return out;
}

SymmetryGroup small_group(int dim, int which) {
  switch (which % 4) {
    case 0:
      return make_schoenflies(dim, "Cs");
    case 1:
      return make_schoenflies(dim, "Cn", 2);
    case 2:
      return make_schoenflies(dim, "Cn", 3);
    default:
      return make_schoenflies(dim, "Cn", 4);
  }
}

int choose2(int n) { return n * (n - 1) / 2; }

double nullity_gap(const RigidityReport& r) { return r.nullity - r.trivial_dim; }
int forced_gap(const ForcedReport& f) { return f.forced_nullity - f.trivial_symmetric_dim; }

std::string describe(const RigidityReport& r) {
  std::ostringstream os;
  os << "rank " << r.rank << " nullity " << r.nullity << " trivial " << r.trivial_dim;
  return os.str();
}

std::string describe(const ForcedReport& f) {
  std::ostringstream os;
  os << "forced nullity " << f.forced_nullity << " trivial " << f.trivial_symmetric_dim;
  return os.str();
}

// ---------------------------------------------------------------- suites

SuiteResult suite_inversion(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 100;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  auto outs = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const int d = 2 + t % 2;
    SphericalFramework fw;
    std::vector<int> subset;
    std::optional<Symmetry> sym;
    if ((t / 2) % 2 == 0) {
      const int n = pick(rng, 2, 8);
      fw.graph = random_graph(rng, n, 0.5);
      fw.d = d;
      for (int v = 0; v < n; ++v) {
        Vector p = random_unit(rng, d + 1);
        const bool eq = coin(rng, 0.2);
        if (eq) {
          p[d] = 0.0;
          p.normalize();
        }
        fw.p.push_back(p);
        fw.equator.push_back(eq);
        if (coin(rng, 0.5)) subset.push_back(v);
      }
    } else {
      const SymmetryGroup g = augment(small_group(d, pick(rng, 0, 2)));
      const int n0 = pick(rng, 1, std::max(1, 8 / g.order()));
      const GainGraph gg = random_gain_graph(g, n0, pick(rng, 0, 2 * n0 + 1), rng);
      const SymmetricGraph sg = lift(gg);
      const auto equator = random_orbit_subset(sg, rng, 0.2);
      fw = sample_spherical(sg, d, equator, rng());
      subset = mask_to_list(random_orbit_subset(sg, rng, 0.5));
      sym = Symmetry{sg.group, sg.action};
    }
    const SphericalFramework inv = partial_inversion(fw, subset, sym);
    const int before = rank(rigidity_matrix_spherical(fw), tol);
    const int after = rank(rigidity_matrix_spherical(inv), tol);
    if (before != after) return fail("rank " + std::to_string(before) + " -> " + std::to_string(after));
    if (inv.equator != fw.equator) return fail("equator set changed");
    if (sym && !validate_symmetric(inv, sym->group, sym->action)) return fail("symmetry lost");
    return pass();
  });
  absorb(res, outs, "inversion");
  return res;
}

PHFramework random_ph(std::mt19937_64& rng, int d, int points, int hyperplanes, double edge_p) {
  PHFramework f;
  const int n = points + hyperplanes;
  f.graph = random_graph(rng, n, edge_p);
  f.d = d;
  std::normal_distribution<double> nd;
  for (int v = 0; v < n; ++v) {
    if (v < points) {
      f.kind.push_back(VertexKind::point);
      f.coord.push_back(random_unit(rng, d) * (0.5 + std::abs(nd(rng))));
      f.offset.push_back(0.0);
    } else {
      f.kind.push_back(VertexKind::hyperplane);
      f.coord.push_back(random_unit(rng, d));
      f.offset.push_back(nd(rng));
    }
  }
  return f;
}

bool same_ph_geometry(const PHFramework& a, const PHFramework& b, double tol) {
  if (a.graph.n != b.graph.n) return false;
  for (int v = 0; v < a.graph.n; ++v) {
    if (a.kind[v] != b.kind[v]) return false;
    if (a.is_hyperplane(v)) {
      if ((a.coord[v] - b.coord[v]).norm() > tol && (a.coord[v] + b.coord[v]).norm() > tol) return false;
    } else if ((a.coord[v] - b.coord[v]).norm() > tol) {
      return false;
    }
  }
  return true;
}

SuiteResult suite_transfer(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 100;
  const AnalyzeOptions aopt{TolerancePolicy{opt.tol}, false};
  SuiteResult res;
  auto outs = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const int d = 2 + t % 2;
    const int points = pick(rng, 1, 6);
    const int hyperplanes = pick(rng, 0, 3);
    const PHFramework ph = random_ph(rng, d, points, hyperplanes, 0.6);
    const SphericalFramework s = project_ph_to_sphere(ph);
    const PHFramework back = project_sphere_to_ph(s);
    const RigidityReport a = analyze(ph, aopt), b = analyze(s, aopt), c = analyze(back, aopt);
    if (nullity_gap(a) != nullity_gap(b) || nullity_gap(a) != nullity_gap(c)) {
      return fail("ph " + describe(a) + " / sphere " + describe(b) + " / back " + describe(c));
    }
    const int expected = choose2(d + 1);
    if (!a.span_deficient && a.trivial_dim != expected) return fail("ph trivial dim " + describe(a));
    if (!b.span_deficient && b.trivial_dim != expected) return fail("sphere trivial dim " + describe(b));
    if (!same_ph_geometry(ph, back, 1e-9)) return fail("round trip moved a vertex");
    return pass();
  });
  absorb(res, outs, "transfer");
  return res;
}

struct SymmetricPH {
  PHFramework fw;
  SymmetricGraph sg;
};

SymmetricPH random_symmetric_ph(std::mt19937_64& rng, const SymmetryGroup& g, int max_points, int max_hyperplanes) {
  const int k = g.order();
  const int point_orbits = pick(rng, 1, std::max(1, max_points / k));
  const int hyper_orbits = pick(rng, 0, max_hyperplanes / k);
  const int n0 = point_orbits + hyper_orbits;
  const GainGraph gg = random_gain_graph(g, n0, pick(rng, std::max(0, n0 - 1), 2 * n0 + 1), rng);
  SymmetricGraph sg = lift(gg);
  std::vector<char> special(sg.graph.n, 0);
  for (int v = 0; v < sg.graph.n; ++v) special[v] = v / k >= point_orbits;
  PHFramework fw = sample_ph(sg, g.dim(), special, rng());
  return {std::move(fw), std::move(sg)};
}

SuiteResult suite_forced_transfer(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 100;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  auto outs = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const int d = 2 + t % 2;
    const SymmetryGroup g = small_group(d, t / 2);
    const SymmetricPH inst = random_symmetric_ph(rng, g, 6, 3);
    const SymmetryGroup lifted = augment(g);
    const SphericalFramework s = project_ph_to_sphere(inst.fw);
    const PHFramework back = project_sphere_to_ph(s, Symmetry{lifted, inst.sg.action});
    const ForcedReport a = forced_rigidity(inst.fw, g, inst.sg.action, tol);
    const ForcedReport b = forced_rigidity(s, lifted, inst.sg.action, tol);
    const ForcedReport c = forced_rigidity(back, g, inst.sg.action, tol);
    if (forced_gap(a) != forced_gap(b) || forced_gap(a) != forced_gap(c)) {
      return fail("ph " + describe(a) + " / sphere " + describe(b) + " / back " + describe(c));
    }
    return pass();
  });
  absorb(res, outs, "forced-transfer");
  return res;
}

SuiteResult suite_orbit(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 100;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  auto spherical = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const int d = 2 + t % 2;
    const SymmetryGroup g = augment(small_group(d, t / 2));
    const int n0 = pick(rng, 1, 4);
    const GainGraph gg = random_gain_graph(g, n0, pick(rng, 0, 2 * n0 + 2), rng);
    const SymmetricGraph sg = lift(gg);
    const auto equator = random_orbit_subset(sg, rng, 0.25);
    const SphericalFramework fw = sample_spherical(sg, d, equator, rng());
    const OrbitMatrix om = orbit_matrix_spherical(fw, g, sg.action);
    const int orbit_nullity = static_cast<int>(om.matrix.cols()) - rank(om.matrix, tol);
    const ForcedReport fr = forced_rigidity(fw, g, sg.action, tol);
    if (orbit_nullity != fr.forced_nullity) {
      return fail("orbit nullity " + std::to_string(orbit_nullity) + " vs " + describe(fr));
    }
    return pass();
  });
  absorb(res, spherical, "orbit/spherical");
  auto ph = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed + 7919, t);
    const int d = 2 + t % 2;
    const SymmetryGroup g = small_group(d, t / 2);
    const SymmetricPH inst = random_symmetric_ph(rng, g, 8, 4);
    const OrbitMatrix om = orbit_matrix_ph(inst.fw, g, inst.sg.action);
    const int orbit_nullity = static_cast<int>(om.matrix.cols()) - rank(om.matrix, tol);
    const ForcedReport fr = forced_rigidity(inst.fw, g, inst.sg.action, tol);
    if (orbit_nullity != fr.forced_nullity) {
      return fail("orbit nullity " + std::to_string(orbit_nullity) + " vs " + describe(fr));
    }
    return pass();
  });
  absorb(res, ph, "orbit/ph");
  return res;
}

double max_coord_gap(const SphericalFramework& a, const SphericalFramework& b) {
  double m = 0.0;
  for (std::size_t v = 0; v < a.p.size(); ++v) m = std::max(m, (a.p[v] - b.p[v]).cwiseAbs().maxCoeff());
  return m;
}

SuiteResult suite_pairing(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 20;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  std::ostringstream summary;
  const auto rows = pairing_catalog(6);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const PairingRow& row = rows[r];
    const SymmetryGroup twisted = pair_representation(row.left, row.subgroup);
    if (!same_matrix_set(conjugate(twisted, row.conjugator).reps(), row.right.reps())) {
      res.cases += 1;
      res.failures += 1;
      res.messages.push_back(row.name + ": twisted group does not match the catalog partner");
      continue;
    }
    auto outs = run_trials(trials, opt.threads, [&](int t) -> Outcome {
      auto rng = trial_rng(opt.seed + 104729 * (r + 1), t);
      const int k = row.left.order();
      const int n0 = k >= 12 ? pick(rng, 1, 2) : pick(rng, 1, 3);
      const GainGraph gg = random_gain_graph(row.left, n0, pick(rng, n0, 2 * n0 + 2), rng);
      const SymmetricGraph sg = lift(gg);
      const int d = row.left.dim() - 1;
      const SphericalFramework fw = sample_spherical(sg, d, {}, rng());
      const SymmetricSpherical q = pairing_transform(fw, row.left, sg.action, row.subgroup);
      const int full_p = rank(rigidity_matrix_spherical(fw), tol);
      const int full_q = rank(rigidity_matrix_spherical(q.fw), tol);
      const int orb_p = rank(orbit_matrix_spherical(fw, row.left, sg.action).matrix, tol);
      const int orb_q = rank(orbit_matrix_spherical(q.fw, q.group, q.action).matrix, tol);
      if (full_p != full_q) return fail("full rank " + std::to_string(full_p) + " vs " + std::to_string(full_q));
      if (orb_p != orb_q) return fail("orbit rank " + std::to_string(orb_p) + " vs " + std::to_string(orb_q));
      const SymmetricSpherical again = pairing_transform(q.fw, q.group, q.action, row.subgroup);
      if (max_coord_gap(again.fw, fw) > 1e-12) return fail("pairing twice is not the identity");
      return pass();
    });
    const int before = res.failures;
    absorb(res, outs, row.name);
    if (summary.tellp() > 0) summary << "; ";
    summary << row.name << (res.failures == before ? " ok" : " FAIL");
  }
  res.summary = summary.str();
  return res;
}

SuiteResult suite_combinatorial(const SuiteOptions& opt) {
  const TolerancePolicy tol{opt.tol};
  const auto corpus = enumerate_z2_gain_graphs(4);
  const std::vector<SymmetryGroup> groups{make_schoenflies(2, "Cn", 2), make_schoenflies(2, "Cs")};
  SuiteResult res;
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    auto outs = run_trials(static_cast<int>(corpus.size()), opt.threads, [&](int t) -> Outcome {
      GainGraph gg = corpus[t];
      gg.group = groups[gi];
      const SymmetricGraph sg = lift(gg);
      const RegularSample s = sample_regular(sg, Space::euclidean, 2, {}, opt.seed * 1000003 + t, 3, tol);
      const CombinatorialVerdict v = combinatorial_verdict(sg, {Space::euclidean, 2, {}});
      if (!v.predicted_forced_rigid || !v.predicted_inf_rigid) return fail("no prediction");
      if (*v.predicted_forced_rigid != s.forced.forced_rigid) {
        return fail("forced predicted " + std::to_string(*v.predicted_forced_rigid) + ", " + describe(s.forced));
      }
      if (*v.predicted_inf_rigid != s.full.is_inf_rigid) {
        return fail("rigid predicted " + std::to_string(*v.predicted_inf_rigid) + ", " + describe(s.full));
      }
      return pass();
    });
    absorb(res, outs, gi == 0 ? "half-turn" : "mirror");
  }
  res.summary = std::to_string(corpus.size()) + " gain graphs x 2 groups";
  return res;
}

SuiteResult suite_isostatic(const SuiteOptions& opt) {
  const TolerancePolicy tol{opt.tol};
  const auto corpus = isostatic_corpus();
  SuiteResult res;
  std::ostringstream summary;
  auto outs = run_trials(static_cast<int>(corpus.size()), opt.threads, [&](int t) -> Outcome {
    const CuratedCase& c = corpus[t];
    const RegularSample s = sample_regular(c.sg, Space::euclidean, 2, {}, opt.seed * 7919 + t, 3, tol);
    const RigidityReport full = analyze(s.fw, {tol, true});
    const CombinatorialVerdict v = combinatorial_verdict(c.sg, {Space::euclidean, 2, {}});
    if (!v.predicted_isostatic) return fail(c.name + ": no prediction");
    const bool by_deletion = full.is_inf_rigid && full.redundant_edges.empty();
    if (by_deletion != full.is_isostatic) return fail(c.name + ": deletion test disagrees with the row count");
    if (*v.predicted_isostatic != full.is_isostatic) {
      return fail(c.name + ": predicted " + std::to_string(*v.predicted_isostatic) + ", " + describe(full));
    }
    return pass();
  });
  absorb(res, outs, "isostatic");
  int predicted_true = 0;
  for (const auto& c : corpus) {
    const auto v = combinatorial_verdict(c.sg, {Space::euclidean, 2, {}});
    predicted_true += v.predicted_isostatic.value_or(false);
  }
  summary << corpus.size() << " graphs, " << predicted_true << " predicted isostatic";
  res.summary = summary.str();
  return res;
}

SuiteResult suite_pointline(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 40;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  const SymmetryGroup mirror = make_schoenflies(2, "Cs");
  const SymmetryGroup half = make_schoenflies(2, "Cn", 2);
  std::atomic<int> mirror_rigid{0}, half_iso{0};
  auto m = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const int point_orbits = pick(rng, 1, 3);
    const int n0 = point_orbits + 1;
    const GainGraph gg = random_gain_graph(mirror, n0, pick(rng, 2 * n0 - 2, 2 * n0 + 1), rng);
    const SymmetricGraph sg = lift(gg);
    std::vector<char> lines(sg.graph.n, 0);
    for (int v = 0; v < sg.graph.n; ++v) lines[v] = v / 2 == point_orbits;
    const RegularSample s = sample_regular(sg, Space::ph, 2, lines, opt.seed * 31 + t, 3, tol);
    const CombinatorialVerdict v = combinatorial_verdict(sg, {Space::ph, 2, lines});
    if (!v.predicted_forced_rigid || !v.predicted_inf_rigid) return fail("no prediction");
    if (*v.predicted_forced_rigid != s.forced.forced_rigid) return fail("forced mismatch, " + describe(s.forced));
    if (*v.predicted_inf_rigid != s.full.is_inf_rigid) return fail("rigidity mismatch, " + describe(s.full));
    mirror_rigid += s.full.is_inf_rigid;
    return pass();
  });
  absorb(res, m, "mirror/two-lines");
  auto h = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed + 15485863, t);
    const int num_lines = pick(rng, 1, 3);
    const int pairs = pick(rng, 1, 3);
    const int n = num_lines + 2 * pairs;
    Perm swap(n);
    for (int v = 0; v < num_lines; ++v) swap[v] = v;
    for (int i = 0; i < pairs; ++i) {
      swap[num_lines + 2 * i] = num_lines + 2 * i + 1;
      swap[num_lines + 2 * i + 1] = num_lines + 2 * i;
    }
    std::vector<std::vector<std::pair<int, int>>> orbits;
    std::set<std::pair<int, int>> seen;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (seen.count({a, b})) continue;
        std::pair<int, int> img{std::min(swap[a], swap[b]), std::max(swap[a], swap[b])};
        std::vector<std::pair<int, int>> orb{{a, b}};
        seen.insert({a, b});
        if (img != std::make_pair(a, b)) {
          orb.push_back(img);
          seen.insert(img);
        }
        orbits.push_back(orb);
      }
    std::shuffle(orbits.begin(), orbits.end(), rng);
    const int target = std::max(1, 2 * n - 3 + pick(rng, -1, 1));
    Graph g(n, {});
    for (const auto& orb : orbits) {
      if (g.num_edges() + static_cast<int>(orb.size()) > target) continue;
      for (auto [a, b] : orb) g.add_edge(a, b);
    }
    const SymmetricGraph sg = make_symmetric_graph(g, half, {swap});
    std::vector<char> lines(n, 0);
    for (int v = 0; v < num_lines; ++v) lines[v] = 1;
    const RegularSample s = sample_regular(sg, Space::ph, 2, lines, opt.seed * 37 + t, 3, tol);
    const CombinatorialVerdict v = combinatorial_verdict(sg, {Space::ph, 2, lines});
    if (!v.predicted_isostatic) return fail("no prediction");
    if (*v.predicted_isostatic != s.full.is_isostatic) {
      return fail("isostatic predicted " + std::to_string(*v.predicted_isostatic) + ", " + describe(s.full));
    }
    half_iso += s.full.is_isostatic;
    return pass();
  });
  absorb(res, h, "half-turn/fixed-lines");
  res.summary = std::to_string(mirror_rigid.load()) + "/" + std::to_string(trials) + " mirror instances rigid, " +
                std::to_string(half_iso.load()) + "/" + std::to_string(trials) + " half-turn instances isostatic";
  return res;
}

struct CoverRow {
  std::string name;
  SymmetryGroup group;
};

std::vector<CoverRow> double_cover_rows() {
  std::vector<CoverRow> rows;
  rows.push_back({"C1->Ci", trivial_group(3)});
  rows.push_back({"Cs->C2h", make_schoenflies(3, "Cs")});
  for (int n : {3, 5}) rows.push_back({"C" + std::to_string(n) + "->S" + std::to_string(2 * n), make_schoenflies(3, "Cn", n)});
  for (int n : {2, 4, 6}) {
    rows.push_back({"C" + std::to_string(n) + "->C" + std::to_string(n) + "h", make_schoenflies(3, "Cn", n)});
  }
  rows.push_back({"C3v->D3d", make_schoenflies(3, "Cnv", 3)});
  rows.push_back({"C2v->D2h", make_schoenflies(3, "Cnv", 2)});
  rows.push_back({"C3h->C6h", make_schoenflies(3, "Cnh", 3)});
  rows.push_back({"S4->C4h", make_schoenflies(3, "S2n", 2)});
  rows.push_back({"D3->D3d", make_schoenflies(3, "Dn", 3)});
  rows.push_back({"D2->D2h", make_schoenflies(3, "Dn", 2)});
  return rows;
}

SuiteResult suite_doublecover(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 50;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  const auto rows = double_cover_rows();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const CoverRow& row = rows[r];
    auto outs = run_trials(trials, opt.threads, [&](int t) -> Outcome {
      auto rng = trial_rng(opt.seed + 611953 * (r + 1), t);
      const int k = row.group.order();
      const int n0 = pick(rng, 1, std::max(1, 8 / k));
      const GainGraph gg = random_gain_graph(row.group, n0, pick(rng, n0, 3 * n0 + 1), rng);
      const SymmetricGraph sg = lift(gg);
      const SphericalFramework fw = sample_spherical(sg, 2, {}, rng());
      const SymmetricSpherical cover = double_cover(fw, row.group, sg.action);
      if (cover.group.order() != 2 * k || !cover.group.contains_inversion()) return fail("bad cover group");
      const ForcedReport a = forced_rigidity(fw, row.group, sg.action, tol);
      const ForcedReport b = forced_rigidity(cover.fw, cover.group, cover.action, tol);
      if (a.forced_rigid != b.forced_rigid) return fail("forced verdict " + describe(a) + " vs " + describe(b));
      const RigidityReport full = analyze(cover.fw, {tol, false});
      if (full.is_inf_rigid) return fail("double cover reported rigid");
      return pass();
    });
    absorb(res, outs, row.name);
  }
  res.summary = std::to_string(rows.size()) + " pairing rows";
  return res;
}

SuiteResult suite_epsilon(const SuiteOptions& opt) {
  const int trials = opt.trials > 0 ? opt.trials : 100;
  const TolerancePolicy tol{opt.tol};
  SuiteResult res;
  std::vector<std::pair<int, int>> graphs;  // (n, edge mask)
  for (int n = 1; n <= 4; ++n)
    for (int mask = 0; mask < (1 << choose2(n)); ++mask) graphs.push_back({n, mask});
  auto outs = run_trials(static_cast<int>(graphs.size()), opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed, t);
    const auto [n, mask] = graphs[t];
    SphericalFramework fw;
    fw.d = 2;
    fw.graph = Graph(n, {});
    int bit = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++bit)
        if (mask >> bit & 1) fw.graph.add_edge(i, j);
    for (int v = 0; v < n; ++v) {
      fw.p.push_back(random_unit(rng, 3));
      fw.equator.push_back(0);
    }
    const Matrix basic = basic_spherical_matrix(fw);
    const int r0 = rank(basic, tol);
    int cases = 0;
    for (int signs = 0; signs < (1 << n); ++signs, ++cases) {
      std::vector<int> eps(n), flipped;
      for (int v = 0; v < n; ++v) {
        eps[v] = (signs >> v & 1) ? -1 : 1;
        if (eps[v] < 0) flipped.push_back(v);
      }
      const Matrix m = epsilon_transform(basic, fw.graph, 3, eps);
      if (rank(m, tol) != r0) return fail("rank changed under signs " + std::to_string(signs), cases + 1);
      const Matrix direct = basic_spherical_matrix(partial_inversion(fw, flipped));
      if ((direct - m).cwiseAbs().maxCoeff() > 1e-12) return fail("transform differs from inversion", cases + 1);
    }
    return pass(cases);
  });
  absorb(res, outs, "epsilon/exhaustive");
  auto random = run_trials(trials, opt.threads, [&](int t) -> Outcome {
    auto rng = trial_rng(opt.seed + 1299709, t);
    SphericalFramework fw;
    fw.d = pick(rng, 2, 3);
    fw.graph = random_graph(rng, pick(rng, 2, 8), 0.5);
    for (int v = 0; v < fw.graph.n; ++v) {
      fw.p.push_back(random_unit(rng, fw.d + 1));
      fw.equator.push_back(0);
    }
    const int a = rank(basic_spherical_matrix(fw), tol);
    const int b = rank(rigidity_matrix_cone(fw), tol);
    if (a != b) return fail("basic rank " + std::to_string(a) + " vs standard " + std::to_string(b));
    return pass();
  });
  absorb(res, random, "epsilon/standard");
  return res;
}

SuiteResult suite_fixture(const SuiteOptions& opt) {
  SuiteResult res;
  const Fixture fx = k4_minus_edge_fixture();
  const TolerancePolicy exact{opt.tol, RankMode::exact_rational};
  const RigidityReport r = analyze(fx.fw, {exact, true});
  const ForcedReport f = forced_rigidity(fx.fw, fx.sg.group, fx.sg.action, TolerancePolicy{opt.tol});
  const GainGraph q = quotient_gain_graph(fx.sg);
  const SparsityVerdict s231 = is_gain_sparse(q, 2, 3, 1);
  std::vector<std::pair<std::string, bool>> checks{
      {"rank 5", r.rank == 5},
      {"nullity 3", r.nullity == 3},
      {"trivial 3", r.trivial_dim == 3},
      {"inf-rigid", r.is_inf_rigid},
      {"isostatic", r.is_isostatic && r.redundant_edges.empty()},
      {"forced-rigid", f.forced_rigid},
      {"quotient (2,3,1)-tight", s231.sparse && s231.tight},
  };
  std::ostringstream os;
  for (const auto& [what, ok] : checks) {
    ++res.cases;
    if (!ok) {
      ++res.failures;
      res.messages.push_back("fixture: " + what + " failed");
    }
    if (os.tellp() > 0) os << "; ";
    os << what << (ok ? " ok" : " FAIL");
  }
  res.summary = os.str();
  return res;
}

const std::map<std::string, std::function<SuiteResult(const SuiteOptions&)>>& registry() {
  static const std::map<std::string, std::function<SuiteResult(const SuiteOptions&)>> r{
      {"inversion", suite_inversion},
      {"transfer", suite_transfer},
      {"forced-transfer", suite_forced_transfer},
      {"orbit", suite_orbit},
      {"pairing", suite_pairing},
      {"combinatorial", suite_combinatorial},
      {"isostatic", suite_isostatic},
      {"pointline", suite_pointline},
      {"doublecover", suite_doublecover},
      {"epsilon", suite_epsilon},
      {"fixture", suite_fixture},
  };
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"inversion", "transfer", "forced-transfer", "orbit", "pairing", "combinatorial",
          "isostatic", "pointline", "doublecover", "epsilon", "fixture"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  const auto& r = registry();
  auto it = r.find(name);
  if (it == r.end()) throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
  const auto start = std::chrono::steady_clock::now();
  SuiteResult res = it->second(opt);
  res.suite = name;
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

GainGraph random_gain_graph(const SymmetryGroup& group, int vertices, int edges, std::mt19937_64& rng) {
  GainGraph gg;
  gg.n = vertices;
  gg.group = group;
  const int k = group.order();
  // Canonical key: tail < head, or a loop with gain <= its inverse.
  std::set<std::tuple<int, int, int>> keys;
  int capacity = vertices * (vertices - 1) / 2 * k;
  for (int g = 1; g < k; ++g) capacity += g <= group.inv(g) ? vertices : 0;
  edges = std::min(edges, capacity);
  int attempts = 0;
  while (static_cast<int>(keys.size()) < edges && attempts++ < 100 * (edges + 1)) {
    int a = pick(rng, 0, vertices - 1), b = pick(rng, 0, vertices - 1), g = pick(rng, 0, k - 1);
    if (a == b) {
      if (g == 0) continue;
      g = std::min(g, group.inv(g));
    } else if (a > b) {
      std::swap(a, b);
      g = group.inv(g);
    }
    if (keys.insert({a, b, g}).second) gg.edges.push_back({a, b, g});
  }
  return gg;
}

std::vector<GainGraph> enumerate_z2_gain_graphs(int max_vertices) {
  const SymmetryGroup z2 = make_schoenflies(2, "Cn", 2);
  std::vector<GainGraph> out;
  for (int n = 1; n <= max_vertices; ++n) {
    struct Slot {
      int a, b, g;
    };
    std::vector<Slot> slots;
    for (int a = 0; a < n; ++a) {
      slots.push_back({a, a, 1});
      for (int b = a + 1; b < n; ++b) {
        slots.push_back({a, b, 0});
        slots.push_back({a, b, 1});
      }
    }
    const int s = static_cast<int>(slots.size());
    std::map<std::tuple<int, int, int>, int> index;
    for (int i = 0; i < s; ++i) index[{slots[i].a, slots[i].b, slots[i].g}] = i;
    std::vector<int> perm(n);
    std::vector<std::vector<int>> transforms;  // slot image per (perm, potential)
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (int phi = 0; phi < (1 << n); ++phi) {
        std::vector<int> img(s);
        for (int i = 0; i < s; ++i) {
          int a = perm[slots[i].a], b = perm[slots[i].b];
          int g = slots[i].g;
          if (a != b) g ^= (phi >> slots[i].a & 1) ^ (phi >> slots[i].b & 1);
          if (a > b) std::swap(a, b);
          img[i] = index.at({a, b, g});
        }
        transforms.push_back(std::move(img));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::set<std::uint32_t> seen;
    for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
      if (std::popcount(mask) > 2 * n) continue;
      std::uint32_t best = mask;
      for (const auto& img : transforms) {
        std::uint32_t m2 = 0;
        for (int i = 0; i < s; ++i)
          if (mask >> i & 1) m2 |= 1u << img[i];
        best = std::min(best, m2);
      }
      if (best != mask || seen.count(mask)) continue;
      seen.insert(mask);
      Graph under(n, {});
      GainGraph gg;
      gg.n = n;
      gg.group = z2;
      for (int i = 0; i < s; ++i) {
        if (!(mask >> i & 1)) continue;
        gg.edges.push_back({slots[i].a, slots[i].b, slots[i].g});
        if (slots[i].a != slots[i].b && under.find_edge(slots[i].a, slots[i].b) < 0) {
          under.add_edge(slots[i].a, slots[i].b);
        }
      }
      if (!under.is_connected()) continue;
      out.push_back(std::move(gg));
    }
  }
  return out;
}

std::vector<CuratedCase> isostatic_corpus() {
  const SymmetryGroup mirror = make_schoenflies(2, "Cs");
  const SymmetryGroup half = make_schoenflies(2, "Cn", 2);
  const SymmetryGroup three = make_schoenflies(2, "Cn", 3);
  const Graph k3 = complete_graph(3);
  const Graph k4e(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  const Graph prism(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
  const Graph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  const Graph rhombus(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  const Graph kite(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {0, 1}});
  std::vector<CuratedCase> c;
  auto add = [&](std::string name, const Graph& g, const SymmetryGroup& grp, const Perm& p) {
    c.push_back({std::move(name), make_symmetric_graph(g, grp, {p})});
  };
  add("triangle/mirror", k3, mirror, {1, 0, 2});
  add("triangle/half-turn, fixed vertex", k3, half, {1, 0, 2});
  add("triangle/three-fold", k3, three, {1, 2, 0});
  add("k4-e/half-turn", k4e, half, {1, 0, 3, 2});
  add("k4-e/mirror, free", k4e, mirror, {1, 0, 3, 2});
  add("k4-e/mirror, two fixed", k4e, mirror, {0, 1, 3, 2});
  add("k4-e/half-turn, two fixed", k4e, half, {0, 1, 3, 2});
  add("rhombus/mirror, fixed diagonal", rhombus, mirror, {1, 0, 2, 3});
  add("rhombus/mirror, swapped bar", kite, mirror, {1, 0, 2, 3});
  add("prism/mirror, swapped triangles", prism, mirror, {3, 4, 5, 0, 1, 2});
  add("prism/half-turn, swapped triangles", prism, half, {3, 4, 5, 0, 1, 2});
  add("prism/mirror, within triangles", prism, mirror, {0, 2, 1, 3, 5, 4});
  add("prism/three-fold", prism, three, {1, 2, 0, 4, 5, 3});
  add("k33/mirror", k33, mirror, {1, 0, 2, 4, 3, 5});
  add("k33/half-turn, two fixed", k33, half, {1, 0, 2, 4, 3, 5});
  add("k33/half-turn, swapped sides", k33, half, {3, 4, 5, 0, 1, 2});
  add("k4/three-fold, fixed centre", complete_graph(4), three, {1, 2, 0, 3});
  return c;
}

Fixture k4_minus_edge_fixture() {
  const Graph g(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}});
  Fixture fx;
  fx.fw.graph = g;
  fx.fw.d = 2;
  fx.fw.p = {Vector::Zero(2), Vector::Zero(2), Vector::Zero(2), Vector::Zero(2)};
  fx.fw.p[0] << 2, 1;
  fx.fw.p[1] << -2, -1;
  fx.fw.p[2] << 1, 3;
  fx.fw.p[3] << -1, -3;
  fx.sg = make_symmetric_graph(g, make_schoenflies(2, "Cn", 2), {{1, 0, 3, 2}});
  return fx;
}

}  // namespace symrigid
