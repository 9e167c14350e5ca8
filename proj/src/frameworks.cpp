#include "symrigid/frameworks.hpp"

#include "symrigid/error.hpp"

#include <cmath>
#include <random>
#include <string>

namespace symrigid {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, msg);
}

int choose2(int n) { return n * (n - 1) / 2; }

// Skew-symmetric basis E_ab - E_ba, a < b.
std::vector<Matrix> skew_basis(int dim) {
  std::vector<Matrix> out;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      Matrix s = Matrix::Zero(dim, dim);
      s(a, b) = 1.0;
      s(b, a) = -1.0;
      out.push_back(s);
    }
  return out;
}

TrivialMotions finish_trivial(const Matrix& generators, int expected) {
  TrivialMotions t;
  t.basis = range_basis(generators);
  t.expected = expected;
  t.span_deficient = t.basis.cols() < expected;
  return t;
}

}  // namespace

int PHFramework::num_points() const {
  int c = 0;
  for (VertexKind k : kind) c += k == VertexKind::point;
  return c;
}

int PHFramework::num_hyperplanes() const { return static_cast<int>(kind.size()) - num_points(); }

const Graph& graph_of(const Framework& fw) {
  return std::visit([](const auto& f) -> const Graph& { return f.graph; }, fw);
}

Space space_of(const Framework& fw) {
  if (std::holds_alternative<EuclideanFramework>(fw)) return Space::euclidean;
  if (std::holds_alternative<SphericalFramework>(fw)) return Space::spherical;
  return Space::ph;
}

int ambient_dim(const Framework& fw) {
  if (const auto* s = std::get_if<SphericalFramework>(&fw)) return s->d + 1;
  return std::visit([](const auto& f) { return f.d; }, fw);
}

void check(const EuclideanFramework& fw) {
  require(static_cast<int>(fw.p.size()) == fw.graph.n, "one point per vertex");
  for (const Vector& x : fw.p) {
    require(x.size() == fw.d, "point dimension differs from d");
    require(x.allFinite(), "non-finite coordinate");
  }
}

void check(const SphericalFramework& fw, double tol) {
  require(static_cast<int>(fw.p.size()) == fw.graph.n, "one point per vertex");
  require(static_cast<int>(fw.equator.size()) == fw.graph.n, "equator flag per vertex");
  for (int v = 0; v < fw.graph.n; ++v) {
    const Vector& x = fw.p[v];
    require(x.size() == fw.d + 1, "spherical point must have d+1 coordinates");
    require(x.allFinite(), "non-finite coordinate");
    require(std::abs(x.norm() - 1.0) < tol, "vertex " + std::to_string(v) + " is not a unit vector");
    const bool on = std::abs(x(fw.d)) < tol;
    if (on != static_cast<bool>(fw.equator[v])) {
      throw Error(ErrorCode::EquatorMismatch,
                  "equator flag of vertex " + std::to_string(v) + " disagrees with its last coordinate");
    }
  }
}

void check(const PHFramework& fw, double tol) {
  const int n = fw.graph.n;
  require(static_cast<int>(fw.kind.size()) == n && static_cast<int>(fw.coord.size()) == n &&
              static_cast<int>(fw.offset.size()) == n,
          "per-vertex data sizes differ from |V|");
  for (int v = 0; v < n; ++v) {
    require(fw.coord[v].size() == fw.d, "coordinate dimension differs from d");
    require(fw.coord[v].allFinite() && std::isfinite(fw.offset[v]), "non-finite coordinate");
    if (fw.is_hyperplane(v)) {
      require(std::abs(fw.coord[v].norm() - 1.0) < tol,
              "hyperplane " + std::to_string(v) + " normal is not a unit vector");
    }
  }
}

std::vector<char> equator_from_coords(const SphericalFramework& fw, double tol) {
  std::vector<char> out(fw.graph.n, 0);
  for (int v = 0; v < fw.graph.n; ++v) out[v] = std::abs(fw.p[v](fw.d)) < tol;
  return out;
}

namespace {
Layout uniform_layout(int n, int width) {
  Layout l;
  l.size.assign(n, width);
  l.offset.resize(n);
  for (int v = 0; v < n; ++v) l.offset[v] = v * width;
  l.total = n * width;
  return l;
}
}  // namespace

Layout layout_of(const EuclideanFramework& fw) { return uniform_layout(fw.graph.n, fw.d); }
Layout layout_of(const SphericalFramework& fw) { return uniform_layout(fw.graph.n, fw.d + 1); }

Layout layout_of(const PHFramework& fw) {
  const int n = fw.graph.n;
  Layout l;
  l.size.resize(n);
  l.offset.resize(n);
  int col = 0;
  for (int v = 0; v < n; ++v)
    if (!fw.is_hyperplane(v)) {
      l.size[v] = fw.d;
      l.offset[v] = col;
      col += fw.d;
    }
  for (int v = 0; v < n; ++v)
    if (fw.is_hyperplane(v)) {
      l.size[v] = fw.d + 1;
      l.offset[v] = col;
      col += fw.d + 1;
    }
  l.total = col;
  return l;
}

Matrix rigidity_matrix_euclidean(const EuclideanFramework& fw) {
  check(fw);
  const int d = fw.d;
  Matrix r = Matrix::Zero(fw.graph.num_edges(), d * fw.graph.n);
  for (int e = 0; e < fw.graph.num_edges(); ++e) {
    const auto [i, j] = fw.graph.edges[e];
    const Vector diff = fw.p[i] - fw.p[j];
    r.block(e, d * i, 1, d) = diff.transpose();
    r.block(e, d * j, 1, d) = -diff.transpose();
  }
  return r;
}

Matrix rigidity_matrix_spherical(const SphericalFramework& fw) {
  check(fw, 1e-9);
  const int w = fw.d + 1;
  const int m = fw.graph.num_edges();
  Matrix r = Matrix::Zero(m + fw.graph.n, w * fw.graph.n);
  for (int e = 0; e < m; ++e) {
    const auto [i, j] = fw.graph.edges[e];
    r.block(e, w * i, 1, w) = fw.p[j].transpose();
    r.block(e, w * j, 1, w) = fw.p[i].transpose();
  }
  for (int v = 0; v < fw.graph.n; ++v) r.block(m + v, w * v, 1, w) = fw.p[v].transpose();
  return r;
}

Matrix rigidity_matrix_cone(const SphericalFramework& fw) {
  check(fw, 1e-9);
  const int w = fw.d + 1;
  const int m = fw.graph.num_edges();
  Matrix r = Matrix::Zero(m + fw.graph.n, w * fw.graph.n);
  for (int e = 0; e < m; ++e) {
    const auto [i, j] = fw.graph.edges[e];
    const Vector diff = fw.p[i] - fw.p[j];
    r.block(e, w * i, 1, w) = diff.transpose();
    r.block(e, w * j, 1, w) = -diff.transpose();
  }
  for (int v = 0; v < fw.graph.n; ++v) r.block(m + v, w * v, 1, w) = fw.p[v].transpose();
  return r;
}

Matrix basic_spherical_matrix(const SphericalFramework& fw) { return rigidity_matrix_spherical(fw); }

Matrix rigidity_matrix_ph(const PHFramework& fw) {
  check(fw, 1e-9);
  const int d = fw.d;
  const Layout lay = layout_of(fw);
  const int m = fw.graph.num_edges();
  std::vector<int> hyper;
  for (int v = 0; v < fw.graph.n; ++v)
    if (fw.is_hyperplane(v)) hyper.push_back(v);
  Matrix r = Matrix::Zero(m + static_cast<int>(hyper.size()), lay.total);
  for (int e = 0; e < m; ++e) {
    int i = fw.graph.edges[e].u, j = fw.graph.edges[e].v;
    const bool hi = fw.is_hyperplane(i), hj = fw.is_hyperplane(j);
    if (!hi && !hj) {
      const Vector diff = fw.coord[i] - fw.coord[j];
      r.block(e, lay.offset[i], 1, d) = diff.transpose();
      r.block(e, lay.offset[j], 1, d) = -diff.transpose();
    } else if (hi && hj) {
      r.block(e, lay.offset[i], 1, d) = fw.coord[j].transpose();
      r.block(e, lay.offset[j], 1, d) = fw.coord[i].transpose();
    } else {
      if (hi) std::swap(i, j);  // i is the point, j the hyperplane
      r.block(e, lay.offset[i], 1, d) = fw.coord[j].transpose();
      r.block(e, lay.offset[j], 1, d) = fw.coord[i].transpose();
      r(e, lay.offset[j] + d) = 1.0;
    }
  }
  for (std::size_t h = 0; h < hyper.size(); ++h) {
    const int v = hyper[h];
    r.block(m + static_cast<int>(h), lay.offset[v], 1, d) = fw.coord[v].transpose();
  }
  return r;
}

Matrix rigidity_matrix(const Framework& fw) {
  struct V {
    Matrix operator()(const EuclideanFramework& f) const { return rigidity_matrix_euclidean(f); }
    Matrix operator()(const SphericalFramework& f) const { return rigidity_matrix_spherical(f); }
    Matrix operator()(const PHFramework& f) const { return rigidity_matrix_ph(f); }
  };
  return std::visit(V{}, fw);
}

int edge_row_count(const Framework& fw) { return graph_of(fw).num_edges(); }

TrivialMotions trivial_motion_basis(const EuclideanFramework& fw) {
  const int d = fw.d, n = fw.graph.n;
  const auto skews = skew_basis(d);
  Matrix gen = Matrix::Zero(d * n, d + static_cast<int>(skews.size()));
  for (int v = 0; v < n; ++v) {
    for (int t = 0; t < d; ++t) gen(d * v + t, t) = 1.0;
    for (std::size_t s = 0; s < skews.size(); ++s) gen.block(d * v, d + s, d, 1) = skews[s] * fw.p[v];
  }
  return finish_trivial(gen, choose2(d + 1));
}

TrivialMotions trivial_motion_basis(const SphericalFramework& fw) {
  const int w = fw.d + 1, n = fw.graph.n;
  const auto skews = skew_basis(w);
  Matrix gen = Matrix::Zero(w * n, static_cast<int>(skews.size()));
  for (int v = 0; v < n; ++v)
    for (std::size_t s = 0; s < skews.size(); ++s) gen.block(w * v, s, w, 1) = skews[s] * fw.p[v];
  return finish_trivial(gen, choose2(w));
}

TrivialMotions trivial_motion_basis(const PHFramework& fw) {
  const int d = fw.d, n = fw.graph.n;
  const Layout lay = layout_of(fw);
  const auto skews = skew_basis(d);
  const int k = static_cast<int>(skews.size());
  Matrix gen = Matrix::Zero(lay.total, d + k);
  for (int v = 0; v < n; ++v) {
    const int off = lay.offset[v];
    if (fw.is_hyperplane(v)) {
      // translation t: (a', r') = (0, -<a, t>); rotation S: (S a, 0)
      for (int t = 0; t < d; ++t) gen(off + d, t) = -fw.coord[v](t);
      for (int s = 0; s < k; ++s) gen.block(off, d + s, d, 1) = skews[s] * fw.coord[v];
    } else {
      for (int t = 0; t < d; ++t) gen(off + t, t) = 1.0;
      for (int s = 0; s < k; ++s) gen.block(off, d + s, d, 1) = skews[s] * fw.coord[v];
    }
  }
  return finish_trivial(gen, choose2(d + 1));
}

TrivialMotions trivial_motion_basis(const Framework& fw) {
  return std::visit([](const auto& f) { return trivial_motion_basis(f); }, fw);
}

RigidityReport analyze(const Framework& fw, const AnalyzeOptions& opt) {
  const Matrix r = rigidity_matrix(fw);
  const TrivialMotions triv = trivial_motion_basis(fw);
  RigidityReport rep;
  rep.rows = static_cast<int>(r.rows());
  rep.cols = static_cast<int>(r.cols());
  rep.rank = rank(r, opt.tol);
  rep.nullity = rep.cols - rep.rank;
  rep.trivial_dim = static_cast<int>(triv.basis.cols());
  rep.span_deficient = triv.span_deficient;
  rep.is_inf_rigid = rep.nullity == rep.trivial_dim;
  const int m = edge_row_count(fw);
  const double scale = r.rows() > 0 ? r.cwiseAbs().maxCoeff() : 0.0;
  for (int e = 0; e < m; ++e)
    if (r.row(e).cwiseAbs().maxCoeff() <= 1e-12 * std::max(scale, 1.0)) rep.degenerate_edges.push_back(e);
  // Normalization rows are independent, so every edge row is essential
  // exactly when all rows are independent.
  rep.is_isostatic = rep.is_inf_rigid && rep.rank == rep.rows;
  if (opt.list_redundant) {
    for (int e = 0; e < m; ++e) {
      Matrix without(r.rows() - 1, r.cols());
      without.topRows(e) = r.topRows(e);
      without.bottomRows(r.rows() - e - 1) = r.bottomRows(r.rows() - e - 1);
      if (rank(without, opt.tol) == rep.rank) rep.redundant_edges.push_back(e);
    }
  }
  return rep;
}

namespace {

bool close_vec(const Vector& a, const Vector& b, double tol) {
  return a.size() == b.size() && (a - b).cwiseAbs().maxCoeff() < tol;
}

void check_group_fit(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action) {
  if (group.dim() != ambient_dim(fw)) {
    throw Error(ErrorCode::DimensionMismatch, "group dimension " + std::to_string(group.dim()) +
                                                  " differs from ambient dimension " +
                                                  std::to_string(ambient_dim(fw)));
  }
  if (static_cast<int>(action.size()) != group.order()) {
    throw Error(ErrorCode::DimensionMismatch, "action needs one permutation per element");
  }
  for (const Perm& p : action)
    if (static_cast<int>(p.size()) != graph_of(fw).n) {
      throw Error(ErrorCode::DimensionMismatch, "permutation size differs from |V|");
    }
}

}  // namespace

bool validate_symmetric(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                        double tol) {
  check_group_fit(fw, group, action);
  const Graph& graph = graph_of(fw);
  for (int g = 0; g < group.order(); ++g) {
    const Matrix& t = group.rep(g);
    for (int v = 0; v < graph.n; ++v) {
      const int w = action[g][v];
      if (const auto* e = std::get_if<EuclideanFramework>(&fw)) {
        if (!close_vec(t * e->p[v], e->p[w], tol)) return false;
      } else if (const auto* s = std::get_if<SphericalFramework>(&fw)) {
        if (!close_vec(t * s->p[v], s->p[w], tol)) return false;
        if (s->equator[v] != s->equator[w]) return false;
      } else {
        const auto& ph = std::get<PHFramework>(fw);
        if (ph.kind[v] != ph.kind[w]) return false;
        const Vector img = t * ph.coord[v];
        if (!ph.is_hyperplane(v)) {
          if (!close_vec(img, ph.coord[w], tol)) return false;
          continue;
        }
        const bool plus = close_vec(img, ph.coord[w], tol) && std::abs(ph.offset[v] - ph.offset[w]) < tol;
        const bool minus = close_vec(img, -ph.coord[w], tol) && std::abs(ph.offset[v] + ph.offset[w]) < tol;
        if (!plus && !minus) return false;
      }
    }
  }
  return true;
}

int hyperplane_sign(const PHFramework& fw, const SymmetryGroup& group, const std::vector<Perm>& action, int g,
                    int v) {
  if (!fw.is_hyperplane(v)) return 1;
  const Vector img = group.rep(g) * fw.coord[v];
  return img.dot(fw.coord[action[g][v]]) >= 0.0 ? 1 : -1;
}

PHFramework normalize_hyperplane_signs(const PHFramework& fw, const SymmetryGroup& group,
                                       const std::vector<Perm>& action) {
  PHFramework out = fw;
  const int n = fw.graph.n;
  std::vector<char> done(n, 0);
  for (int v = 0; v < n; ++v) {
    if (done[v] || !fw.is_hyperplane(v)) continue;
    for (int g = 0; g < group.order(); ++g) {
      const int w = action[g][v];
      if (done[w]) continue;
      done[w] = 1;
      if (w == v) continue;
      if (hyperplane_sign(fw, group, action, g, v) < 0) {
        out.coord[w] = -fw.coord[w];
        out.offset[w] = -fw.offset[w];
      }
    }
  }
  return out;
}

PHFramework zero_offsets(const PHFramework& fw) {
  PHFramework out = fw;
  for (double& r : out.offset) r = 0.0;
  return out;
}

namespace {

Vector gaussian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Vector x(dim);
  for (int i = 0; i < dim; ++i) x(i) = nd(rng);
  return x;
}

Matrix average_rep(const SymmetryGroup& group, const std::vector<int>& elems, const std::vector<int>& chi) {
  Matrix p = Matrix::Zero(group.dim(), group.dim());
  for (std::size_t i = 0; i < elems.size(); ++i) p += chi[i] * group.rep(elems[i]);
  return p / static_cast<double>(elems.size());
}

// Homomorphisms from the stabilizer (a subgroup, listed by element) to {±1},
// trivial character first.
std::vector<std::vector<int>> stabilizer_characters(const SymmetryGroup& group, const std::vector<int>& stab) {
  const int s = static_cast<int>(stab.size());
  std::vector<std::vector<int>> out{std::vector<int>(s, 1)};
  if (s % 2 != 0 || s > 16) return out;
  auto pos = [&](int g) {
    for (int i = 0; i < s; ++i)
      if (stab[i] == g) return i;
    return -1;
  };
  for (unsigned mask = 1; mask < (1u << s); ++mask) {
    std::vector<int> chi(s);
    for (int i = 0; i < s; ++i) chi[i] = (mask >> i) & 1u ? -1 : 1;
    if (chi[pos(0)] != 1) continue;
    bool ok = true;
    for (int a = 0; a < s && ok; ++a)
      for (int b = 0; b < s; ++b)
        if (chi[pos(group.mult(stab[a], stab[b]))] != chi[a] * chi[b]) {
          ok = false;
          break;
        }
    if (ok) out.push_back(chi);
  }
  return out;
}

void require_orbit_closed(const SymmetricGraph& sg, const std::vector<char>& special) {
  for (const Perm& p : sg.action)
    for (int v = 0; v < sg.graph.n; ++v)
      if (special[v] != special[p[v]]) throw Error(ErrorCode::NotOrbitClosed, "vertex subset is not a union of orbits");
}

std::vector<char> normalize_special(const SymmetricGraph& sg, const std::vector<char>& special) {
  if (special.empty()) return std::vector<char>(sg.graph.n, 0);
  if (static_cast<int>(special.size()) != sg.graph.n) throw Error(ErrorCode::DimensionMismatch, "one flag per vertex");
  require_orbit_closed(sg, special);
  return special;
}

}  // namespace

EuclideanFramework sample_euclidean(const SymmetricGraph& sg, int d, std::uint64_t seed) {
  if (sg.group.dim() != d) throw Error(ErrorCode::DimensionMismatch, "group dimension differs from d");
  std::mt19937_64 rng(seed);
  EuclideanFramework fw{sg.graph, d, std::vector<Vector>(sg.graph.n)};
  for (const auto& orb : sg.orbits()) {
    const int r = orb.front();
    const auto stab = sg.stabilizer(r);
    const Vector x = average_rep(sg.group, stab, std::vector<int>(stab.size(), 1)) * gaussian(rng, d);
    for (int w : orb) fw.p[w] = sg.group.rep(sg.transporter(r, w)) * x;
  }
  return fw;
}

SphericalFramework sample_spherical(const SymmetricGraph& sg, int d, const std::vector<char>& special_in,
                                    std::uint64_t seed) {
  if (sg.group.dim() != d + 1) throw Error(ErrorCode::DimensionMismatch, "sphere needs a group in dimension d+1");
  const auto special = normalize_special(sg, special_in);
  bool any_special = false;
  for (char c : special) any_special |= c != 0;
  if (any_special) {
    for (const Matrix& m : sg.group.reps())
      if (std::abs(std::abs(m(d, d)) - 1.0) > 1e-12) {
        throw Error(ErrorCode::InvalidArgument, "group does not preserve the equator");
      }
  }
  std::mt19937_64 rng(seed);
  SphericalFramework fw{sg.graph, d, std::vector<Vector>(sg.graph.n), special};
  for (const auto& orb : sg.orbits()) {
    const int r = orb.front();
    const auto stab = sg.stabilizer(r);
    Vector x = average_rep(sg.group, stab, std::vector<int>(stab.size(), 1)) * gaussian(rng, d + 1);
    if (special[r]) x(d) = 0.0;
    if (x.norm() < 1e-8) {
      throw Error(ErrorCode::UnrealizableFixedVertex,
                  "vertex " + std::to_string(r) + " has no admissible position on the sphere");
    }
    x.normalize();
    for (int w : orb) {
      fw.p[w] = sg.group.rep(sg.transporter(r, w)) * x;
      if (special[w]) fw.p[w](d) = 0.0;
    }
  }
  return fw;
}

PHFramework sample_ph(const SymmetricGraph& sg, int d, const std::vector<char>& special_in, std::uint64_t seed) {
  if (sg.group.dim() != d) throw Error(ErrorCode::DimensionMismatch, "group dimension differs from d");
  const auto special = normalize_special(sg, special_in);
  std::mt19937_64 rng(seed);
  const int n = sg.graph.n;
  PHFramework fw{sg.graph, d, std::vector<VertexKind>(n), std::vector<Vector>(n), std::vector<double>(n, 0.0)};
  std::normal_distribution<double> nd(0.0, 1.0);
  for (const auto& orb : sg.orbits()) {
    const int r = orb.front();
    const auto stab = sg.stabilizer(r);
    Vector x;
    double off = 0.0;
    if (!special[r]) {
      x = average_rep(sg.group, stab, std::vector<int>(stab.size(), 1)) * gaussian(rng, d);
    } else {
      const Vector raw = gaussian(rng, d);
      const double raw_off = nd(rng);
      bool found = false;
      for (const auto& chi : stabilizer_characters(sg.group, stab)) {
        Vector a = average_rep(sg.group, stab, chi) * raw;
        if (a.norm() < 1e-8) continue;
        x = a.normalized();
        bool trivial = true;
        for (int c : chi) trivial &= c == 1;
        off = trivial ? raw_off : 0.0;
        found = true;
        break;
      }
      if (!found) {
        throw Error(ErrorCode::UnrealizableFixedVertex,
                    "hyperplane " + std::to_string(r) + " has no admissible normal");
      }
    }
    for (int w : orb) {
      fw.kind[w] = special[w] ? VertexKind::hyperplane : VertexKind::point;
      fw.coord[w] = sg.group.rep(sg.transporter(r, w)) * x;
      fw.offset[w] = special[w] ? off : 0.0;
    }
  }
  return fw;
}

Framework sample_symmetric(const SymmetricGraph& sg, Space space, int d, const std::vector<char>& special,
                           std::uint64_t seed) {
  switch (space) {
    case Space::euclidean: return sample_euclidean(sg, d, seed);
    case Space::spherical: return sample_spherical(sg, d, special, seed);
    case Space::ph: return sample_ph(sg, d, special, seed);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown space");
}

Matrix epsilon_transform(const Matrix& basic, const Graph& graph, int block, const std::vector<int>& eps) {
  if (static_cast<int>(eps.size()) != graph.n) throw Error(ErrorCode::DimensionMismatch, "one sign per vertex");
  if (basic.rows() != graph.num_edges() + graph.n || basic.cols() != block * graph.n) {
    throw Error(ErrorCode::DimensionMismatch, "matrix shape does not match the graph");
  }
  Matrix out = basic;
  for (int e = 0; e < graph.num_edges(); ++e) out.row(e) *= eps[graph.edges[e].u] * eps[graph.edges[e].v];
  for (int v = 0; v < graph.n; ++v) out.middleCols(block * v, block) *= eps[v];
  return out;
}

}  // namespace symrigid
