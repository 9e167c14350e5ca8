#include "symrigid/transfer.hpp"

#include "symrigid/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace symrigid {

namespace {

std::vector<int> orbit_of(const std::vector<Perm>& action, int v) {
  std::vector<int> out;
  for (const Perm& p : action) out.push_back(p[v]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_orbit_closed(const std::vector<Perm>& action, const std::vector<char>& mask) {
  for (std::size_t v = 0; v < mask.size(); ++v) {
    if (!mask[v]) continue;
    for (const Perm& p : action)
      if (!mask[p[v]]) throw Error(ErrorCode::NotOrbitClosed, "vertex set is not a union of orbits");
  }
}

void normalize_sign(Vector& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::abs(a[i]) > 1e-12) {
      if (a[i] < 0) a = -a;
      return;
    }
  }
}

}  // namespace

SphericalFramework partial_inversion(const SphericalFramework& fw, const std::vector<int>& subset,
                                     const std::optional<Symmetry>& sym) {
  check(fw);
  std::vector<char> mask(fw.graph.n, 0);
  for (int v : subset) {
    if (v < 0 || v >= fw.graph.n) throw Error(ErrorCode::InvalidArgument, "vertex out of range");
    mask[v] = 1;
  }
  if (sym) require_orbit_closed(sym->action, mask);
  SphericalFramework out = fw;
  for (int v = 0; v < fw.graph.n; ++v)
    if (mask[v]) out.p[v] = -out.p[v];
  return out;
}

SphericalFramework project_ph_to_sphere(const PHFramework& fw) {
  check(fw);
  SphericalFramework out;
  out.graph = fw.graph;
  out.d = fw.d;
  out.p.resize(fw.graph.n);
  out.equator.assign(fw.graph.n, 0);
  for (int v = 0; v < fw.graph.n; ++v) {
    Vector q = Vector::Zero(fw.d + 1);
    q.head(fw.d) = fw.coord[v];
    if (fw.is_hyperplane(v)) {
      out.equator[v] = 1;
    } else {
      q[fw.d] = 1.0;
    }
    out.p[v] = q.normalized();
  }
  return out;
}

PHFramework project_sphere_to_ph(const SphericalFramework& fw_in, const std::optional<Symmetry>& sym,
                                 double equator_tol) {
  check(fw_in, equator_tol);
  const int n = fw_in.graph.n;
  const int d = fw_in.d;
  std::vector<char> on_eq(n, 0);
  for (int v = 0; v < n; ++v) on_eq[v] = std::abs(fw_in.p[v][d]) < equator_tol;
  for (int v = 0; v < n; ++v) {
    if (static_cast<bool>(on_eq[v]) != static_cast<bool>(fw_in.equator[v])) {
      throw Error(ErrorCode::EquatorMismatch, "vertex " + std::to_string(v) + " disagrees with the equator set");
    }
  }
  std::vector<int> lower;
  for (int v = 0; v < n; ++v)
    if (!on_eq[v] && fw_in.p[v][d] < 0) lower.push_back(v);
  const SphericalFramework fw = partial_inversion(fw_in, lower, sym);

  PHFramework out;
  out.graph = fw.graph;
  out.d = d;
  out.kind.resize(n);
  out.coord.resize(n);
  out.offset.assign(n, 0.0);
  for (int v = 0; v < n; ++v) {
    const Vector& q = fw.p[v];
    if (on_eq[v]) {
      out.kind[v] = VertexKind::hyperplane;
      Vector a = q.head(d).normalized();
      normalize_sign(a);
      out.coord[v] = a;
    } else {
      out.kind[v] = VertexKind::point;
      out.coord[v] = q.head(d) / q[d];
    }
  }
  return out;
}

SymmetryGroup restrict_group(const SymmetryGroup& g) {
  const int dim = g.dim();
  std::vector<Matrix> reps;
  for (const Matrix& m : g.reps()) {
    Vector last_col = m.col(dim - 1);
    Vector last_row = m.row(dim - 1).transpose();
    Vector e = Vector::Unit(dim, dim - 1);
    if ((last_col - e).norm() > 1e-9 || (last_row - e).norm() > 1e-9) {
      throw Error(ErrorCode::InvalidArgument, "group does not fix the last axis");
    }
    reps.push_back(m.topLeftCorner(dim - 1, dim - 1));
  }
  SymmetryGroup out = SymmetryGroup::from_table(g.table(), reps);
  out.set_name(g.name());
  return out;
}

SymmetricSpherical pairing_transform(const SphericalFramework& fw, const SymmetryGroup& group,
                                     const std::vector<Perm>& action, const Subgroup& subgroup) {
  SymmetricGraph sg{fw.graph, group, action};
  if (!sg.free_on_vertices()) throw Error(ErrorCode::ActionNotFree, "pairing needs a free action");
  SymmetryGroup paired = pair_representation(group, subgroup);
  if (!validate_symmetric(fw, group, action)) throw Error(ErrorCode::NotSymmetric, "framework is not symmetric");
  SymmetricSpherical out{fw, paired, action};
  for (int w = 0; w < fw.graph.n; ++w) {
    const int rep = orbit_of(action, w).front();
    const int g = sg.transporter(rep, w);
    if (!subgroup.contains(g)) out.fw.p[w] = -out.fw.p[w];
  }
  if (!validate_symmetric(out.fw, out.group, out.action)) {
    throw Error(ErrorCode::NotSymmetric, "paired framework failed the symmetry check");
  }
  return out;
}

SymmetricSpherical double_cover(const SphericalFramework& fw, const SymmetryGroup& group,
                                const std::vector<Perm>& action) {
  if (group.contains_inversion()) throw Error(ErrorCode::ContainsInversion, "group already contains -I");
  if (!validate_symmetric(fw, group, action)) throw Error(ErrorCode::NotSymmetric, "framework is not symmetric");
  const int n = fw.graph.n;
  const int k = group.order();
  SymmetricSpherical out;
  out.fw.d = fw.d;
  out.fw.graph = Graph(2 * n, {});
  for (const Edge& e : fw.graph.edges) {
    out.fw.graph.add_edge(e.u, e.v);
    out.fw.graph.add_edge(e.u + n, e.v + n);
  }
  out.fw.p.resize(2 * n);
  out.fw.equator.resize(2 * n);
  for (int v = 0; v < n; ++v) {
    out.fw.p[v] = fw.p[v];
    out.fw.p[v + n] = -fw.p[v];
    out.fw.equator[v] = out.fw.equator[v + n] = fw.equator[v];
  }
  std::vector<std::vector<int>> mult(2 * k, std::vector<int>(2 * k));
  std::vector<Matrix> reps(2 * k);
  for (int a = 0; a < 2 * k; ++a) {
    reps[a] = (a < k ? 1.0 : -1.0) * group.rep(a % k);
    for (int b = 0; b < 2 * k; ++b) mult[a][b] = group.mult(a % k, b % k) + k * ((a / k) ^ (b / k));
  }
  std::optional<GroupName> name;
  if (k == 1) name = GroupName{"Ci", 1};
  out.group = SymmetryGroup::from_table(std::move(mult), std::move(reps), name);
  out.action.assign(2 * k, Perm(2 * n));
  for (int a = 0; a < 2 * k; ++a) {
    const Perm& p = action[a % k];
    const int shift = a < k ? 0 : n;
    for (int v = 0; v < n; ++v) {
      out.action[a][v] = (p[v] + shift) % (2 * n);
      out.action[a][v + n] = (p[v] + n - shift) % (2 * n);
    }
  }
  return out;
}

SphericalFramework rotate(const SphericalFramework& fw, const Matrix& q) {
  if (q.rows() != fw.d + 1 || q.cols() != fw.d + 1) throw Error(ErrorCode::DimensionMismatch, "rotation size");
  if (!is_orthogonal(q, 1e-12)) throw Error(ErrorCode::NotOrthogonal, "matrix is not orthogonal");
  SphericalFramework out = fw;
  for (auto& p : out.p) p = q * p;
  out.equator = equator_from_coords(out);
  return out;
}

EuclideanFramework rotate(const EuclideanFramework& fw, const Matrix& q) {
  if (q.rows() != fw.d || q.cols() != fw.d) throw Error(ErrorCode::DimensionMismatch, "rotation size");
  if (!is_orthogonal(q, 1e-12)) throw Error(ErrorCode::NotOrthogonal, "matrix is not orthogonal");
  EuclideanFramework out = fw;
  for (auto& p : out.p) p = q * p;
  return out;
}

SymmetricSpherical rotate(const SymmetricSpherical& s, const Matrix& q) {
  return {rotate(s.fw, q), conjugate(s.group, q), s.action};
}

Matrix quarter_turn(int dim) {
  Matrix q = Matrix::Identity(dim, dim);
  q(0, 0) = 0.0;
  q(dim - 1, dim - 1) = 0.0;
  q(0, dim - 1) = 1.0;
  q(dim - 1, 0) = -1.0;
  return q;
}

RotationResult rotate_off_equator(const SphericalFramework& fw, const std::optional<Symmetry>& sym,
                                  std::uint64_t seed) {
  check(fw);
  const int dim = fw.d + 1;
  if (sym) {
    for (const Matrix& m : sym->group.reps()) {
      if (std::abs(m.determinant() + 1.0) > 1e-9 || (m * m - Matrix::Identity(dim, dim)).norm() > 1e-9) continue;
      // A reflection: its normal line is fixed by every commuting rotation
      // that could move points off the equator.
      Eigen::SelfAdjointEigenSolver<Matrix> es(m);
      if (es.eigenvalues().head(1)(0) > -0.5 || es.eigenvalues().size() < 2 || es.eigenvalues()(1) < 0) continue;
      const Vector normal = es.eigenvectors().col(0);
      if (std::abs(normal[dim - 1]) > 1e-9) continue;
      for (int v = 0; v < fw.graph.n; ++v) {
        if (std::abs(std::abs(fw.p[v].dot(normal)) - 1.0) < 1e-9) {
          throw Error(ErrorCode::VertexOnMirrorNormal, "vertex " + std::to_string(v) + " lies on the mirror normal");
        }
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, M_PI);
  std::vector<double> angles(256);
  for (double& a : angles) a = unif(rng);
  std::sort(angles.begin(), angles.end());
  std::optional<RotationResult> best;
  for (int k = 0; k < dim - 1; ++k) {
    for (double angle : angles) {
      if (best && angle >= best->angle) break;
      const Matrix q = plane_rotation(dim, k, dim - 1, angle);
      if (sym) {
        bool commutes = true;
        for (const Matrix& m : sym->group.reps()) commutes &= (q * m - m * q).norm() < 1e-9;
        if (!commutes) break;
      }
      bool ok = true;
      for (const Vector& p : fw.p) ok &= std::abs((q * p)[dim - 1]) >= 1e-6;
      if (ok) {
        best = RotationResult{rotate(fw, q), q, angle};
        break;
      }
    }
  }
  if (!best) throw Error(ErrorCode::InvalidArgument, "no admissible rotation moves every vertex off the equator");
  return *best;
}

PHFramework as_point_framework(const EuclideanFramework& fw) {
  check(fw);
  PHFramework out;
  out.graph = fw.graph;
  out.d = fw.d;
  out.kind.assign(fw.graph.n, VertexKind::point);
  out.coord = fw.p;
  out.offset.assign(fw.graph.n, 0.0);
  return out;
}

PointLinePair pair_with_fixed(const PHFramework& fw, const SymmetryGroup& group, const std::vector<Perm>& action) {
  const Matrix mirror = (Matrix(2, 2) << -1.0, 0.0, 0.0, 1.0).finished();
  if (fw.d != 2 || group.order() != 2 || (group.rep(1) - mirror).norm() > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "expected the mirror x -> -x in the plane");
  }
  if (!validate_symmetric(fw, group, action)) throw Error(ErrorCode::NotSymmetric, "framework is not symmetric");
  const int n = fw.graph.n;
  const Perm& swap = action[1];
  for (int v = 0; v < n; ++v) {
    if (swap[v] == v && !fw.is_hyperplane(v) && std::abs(fw.coord[v][0]) > 1e-9) {
      throw Error(ErrorCode::FixedVertexOffMirror, "fixed vertex " + std::to_string(v) + " is off the mirror");
    }
  }
  SphericalFramework s = project_ph_to_sphere(fw);
  // Second member of each swapped pair goes to its antipode; the mirror
  // becomes the half-turn about the x axis.
  for (int v = 0; v < n; ++v)
    if (swap[v] < v) s.p[v] = -s.p[v];
  // Whole orbits to x <= 0, so the quarter turn lands them in the upper half.
  std::vector<char> flip(n, 0);
  for (int v = 0; v < n; ++v) flip[v] = s.p[std::min(v, swap[v])][0] > 1e-12;
  for (int v = 0; v < n; ++v)
    if (flip[v]) s.p[v] = -s.p[v];
  s.equator = equator_from_coords(s);
  const Matrix q = quarter_turn(3);
  SphericalFramework r = rotate(s, q);
  const SymmetryGroup half = make_schoenflies(2, "Cn", 2);
  const SymmetryGroup lifted = augment(half);
  PointLinePair out;
  out.fw = project_sphere_to_ph(r, Symmetry{lifted, action});
  out.group = half;
  out.action = action;
  if (!validate_symmetric(out.fw, out.group, out.action)) {
    throw Error(ErrorCode::NotSymmetric, "transferred framework failed the symmetry check");
  }
  return out;
}

PointLinePair pair_with_fixed(const EuclideanFramework& fw, const SymmetryGroup& group,
                              const std::vector<Perm>& action) {
  return pair_with_fixed(as_point_framework(fw), group, action);
}

}  // namespace symrigid
