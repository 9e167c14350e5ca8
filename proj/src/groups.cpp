#include "symrigid/groups.hpp"

#include "symrigid/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace symrigid {

namespace {

constexpr double kMatchTol = 1e-9;

bool close(const Matrix& a, const Matrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() < tol;
}

// Round entries that are within 1e-14 of 0 or ±1 so catalog tables stay tidy.
Matrix tidy(Matrix m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double& x = m(i, j);
      if (std::abs(x) < 1e-14) x = 0.0;
      else if (std::abs(x - 1.0) < 1e-14) x = 1.0;
      else if (std::abs(x + 1.0) < 1e-14) x = -1.0;
    }
  return m;
}

Matrix diag(std::initializer_list<double> d) {
  Vector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return v.asDiagonal();
}

Matrix rz(double angle) { return plane_rotation(3, 0, 1, angle); }

// Reflection in the vertical plane (containing z) through the horizontal
// direction at the given angle from the x-axis.
Matrix vertical_mirror(double angle) {
  Vector w(3);
  w << -std::sin(angle), std::cos(angle), 0.0;
  return Matrix::Identity(3, 3) - 2.0 * w * w.transpose();
}

// Cyclic permutation x -> y -> z -> x: the 3-fold rotation about (1,1,1).
Matrix c3_diagonal() {
  Matrix m = Matrix::Zero(3, 3);
  m(1, 0) = 1.0;
  m(2, 1) = 1.0;
  m(0, 2) = 1.0;
  return m;
}

std::vector<int> compute_generators(const std::vector<std::vector<int>>& mult) {
  const int n = static_cast<int>(mult.size());
  std::vector<int> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  int covered = 1;
  for (int cand = 1; cand < n && covered < n; ++cand) {
    if (in[cand]) continue;
    gens.push_back(cand);
    // Recompute closure of all generators so far.
    std::fill(in.begin(), in.end(), 0);
    in[0] = 1;
    std::vector<int> stack{0};
    covered = 1;
    while (!stack.empty()) {
      int e = stack.back();
      stack.pop_back();
      for (int s : gens) {
        int p = mult[e][s];
        if (!in[p]) {
          in[p] = 1;
          ++covered;
          stack.push_back(p);
        }
      }
    }
  }
  return gens;
}

}  // namespace

Matrix plane_rotation(int dim, int i, int j, double angle) {
  Matrix m = Matrix::Identity(dim, dim);
  const double c = std::cos(angle), s = std::sin(angle);
  m(i, i) = c;
  m(j, j) = c;
  m(i, j) = -s;
  m(j, i) = s;
  return tidy(m);
}

Matrix axis_rotation(const Vector& axis, double angle) {
  const Vector u = axis.normalized();
  Matrix k(3, 3);
  k << 0, -u(2), u(1), u(2), 0, -u(0), -u(1), u(0), 0;
  Matrix r = Matrix::Identity(3, 3) + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
  return tidy(r);
}

bool is_orthogonal(const Matrix& q, double tol) {
  if (q.rows() != q.cols()) return false;
  return (q.transpose() * q - Matrix::Identity(q.rows(), q.cols())).cwiseAbs().maxCoeff() < tol;
}

SymmetryGroup SymmetryGroup::from_generators(int dim, const std::vector<Matrix>& generators,
                                             std::optional<GroupName> name) {
  std::vector<Matrix> elems{Matrix::Identity(dim, dim)};
  auto lookup = [&](const Matrix& m) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (close(elems[i], m, kMatchTol)) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> gen_ids;
  for (const Matrix& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "generator size differs from group dimension");
    }
    if (!is_orthogonal(g, 1e-9)) throw Error(ErrorCode::NotOrthogonal, "generator not orthogonal");
    int id = lookup(g);
    if (id < 0) {
      elems.push_back(tidy(g));
      id = static_cast<int>(elems.size()) - 1;
    }
    if (id != 0 && std::find(gen_ids.begin(), gen_ids.end(), id) == gen_ids.end())
      gen_ids.push_back(id);
  }
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (int s : gen_ids) {
      Matrix p = tidy(elems[head] * elems[s]);
      if (lookup(p) < 0) {
        elems.push_back(p);
        if (elems.size() > 1000) throw Error(ErrorCode::InvalidArgument, "group closure exceeds 1000 elements");
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int id = lookup(elems[a] * elems[b]);
      if (id < 0) throw Error(ErrorCode::InvalidArgument, "closure incomplete");
      mult[a][b] = id;
    }
  SymmetryGroup g = from_table(std::move(mult), std::move(elems), std::move(name));
  g.generators_ = gen_ids;
  return g;
}

SymmetryGroup SymmetryGroup::from_table(std::vector<std::vector<int>> mult, std::vector<Matrix> reps,
                                        std::optional<GroupName> name) {
  SymmetryGroup g;
  const int n = static_cast<int>(reps.size());
  if (n == 0 || static_cast<int>(mult.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "table and representation sizes differ");
  }
  g.dim_ = static_cast<int>(reps[0].rows());
  g.mult_ = std::move(mult);
  g.reps_ = std::move(reps);
  g.name_ = std::move(name);
  g.inv_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(g.mult_[a].size()) != n) throw Error(ErrorCode::InvalidArgument, "ragged table");
    for (int b = 0; b < n; ++b) {
      if (g.mult_[a][b] < 0 || g.mult_[a][b] >= n) throw Error(ErrorCode::InvalidArgument, "table entry out of range");
      if (g.mult_[a][b] == 0) g.inv_[a] = b;
    }
  }
  g.validate(1e-9);
  g.generators_ = compute_generators(g.mult_);
  return g;
}

void SymmetryGroup::validate(double rep_tol) const {
  const int n = order();
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); };
  for (int a = 0; a < n; ++a) {
    if (mult_[0][a] != a || mult_[a][0] != a) fail("element 0 is not the identity");
    if (inv_[a] < 0 || mult_[a][inv_[a]] != 0 || mult_[inv_[a]][a] != 0) fail("missing two-sided inverse");
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult_[mult_[a][b]][c] != mult_[a][mult_[b][c]]) fail("table not associative");
  }
  for (int a = 0; a < n; ++a) {
    const Matrix& m = reps_[a];
    if (m.rows() != dim_ || m.cols() != dim_) fail("representation sizes differ");
    if (!is_orthogonal(m, rep_tol)) fail("representation matrix not orthogonal");
    for (int b = 0; b < n; ++b)
      if (!close(reps_[mult_[a][b]], m * reps_[b], rep_tol)) fail("representation is not a homomorphism");
  }
}

int SymmetryGroup::find(const Matrix& m, double tol) const {
  for (int i = 0; i < order(); ++i)
    if (close(reps_[i], m, tol)) return i;
  return -1;
}

bool SymmetryGroup::contains_inversion(double tol) const {
  return find(-Matrix::Identity(dim_, dim_), tol) >= 0;
}

SymmetryGroup SymmetryGroup::with_reps(std::vector<Matrix> reps) const {
  SymmetryGroup g = *this;
  if (reps.size() != reps_.size()) throw Error(ErrorCode::DimensionMismatch, "representation count");
  g.reps_ = std::move(reps);
  g.dim_ = static_cast<int>(g.reps_[0].rows());
  g.name_.reset();
  g.validate(1e-9);
  return g;
}

bool Subgroup::contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

SymmetryGroup trivial_group(int dim) {
  return SymmetryGroup::from_generators(dim, {}, GroupName{"C1", 1});
}

SymmetryGroup make_schoenflies(int dim, const std::string& label, int n) {
  using std::numbers::pi;
  const bool takes_n = !(label == "Cs" || label == "Ci" || label == "Td" || label == "O" || label == "C1");
  if (takes_n && n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  if (!takes_n) n = 1;
  const GroupName name{label, n};
  if (dim == 2) {
    const Matrix mirror = diag({-1.0, 1.0});
    const Matrix rot = plane_rotation(2, 0, 1, 2.0 * pi / n);
    if (label == "C1") return SymmetryGroup::from_generators(2, {}, name);
    if (label == "Cs") return SymmetryGroup::from_generators(2, {mirror}, name);
    if (label == "Cn") return SymmetryGroup::from_generators(2, {rot}, name);
    if (label == "Cnv") return SymmetryGroup::from_generators(2, {rot, mirror}, name);
    static const std::set<std::string> three_d{"Ci", "Cnh", "S2n", "Dn", "Dnh", "Dnd", "Td", "O"};
    if (three_d.count(label)) throw Error(ErrorCode::LabelDimMismatch, label + " is not a planar group");
    throw Error(ErrorCode::UnknownLabel, label);
  }
  if (dim != 3) throw Error(ErrorCode::LabelDimMismatch, "catalog covers dimensions 2 and 3");
  const Matrix rot = rz(2.0 * pi / n);
  const Matrix mirror_x = diag({-1.0, 1.0, 1.0});
  const Matrix mirror_h = diag({1.0, 1.0, -1.0});
  const Matrix c2x = diag({1.0, -1.0, -1.0});
  if (label == "C1") return SymmetryGroup::from_generators(3, {}, name);
  if (label == "Cs") return SymmetryGroup::from_generators(3, {mirror_x}, name);
  if (label == "Cn") return SymmetryGroup::from_generators(3, {rot}, name);
  if (label == "Ci") return SymmetryGroup::from_generators(3, {-Matrix::Identity(3, 3)}, name);
  if (label == "Cnv") return SymmetryGroup::from_generators(3, {rot, mirror_x}, name);
  if (label == "Cnh") return SymmetryGroup::from_generators(3, {rot, mirror_h}, name);
  if (label == "S2n") return SymmetryGroup::from_generators(3, {tidy(rz(pi / n) * mirror_h)}, name);
  if (label == "Dn") return SymmetryGroup::from_generators(3, {rot, c2x}, name);
  if (label == "Dnh") return SymmetryGroup::from_generators(3, {rot, c2x, mirror_h}, name);
  if (label == "Dnd")
    return SymmetryGroup::from_generators(3, {rot, c2x, vertical_mirror(pi / (2.0 * n))}, name);
  if (label == "Td") return SymmetryGroup::from_generators(3, {tidy(rz(pi / 2) * mirror_h), c3_diagonal()}, name);
  if (label == "O") return SymmetryGroup::from_generators(3, {rz(pi / 2), c3_diagonal()}, name);
  throw Error(ErrorCode::UnknownLabel, label);
}

SymmetryGroup augment(const SymmetryGroup& g) {
  std::vector<Matrix> reps;
  reps.reserve(g.order());
  for (const Matrix& m : g.reps()) {
    Matrix a = Matrix::Zero(m.rows() + 1, m.cols() + 1);
    a.topLeftCorner(m.rows(), m.cols()) = m;
    a(m.rows(), m.cols()) = 1.0;
    reps.push_back(a);
  }
  SymmetryGroup out = g.with_reps(std::move(reps));
  out.set_name(g.name());
  return out;
}

bool is_subgroup(const SymmetryGroup& g, const Subgroup& h) {
  if (h.members.empty() || !h.contains(0)) return false;
  for (int a : h.members) {
    if (a < 0 || a >= g.order()) return false;
    if (!h.contains(g.inv(a))) return false;
    for (int b : h.members)
      if (!h.contains(g.mult(a, b))) return false;
  }
  return true;
}

Subgroup subgroup_generated(const SymmetryGroup& g, const std::vector<int>& gens) {
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int e = stack.back();
    stack.pop_back();
    for (int s : gens) {
      int p = g.mult(e, s);
      if (!in[p]) {
        in[p] = 1;
        stack.push_back(p);
      }
    }
  }
  Subgroup h;
  for (int i = 0; i < g.order(); ++i)
    if (in[i]) h.members.push_back(i);
  return h;
}

std::vector<Subgroup> index2_subgroups(const SymmetryGroup& g) {
  // Index-2 subgroups are kernels of the nontrivial characters into {±1}.
  // A character is fixed by its values on the generators.
  std::vector<Subgroup> out;
  const int n = g.order();
  if (n % 2 != 0) return out;
  const auto& gens = g.generators();
  const int k = static_cast<int>(gens.size());
  std::set<std::vector<int>> seen;
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    std::vector<int> chi(n, 0);
    chi[0] = 1;
    std::vector<int> stack{0};
    bool ok = true;
    while (!stack.empty() && ok) {
      int e = stack.back();
      stack.pop_back();
      for (int i = 0; i < k; ++i) {
        int p = g.mult(e, gens[i]);
        int val = chi[e] * ((mask >> i) & 1u ? -1 : 1);
        if (chi[p] == 0) {
          chi[p] = val;
          stack.push_back(p);
        } else if (chi[p] != val) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n; ++b)
        if (chi[g.mult(a, b)] != chi[a] * chi[b]) {
          ok = false;
          break;
        }
    if (!ok) continue;
    Subgroup h;
    for (int a = 0; a < n; ++a)
      if (chi[a] == 1) h.members.push_back(a);
    if (2 * h.size() != n) continue;
    if (seen.insert(h.members).second) out.push_back(std::move(h));
  }
  return out;
}

SymmetryGroup pair_representation(const SymmetryGroup& g, const Subgroup& h) {
  if (!is_subgroup(g, h) || 2 * h.size() != g.order()) {
    throw Error(ErrorCode::NotIndex2, "subgroup does not have index 2");
  }
  if (g.contains_inversion()) {
    throw Error(ErrorCode::ContainsInversion, "groups containing -I admit no pairing");
  }
  std::vector<Matrix> reps;
  reps.reserve(g.order());
  for (int a = 0; a < g.order(); ++a) reps.push_back(h.contains(a) ? g.rep(a) : Matrix(-g.rep(a)));
  SymmetryGroup out = g.with_reps(std::move(reps));
  // Injectivity of the twisted matrix group.
  for (int a = 0; a < out.order(); ++a)
    for (int b = a + 1; b < out.order(); ++b)
      if (close(out.rep(a), out.rep(b), kMatchTol)) {
        throw Error(ErrorCode::ContainsInversion, "twisted representation is not injective");
      }
  return out;
}

SymmetryGroup involution_group(int d, const std::vector<int>& axis_dims) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be positive");
  Vector diagv = Vector::Constant(d, -1.0);
  for (int a : axis_dims) {
    if (a < 1 || a > d) throw Error(ErrorCode::InvalidArgument, "axis out of range");
    diagv(a - 1) = 1.0;
  }
  if ((diagv.array() > 0).all()) {
    throw Error(ErrorCode::InvalidArgument, "all axes fixed gives the identity, not an involution");
  }
  return SymmetryGroup::from_generators(d, {Matrix(diagv.asDiagonal())});
}

SymmetryGroup conjugate(const SymmetryGroup& g, const Matrix& q) {
  if (!is_orthogonal(q, 1e-12)) throw Error(ErrorCode::NotOrthogonal, "conjugator not orthogonal");
  std::vector<Matrix> reps;
  for (const Matrix& m : g.reps()) reps.push_back(tidy(q * m * q.transpose()));
  return g.with_reps(std::move(reps));
}

bool same_matrix_set(const std::vector<Matrix>& a, const std::vector<Matrix>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (const Matrix& m : a) {
    bool found = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (!used[j] && close(m, b[j], tol)) {
        used[j] = 1;
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

namespace {

Subgroup proper_part(const SymmetryGroup& g) {
  Subgroup h;
  for (int a = 0; a < g.order(); ++a)
    if (g.rep(a).determinant() > 0) h.members.push_back(a);
  return h;
}

// Quarter turn in the (x, last) plane sending e_1 to -e_last.
Matrix quarter_turn_x(int dim) {
  Matrix q = Matrix::Identity(dim, dim);
  q(0, 0) = 0.0;
  q(dim - 1, dim - 1) = 0.0;
  q(0, dim - 1) = 1.0;
  q(dim - 1, 0) = -1.0;
  return q;
}

std::string str(const std::string& a, int n) {
  std::ostringstream os;
  os << a << n;
  return os.str();
}

}  // namespace

std::vector<PairingRow> pairing_catalog(int max_n) {
  using std::numbers::pi;
  std::vector<PairingRow> rows;
  {
    SymmetryGroup cs = make_schoenflies(3, "Cs");
    rows.push_back({"Cs<->C2", cs, Subgroup{{0}}, make_schoenflies(3, "Cn", 2), quarter_turn_x(3)});
  }
  for (int n = 1; n <= max_n; n += 2) {
    SymmetryGroup c2n = make_schoenflies(3, "Cn", 2 * n);
    rows.push_back({str("C", 2 * n) + "<->" + str("C", n) + "h", c2n,
                    subgroup_generated(c2n, {c2n.mult(1, 1)}), make_schoenflies(3, "Cnh", n),
                    Matrix::Identity(3, 3)});
  }
  for (int n = 2; n <= max_n; n += 2) {
    SymmetryGroup c2n = make_schoenflies(3, "Cn", 2 * n);
    rows.push_back({str("C", 2 * n) + "<->" + str("S", 2 * n), c2n,
                    subgroup_generated(c2n, {c2n.mult(1, 1)}), make_schoenflies(3, "S2n", n),
                    Matrix::Identity(3, 3)});
  }
  for (int n = 2; n <= max_n; ++n) {
    SymmetryGroup cnv = make_schoenflies(3, "Cnv", n);
    rows.push_back({str("C", n) + "v<->" + str("D", n), cnv, proper_part(cnv),
                    make_schoenflies(3, "Dn", n), Matrix::Identity(3, 3)});
  }
  for (int n = 1; n <= max_n; ++n) {
    // Generators of C_{2n v}: id 1 = rotation by pi/n, id 2 = mirror x=0.
    // The twist keeps the mirrors conjugate to x=0 under rotations by 2pi/n.
    SymmetryGroup c2nv = make_schoenflies(3, "Cnv", 2 * n);
    Subgroup h = subgroup_generated(c2nv, {c2nv.mult(1, 1), 2});
    const bool even = n % 2 == 0;
    rows.push_back({str("C", 2 * n) + "v<->" + str("D", n) + (even ? "d" : "h"), c2nv, h,
                    make_schoenflies(3, even ? "Dnd" : "Dnh", n), rz(-pi / (2.0 * n))});
  }
  {
    SymmetryGroup td = make_schoenflies(3, "Td");
    rows.push_back({"Td<->O", td, proper_part(td), make_schoenflies(3, "O"), Matrix::Identity(3, 3)});
  }
  // Involution pairings on the 3-sphere: complementary coordinate subspaces.
  const std::vector<std::vector<int>> subspaces{{1}, {1, 2}, {1, 2, 3}, {2, 4}, {}};
  for (const auto& s : subspaces) {
    std::vector<int> comp;
    for (int a = 1; a <= 4; ++a)
      if (std::find(s.begin(), s.end(), a) == s.end()) comp.push_back(a);
    if (comp.size() == 4) continue;  // complement of the empty set is the identity
    std::ostringstream nm;
    nm << "inv{";
    for (int a : s) nm << a;
    nm << "}<->inv{";
    for (int a : comp) nm << a;
    nm << "}";
    rows.push_back({nm.str(), involution_group(4, s), Subgroup{{0}}, involution_group(4, comp),
                    Matrix::Identity(4, 4)});
  }
  {
    // Mirror on the 3-sphere paired with the inversion, after a quarter turn.
    SymmetryGroup cs = augment(make_schoenflies(3, "Cs"));
    rows.push_back({"Cs<->Ci(S3)", cs, Subgroup{{0}}, augment(make_schoenflies(3, "Ci")),
                    quarter_turn_x(4)});
  }
  {
    // C2v on the 3-sphere keeping the mirror x=0.
    SymmetryGroup c2v = augment(make_schoenflies(3, "Cnv", 2));
    int mirror = c2v.find(diag({-1.0, 1.0, 1.0, 1.0}));
    SymmetryGroup s = SymmetryGroup::from_generators(
        4, {diag({1.0, 1.0, -1.0, -1.0}), diag({-1.0, 1.0, -1.0, -1.0})});
    rows.push_back({"C2v<->S(S3)", c2v, subgroup_generated(c2v, {mirror}), s, Matrix::Identity(4, 4)});
  }
  return rows;
}

}  // namespace symrigid
