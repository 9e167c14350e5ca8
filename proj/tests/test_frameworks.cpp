#include "oracle.hpp"
#include "symrigid/error.hpp"
#include "symrigid/frameworks.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace symrigid;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

EuclideanFramework planar(const Graph& g, std::vector<Vector> p) { return EuclideanFramework{g, 2, std::move(p)}; }

SphericalFramework on_sphere(const Graph& g, std::vector<Vector> p) {
  SphericalFramework fw{g, 2, std::move(p), {}};
  fw.equator = equator_from_coords(fw);
  return fw;
}

PHFramework point_and_line(const Graph& g) {
  PHFramework fw;
  fw.graph = g;
  fw.d = 2;
  fw.kind = {VertexKind::point, VertexKind::hyperplane};
  fw.coord = {vec({0, 0}), vec({0, 1})};
  fw.offset = {0.0, 0.0};
  return fw;
}

Vector random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = nd(rng);
  return v.normalized();
}

}  // namespace

TEST(EuclideanMatrix, SingleEdgeRow) {
  const Matrix r = rigidity_matrix_euclidean(planar(Graph(2, {{0, 1}}), {vec({0, 0}), vec({1, 0})}));
  ASSERT_EQ(r.rows(), 1);
  Matrix expected(1, 4);
  expected << -1, 0, 1, 0;
  EXPECT_TRUE(r.isApprox(expected) || r.isApprox(-expected));
}

TEST(EuclideanMatrix, TriangleHasRankThree) {
  const EuclideanFramework k3 = planar(complete_graph(3), {vec({0, 0}), vec({1, 0}), vec({0, 1})});
  EXPECT_EQ(oracle::scaled_rank(rigidity_matrix_euclidean(k3)), 3);
  const RigidityReport r = analyze(k3);
  EXPECT_EQ(r.rank, 3);
  EXPECT_TRUE(r.is_inf_rigid);
  EXPECT_TRUE(r.is_isostatic);
}

TEST(EuclideanMatrix, CoincidentEndpointsGiveZeroRow) {
  const EuclideanFramework fw = planar(Graph(3, {{0, 1}, {1, 2}}), {vec({1, 1}), vec({1, 1}), vec({2, 0})});
  const Matrix r = rigidity_matrix_euclidean(fw);
  EXPECT_EQ(r.row(0).norm(), 0.0);
  EXPECT_EQ(analyze(fw).degenerate_edges, std::vector<int>{0});
}

TEST(Analyze, K4MinusEdgeAndSquare) {
  const EuclideanFramework k4e =
      planar(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}), {vec({0, 0}), vec({3, 1}), vec({1, 2}), vec({2, -2})});
  const RigidityReport a = analyze(k4e);
  EXPECT_EQ(a.rank, 5);
  EXPECT_EQ(a.nullity, 3);
  EXPECT_TRUE(a.is_isostatic);
  EXPECT_EQ(oracle::scaled_rank(rigidity_matrix(k4e)), 5);

  const EuclideanFramework square =
      planar(Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}), {vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
  const RigidityReport b = analyze(square);
  EXPECT_EQ(b.nullity, 4);
  EXPECT_FALSE(b.is_inf_rigid);
}

TEST(Analyze, RedundantEdgesOfK4) {
  const EuclideanFramework k4 = planar(complete_graph(4), {vec({0, 0}), vec({3, 1}), vec({1, 2}), vec({2, -2})});
  AnalyzeOptions opt;
  opt.list_redundant = true;
  const RigidityReport r = analyze(k4, opt);
  EXPECT_TRUE(r.is_inf_rigid);
  EXPECT_FALSE(r.is_isostatic);
  EXPECT_EQ(r.redundant_edges.size(), 6u);  // every edge of a generic K4 lies in the circuit
}

TEST(SphericalMatrix, NorthPoleAlone) {
  const SphericalFramework fw = on_sphere(Graph(1, {}), {vec({0, 0, 1})});
  const Matrix r = rigidity_matrix_spherical(fw);
  ASSERT_EQ(r.rows(), 1);
  EXPECT_TRUE(r.isApprox(vec({0, 0, 1}).transpose()));
  EXPECT_EQ(kernel_basis(r).cols(), 2);
}

TEST(SphericalMatrix, PoleToEquatorEdge) {
  const SphericalFramework fw = on_sphere(Graph(2, {{0, 1}}), {vec({0, 0, 1}), vec({1, 0, 0})});
  const Matrix r = rigidity_matrix_spherical(fw);
  EXPECT_EQ(r.rows(), 3);
  EXPECT_EQ(oracle::scaled_rank(r), 3);
  EXPECT_EQ(fw.equator, (std::vector<char>{0, 1}));
}

TEST(SphericalMatrix, GenericTriangleIsRigid) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const SphericalFramework fw = on_sphere(complete_graph(3), {random_unit(3, rng), random_unit(3, rng), random_unit(3, rng)});
    const RigidityReport r = analyze(fw);
    EXPECT_EQ(r.rank, 6);
    EXPECT_EQ(r.nullity, 3);
    EXPECT_EQ(r.trivial_dim, 3);
    EXPECT_TRUE(r.is_inf_rigid);
    // Difference form has the same rank.
    EXPECT_EQ(rank(rigidity_matrix_cone(fw)), 6);
  }
}

TEST(PHMatrix, PointOnLineRow) {
  const PHFramework fw = point_and_line(Graph(2, {{0, 1}}));
  const Matrix r = rigidity_matrix_ph(fw);
  ASSERT_EQ(r.rows(), 2);
  ASSERT_EQ(r.cols(), 5);
  Matrix row(1, 5);
  row << 0, 1, 0, 0, 1;
  EXPECT_TRUE(r.row(0).isApprox(row));
  EXPECT_EQ(edge_row_count(fw), 1);
}

TEST(PHMatrix, LoneLineHasNullityTwo) {
  PHFramework fw;
  fw.graph = Graph(1, {});
  fw.d = 2;
  fw.kind = {VertexKind::hyperplane};
  fw.coord = {vec({0.6, 0.8})};
  fw.offset = {2.0};
  const Matrix r = rigidity_matrix_ph(fw);
  EXPECT_EQ(r.rows(), 1);
  EXPECT_EQ(r.cols() - rank(r), 2);
}

TEST(PHMatrix, ParallelLinesAngleRowIsDependent) {
  PHFramework fw;
  fw.graph = Graph(2, {{0, 1}});
  fw.d = 2;
  fw.kind = {VertexKind::hyperplane, VertexKind::hyperplane};
  fw.coord = {vec({0, 1}), vec({0, 1})};
  fw.offset = {0.0, 3.0};
  const Matrix r = rigidity_matrix_ph(fw);
  EXPECT_EQ(r.rows(), 3);
  EXPECT_EQ(oracle::scaled_rank(r), 2);
  EXPECT_EQ(rank(r), 2);
}

TEST(TrivialMotions, Dimensions) {
  const TrivialMotions one = trivial_motion_basis(planar(Graph(1, {}), {vec({1, 2})}));
  EXPECT_TRUE(one.span_deficient);
  EXPECT_EQ(one.basis.cols(), 2);
  EXPECT_EQ(one.expected, 3);
  const TrivialMotions tri = trivial_motion_basis(planar(complete_graph(3), {vec({0, 0}), vec({1, 0}), vec({0, 1})}));
  EXPECT_FALSE(tri.span_deficient);
  EXPECT_EQ(tri.basis.cols(), 3);
  PHFramework pl = point_and_line(Graph(2, {}));
  pl.coord[0] = vec({0.3, 1.7});
  pl.offset[1] = -0.4;
  EXPECT_EQ(trivial_motion_basis(pl).basis.cols(), 3);
  // Trivial motions lie in the kernel of the complete system on this instance.
  PHFramework full = pl;
  full.graph = Graph(2, {{0, 1}});
  const Matrix r = rigidity_matrix_ph(full);
  EXPECT_LT((r * trivial_motion_basis(full).basis).norm(), 1e-12);
}

TEST(TrivialMotions, SphereHasThreeRotationsInKernel) {
  std::mt19937_64 rng(12);
  const SphericalFramework fw = on_sphere(Graph(4, {{0, 1}, {1, 2}}),
                                          {random_unit(3, rng), random_unit(3, rng), random_unit(3, rng), random_unit(3, rng)});
  const TrivialMotions t = trivial_motion_basis(fw);
  EXPECT_EQ(t.basis.cols(), 3);
  EXPECT_LT((rigidity_matrix_spherical(fw) * t.basis).norm(), 1e-12);
}

TEST(ValidateSymmetric, MirrorPairs) {
  const SymmetryGroup cs = make_schoenflies(2, "Cs");
  const std::vector<Perm> swap{{0, 1}, {1, 0}};
  const Graph g(2, {{0, 1}});
  EXPECT_TRUE(validate_symmetric(planar(g, {vec({1, 2}), vec({-1, 2})}), cs, swap));
  EXPECT_FALSE(validate_symmetric(planar(g, {vec({1, 2}), vec({-1, 2.1})}), cs, swap));
}

TEST(ValidateSymmetric, SwappedLinesWithOppositeNormals) {
  const SymmetryGroup cs = make_schoenflies(2, "Cs");
  const std::vector<Perm> swap{{0, 1}, {1, 0}};
  PHFramework fw;
  fw.graph = Graph(2, {{0, 1}});
  fw.d = 2;
  fw.kind = {VertexKind::hyperplane, VertexKind::hyperplane};
  // Line 1 is the mirror image of line 0 written with the opposite normal.
  fw.coord = {vec({0.6, 0.8}), vec({0.6, -0.8})};
  fw.offset = {1.0, -1.0};
  EXPECT_TRUE(validate_symmetric(fw, cs, swap));
  EXPECT_EQ(hyperplane_sign(fw, cs, swap, 1, 0), -1);
  const PHFramework norm = normalize_hyperplane_signs(fw, cs, swap);
  EXPECT_EQ(hyperplane_sign(norm, cs, swap, 1, 0), 1);
  EXPECT_TRUE(validate_symmetric(norm, cs, swap));
}

TEST(Sampling, SymmetricRealizations) {
  const SymmetricGraph k4e = make_symmetric_graph(Graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}}),
                                                  make_schoenflies(2, "Cn", 2), {{1, 0, 3, 2}});
  const EuclideanFramework e = sample_euclidean(k4e, 2, 7);
  EXPECT_LT((e.p[1] + e.p[0]).norm(), 1e-12);
  EXPECT_TRUE(validate_symmetric(e, k4e.group, k4e.action));

  const SymmetricGraph k4s{k4e.graph, augment(k4e.group), k4e.action};
  const SphericalFramework s = sample_spherical(k4s, 2, std::vector<char>(4, 0), 7);
  for (const Vector& p : s.p) EXPECT_NEAR(p.norm(), 1.0, 1e-12);
  EXPECT_TRUE(validate_symmetric(s, k4s.group, k4s.action));

  const SymmetricGraph path = make_symmetric_graph(Graph(3, {{0, 1}, {1, 2}}), make_schoenflies(2, "Cs"), {{2, 1, 0}});
  const EuclideanFramework pf = sample_euclidean(path, 2, 3);
  EXPECT_NEAR(pf.p[1](0), 0.0, 1e-12);
}

TEST(Sampling, SameSeedSameFramework) {
  const SymmetricGraph sg = trivially_symmetric(complete_graph(4), 3);
  const SphericalFramework a = sample_spherical(sg, 2, {0, 1, 0, 0}, 42);
  const SphericalFramework b = sample_spherical(sg, 2, {0, 1, 0, 0}, 42);
  for (int v = 0; v < 4; ++v) EXPECT_EQ(a.p[v], b.p[v]);
  EXPECT_NEAR(a.p[1](2), 0.0, 1e-15);
}

TEST(EpsilonTransform, IdentityForAllPlus) {
  std::mt19937_64 rng(1);
  const SphericalFramework fw = on_sphere(complete_graph(3), {random_unit(3, rng), random_unit(3, rng), random_unit(3, rng)});
  const Matrix basic = basic_spherical_matrix(fw);
  EXPECT_EQ(epsilon_transform(basic, fw.graph, 3, {1, 1, 1}), basic);
}

TEST(EpsilonTransform, SingleEdgeSignPattern) {
  const SphericalFramework fw = on_sphere(Graph(2, {{0, 1}}), {vec({0, 0.6, 0.8}), vec({1, 0, 0})});
  const Matrix basic = basic_spherical_matrix(fw);
  const Matrix t = epsilon_transform(basic, fw.graph, 3, {-1, 1});
  // Edge row: both blocks flip sign with eps_0 eps_1 = -1, block 0 flips again.
  EXPECT_TRUE(t.block(0, 0, 1, 3).isApprox(basic.block(0, 0, 1, 3)));
  EXPECT_TRUE(t.block(0, 3, 1, 3).isApprox(-basic.block(0, 3, 1, 3)));
  // Vertex rows follow their own column block.
  EXPECT_TRUE(t.row(1).isApprox(-basic.row(1)));
  EXPECT_TRUE(t.row(2).isApprox(basic.row(2)));
}

// Property: the transformed matrix is the basic matrix of the sign-flipped
// framework, and ranks agree for every sign vector.
TEST(EpsilonTransform, EqualsMatrixOfFlippedFramework) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    SphericalFramework fw = on_sphere(complete_graph(4), {random_unit(3, rng), random_unit(3, rng),
                                                          random_unit(3, rng), random_unit(3, rng)});
    fw.graph.edges.erase(fw.graph.edges.begin() + trial % 6);
    const Matrix basic = basic_spherical_matrix(fw);
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<int> eps(4);
      SphericalFramework flipped = fw;
      for (int v = 0; v < 4; ++v) {
        eps[v] = (mask >> v & 1u) ? -1 : 1;
        flipped.p[v] *= eps[v];
      }
      const Matrix t = epsilon_transform(basic, fw.graph, 3, eps);
      EXPECT_LT((t - basic_spherical_matrix(flipped)).norm(), 1e-14);
      EXPECT_EQ(rank(t), rank(basic));
    }
  }
}

TEST(Checks, RejectOffSpherePoints) {
  SphericalFramework fw{Graph(1, {}), 2, {vec({1, 1, 0})}, {0}};
  EXPECT_THROW(check(fw), Error);
}
