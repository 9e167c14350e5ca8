#include "symrigid/error.hpp"
#include "symrigid/forced.hpp"
#include "symrigid/io.hpp"
#include "symrigid/transfer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace symrigid;

namespace {

const std::string kData = SYMRIGID_DATA_DIR;

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

Vector random_unit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = nd(rng);
  return v.normalized();
}

Graph random_graph(int n, double density, std::mt19937_64& rng) {
  Graph g(n, {});
  std::bernoulli_distribution coin(density);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

SphericalFramework random_spherical(int d, int n, std::mt19937_64& rng) {
  SphericalFramework fw{random_graph(n, 0.6, rng), d, {}, {}};
  for (int v = 0; v < n; ++v) fw.p.push_back(random_unit(d + 1, rng));
  fw.equator = equator_from_coords(fw);
  return fw;
}

int gap(const Framework& fw) {
  const RigidityReport r = analyze(fw);
  return r.nullity - r.trivial_dim;
}

int forced_gap(const Framework& fw, const SymmetryGroup& g, const std::vector<Perm>& action) {
  const ForcedReport r = forced_rigidity(fw, g, action);
  return r.forced_nullity - r.trivial_symmetric_dim;
}

// Mirror-symmetric graph: pairs (2i, 2i+1) swapped, the last `fixed`
// vertices fixed; edges closed under the swap.
SymmetricGraph random_mirror_graph(int pairs, int fixed, std::mt19937_64& rng) {
  const int n = 2 * pairs + fixed;
  Perm swap(n);
  for (int i = 0; i < pairs; ++i) {
    swap[2 * i] = 2 * i + 1;
    swap[2 * i + 1] = 2 * i;
  }
  for (int v = 2 * pairs; v < n; ++v) swap[v] = v;
  Graph g(n, {});
  std::bernoulli_distribution coin(0.5);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (g.find_edge(u, v) >= 0 || !coin(rng)) continue;
      g.add_edge(u, v);
      if (g.find_edge(swap[u], swap[v]) < 0) g.add_edge(swap[u], swap[v]);
    }
  return make_symmetric_graph(g, make_schoenflies(2, "Cs"), {swap});
}

}  // namespace

TEST(PartialInversion, EmptyAndFullSets) {
  std::mt19937_64 rng(1);
  const SphericalFramework fw = random_spherical(2, 5, rng);
  const SphericalFramework same = partial_inversion(fw, {});
  for (int v = 0; v < 5; ++v) EXPECT_EQ(same.p[v], fw.p[v]);
  const SphericalFramework anti = partial_inversion(fw, {0, 1, 2, 3, 4});
  for (int v = 0; v < 5; ++v) EXPECT_EQ(anti.p[v], -fw.p[v]);
  EXPECT_EQ(rank(rigidity_matrix(anti)), rank(rigidity_matrix(fw)));
}

// Property: inverting any vertex subset keeps the spherical rank.
TEST(PartialInversion, RankInvariantOnRandomFrameworks) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 2;
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const SphericalFramework fw = random_spherical(d, n, rng);
    std::vector<int> subset;
    for (int v = 0; v < n; ++v)
      if (std::bernoulli_distribution(0.5)(rng)) subset.push_back(v);
    EXPECT_EQ(rank(rigidity_matrix(partial_inversion(fw, subset))), rank(rigidity_matrix(fw))) << "trial " << trial;
  }
}

TEST(PartialInversion, SymmetricModeNeedsWholeOrbits) {
  const SymmetryGroup c2 = augment(make_schoenflies(2, "Cn", 2));
  const SymmetricGraph sg = make_symmetric_graph(Graph(4, {{0, 1}, {2, 3}}), c2, {{1, 0, 3, 2}});
  const SphericalFramework fw = sample_spherical(sg, 2, {0, 0, 0, 0}, 3);
  const Symmetry sym{sg.group, sg.action};
  EXPECT_NO_THROW(partial_inversion(fw, {2, 3}, sym));
  try {
    partial_inversion(fw, {2}, sym);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrbitClosed);
  }
}

TEST(Projection, PointAndLineExamples) {
  PHFramework fw;
  fw.graph = Graph(3, {});
  fw.d = 2;
  fw.kind = {VertexKind::point, VertexKind::point, VertexKind::hyperplane};
  fw.coord = {vec({0, 0}), vec({1, 0}), vec({0, 1})};
  fw.offset = {0, 0, 5.0};
  const SphericalFramework s = project_ph_to_sphere(fw);
  EXPECT_LT((s.p[0] - vec({0, 0, 1})).norm(), 1e-15);
  EXPECT_LT((s.p[1] - vec({1, 0, 1}) / std::sqrt(2.0)).norm(), 1e-15);
  EXPECT_LT((s.p[2] - vec({0, 1, 0})).norm(), 1e-15);
  EXPECT_EQ(s.equator, (std::vector<char>{0, 0, 1}));
}

TEST(Projection, SphereToPlaneExamples) {
  SphericalFramework s{Graph(3, {}), 2, {vec({0, 0, 1}), vec({1, 0, 0}), vec({0.6, 0, -0.8})}, {0, 1, 0}};
  const PHFramework ph = project_sphere_to_ph(s);
  EXPECT_FALSE(ph.is_hyperplane(0));
  EXPECT_LT(ph.coord[0].norm(), 1e-15);
  ASSERT_TRUE(ph.is_hyperplane(1));
  EXPECT_LT((ph.coord[1] - vec({1, 0})).norm(), 1e-15);
  EXPECT_EQ(ph.offset[1], 0.0);
  // The lower vertex is inverted before projecting.
  EXPECT_LT((ph.coord[2] - vec({-0.75, 0})).norm(), 1e-12);

  s.equator = {0, 0, 0};
  try {
    project_sphere_to_ph(s);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EquatorMismatch);
  }
}

// Property: PH -> sphere -> PH is the identity once hyperplanes pass through
// the origin and normals are sign-normalized; the flex count is preserved.
TEST(Projection, RoundTripAndTransferEquivalence) {
  for (int trial = 0; trial < 40; ++trial) {
    std::mt19937_64 rng(100 + trial);
    const int d = 2 + trial % 2;
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    const SymmetricGraph sg = trivially_symmetric(random_graph(n, 0.7, rng), d);
    std::vector<char> lines(n, 0);
    for (int v = 0; v < n && v < 3; ++v) lines[v] = std::bernoulli_distribution(0.4)(rng);
    const PHFramework ph = sample_ph(sg, d, lines, rng());
    const SphericalFramework s = project_ph_to_sphere(ph);
    const PHFramework back = project_sphere_to_ph(s);
    const PHFramework flat = zero_offsets(ph);
    for (int v = 0; v < n; ++v) {
      ASSERT_EQ(back.is_hyperplane(v), flat.is_hyperplane(v));
      const double dist = std::min((back.coord[v] - flat.coord[v]).norm(),
                                   flat.is_hyperplane(v) ? (back.coord[v] + flat.coord[v]).norm() : 1e9);
      EXPECT_LT(dist, 1e-9) << "trial " << trial << " vertex " << v;
    }
    EXPECT_EQ(gap(ph), gap(s)) << "trial " << trial;
  }
}

TEST(RestrictGroup, InvertsAugment) {
  const SymmetryGroup g = make_schoenflies(2, "Cnv", 3);
  const SymmetryGroup r = restrict_group(augment(g));
  EXPECT_EQ(r.dim(), 2);
  for (int a = 0; a < g.order(); ++a) EXPECT_LT((r.rep(a) - g.rep(a)).norm(), 1e-15);
  EXPECT_THROW(restrict_group(make_schoenflies(3, "Cnh", 2)), Error);
}

TEST(Pairing, MirrorOrbitBecomesHalfTurnOrbit) {
  const double x = 0.48, y = 0.6, z = 0.64;
  SphericalFramework fw{Graph(2, {{0, 1}}), 2, {vec({x, y, z}), vec({-x, y, z})}, {0, 0}};
  const SymmetryGroup cs = augment(make_schoenflies(2, "Cs"));
  const SymmetricSpherical p = pairing_transform(fw, cs, {{0, 1}, {1, 0}}, Subgroup{{0}});
  EXPECT_LT((p.fw.p[0] - vec({x, y, z})).norm(), 1e-15);
  EXPECT_LT((p.fw.p[1] - vec({x, -y, -z})).norm(), 1e-15);
  Matrix half = Matrix::Identity(3, 3);
  half(1, 1) = half(2, 2) = -1;
  EXPECT_LT((p.group.rep(1) - half).norm(), 1e-15);
}

TEST(Pairing, SixFoldToC3hKeepsRanks) {
  const SymmetryGroup c6 = make_schoenflies(3, "Cn", 6);
  GainGraph gg{2, {{0, 1, 0}, {0, 1, 1}, {0, 0, 1}, {1, 1, 2}}, c6};
  const SymmetricGraph sg = lift(gg);
  const SphericalFramework fw = sample_spherical(sg, 2, std::vector<char>(sg.graph.n, 0), 4);
  const Subgroup c3 = subgroup_generated(c6, {c6.mult(1, 1)});
  const SymmetricSpherical p = pairing_transform(fw, sg.group, sg.action, c3);
  EXPECT_TRUE(same_matrix_set(p.group.reps(), make_schoenflies(3, "Cnh", 3).reps()));
  EXPECT_EQ(rank(rigidity_matrix(p.fw)), rank(rigidity_matrix(fw)));
  EXPECT_EQ(rank(orbit_matrix_spherical(p.fw, p.group, p.action).matrix),
            rank(orbit_matrix_spherical(fw, sg.group, sg.action).matrix));
}

TEST(Pairing, Errors) {
  const SymmetryGroup c2 = augment(make_schoenflies(2, "Cn", 2));
  const SymmetricGraph sg = make_symmetric_graph(Graph(2, {{0, 1}}), c2, {{1, 0}});
  const SphericalFramework fw = sample_spherical(sg, 2, {0, 0}, 1);
  try {
    pairing_transform(fw, sg.group, sg.action, Subgroup{{0, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotIndex2);
  }
  const SymmetricGraph fixed = make_symmetric_graph(Graph(3, {{0, 1}, {1, 2}}), c2, {{2, 1, 0}});
  const SphericalFramework ff = sample_spherical(fixed, 2, {0, 0, 0}, 1);
  try {
    pairing_transform(ff, fixed.group, fixed.action, Subgroup{{0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ActionNotFree);
  }
}

TEST(DoubleCover, TrivialGroupGivesInversionPair) {
  std::mt19937_64 rng(7);
  SphericalFramework fw{complete_graph(3), 2, {random_unit(3, rng), random_unit(3, rng), random_unit(3, rng)}, {}};
  fw.equator = equator_from_coords(fw);
  ASSERT_TRUE(analyze(fw).is_inf_rigid);
  const SymmetricSpherical c = double_cover(fw, trivial_group(3), {{0, 1, 2}});
  EXPECT_EQ(c.fw.graph.n, 6);
  EXPECT_EQ(c.fw.graph.num_edges(), 6);
  ASSERT_TRUE(c.group.name());
  EXPECT_EQ(c.group.name()->label, "Ci");
  EXPECT_TRUE(c.group.contains_inversion());
  for (int v = 0; v < 3; ++v) EXPECT_EQ(c.fw.p[v + 3], -fw.p[v]);
  EXPECT_FALSE(analyze(c.fw).is_inf_rigid);
  EXPECT_EQ(forced_rigidity(fw, trivial_group(3), {{0, 1, 2}}).forced_rigid,
            forced_rigidity(c.fw, c.group, c.action).forced_rigid);
}

TEST(DoubleCover, RejectsGroupsWithInversion) {
  const SymmetryGroup ci = make_schoenflies(3, "Ci");
  const SymmetricGraph sg = make_symmetric_graph(Graph(2, {{0, 1}}), ci, {{1, 0}});
  const SphericalFramework fw = sample_spherical(sg, 2, {0, 0}, 1);
  try {
    double_cover(fw, sg.group, sg.action);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ContainsInversion);
  }
}

TEST(Rotate, IdentityQuarterTurnAndErrors) {
  std::mt19937_64 rng(3);
  const SphericalFramework fw = random_spherical(2, 5, rng);
  const SphericalFramework same = rotate(fw, Matrix::Identity(3, 3));
  for (int v = 0; v < 5; ++v) EXPECT_EQ(same.p[v], fw.p[v]);

  SphericalFramework eq{Graph(1, {}), 2, {vec({1, 0, 0})}, {1}};
  const SphericalFramework turned = rotate(eq, quarter_turn(3));
  EXPECT_LT((turned.p[0] - vec({0, 0, -1})).norm(), 1e-15);
  EXPECT_EQ(turned.equator, std::vector<char>{0});

  Matrix shear = Matrix::Identity(3, 3);
  shear(0, 1) = 0.1;
  try {
    rotate(fw, shear);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotOrthogonal);
  }
}

TEST(Rotate, RankPreservedAndGroupConjugated) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const SphericalFramework fw = random_spherical(2, 6, rng);
    const Matrix q = axis_rotation(random_unit(3, rng), 1.0 + trial);
    EXPECT_EQ(rank(rigidity_matrix(rotate(fw, q))), rank(rigidity_matrix(fw)));
  }
  const SymmetryGroup c2 = augment(make_schoenflies(2, "Cn", 2));
  const SymmetricGraph sg = make_symmetric_graph(Graph(2, {{0, 1}}), c2, {{1, 0}});
  const SymmetricSpherical s{sample_spherical(sg, 2, {0, 0}, 2), c2, sg.action};
  const SymmetricSpherical r = rotate(s, quarter_turn(3));
  EXPECT_TRUE(validate_symmetric(r.fw, r.group, r.action));
}

TEST(RotateOffEquator, MovesEveryVertexAndKeepsRank) {
  std::mt19937_64 rng(5);
  SphericalFramework fw = random_spherical(2, 5, rng);
  fw.p[1] = vec({0.6, 0.8, 0});
  fw.p[3] = vec({0, 1, 0});
  fw.equator = equator_from_coords(fw);
  const RotationResult r = rotate_off_equator(fw, std::nullopt, 1);
  for (const Vector& p : r.fw.p) EXPECT_GE(std::abs(p[2]), 1e-6);
  EXPECT_EQ(rank(rigidity_matrix(r.fw)), rank(rigidity_matrix(fw)));
  EXPECT_TRUE(is_orthogonal(r.rotation));
}

TEST(RotateOffEquator, VertexOnMirrorNormalIsReported) {
  const SymmetryGroup cs = augment(make_schoenflies(2, "Cs"));
  // Vertex 1 lies on the mirror plane, so a commuting rotation can lift it.
  SphericalFramework ok{Graph(3, {{0, 1}, {1, 2}}), 2, {vec({0.6, 0, 0.8}), vec({0, 1, 0}), vec({-0.6, 0, 0.8})}, {}};
  ok.equator = equator_from_coords(ok);
  EXPECT_NO_THROW(rotate_off_equator(ok, Symmetry{cs, {{0, 1, 2}, {2, 1, 0}}}, 1));
  // Vertices 1 and 3 sit on the mirror's normal line, which every commuting
  // rotation keeps on the equator.
  SphericalFramework bad{Graph(4, {{0, 1}, {2, 3}}), 2,
                         {vec({0.6, 0, 0.8}), vec({1, 0, 0}), vec({-0.6, 0, 0.8}), vec({-1, 0, 0})}, {}};
  bad.equator = equator_from_coords(bad);
  try {
    rotate_off_equator(bad, Symmetry{cs, {{0, 1, 2, 3}, {2, 3, 0, 1}}}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::VertexOnMirrorNormal);
  }
}

TEST(PairWithFixed, PathWithMiddleVertexOnMirror) {
  const EuclideanFramework fw{Graph(3, {{0, 1}, {1, 2}}), 2, {vec({1, 1}), vec({0, 2}), vec({-1, 1})}};
  const SymmetryGroup cs = make_schoenflies(2, "Cs");
  const std::vector<Perm> action{{0, 1, 2}, {2, 1, 0}};
  const PointLinePair p = pair_with_fixed(fw, cs, action);
  EXPECT_EQ(p.fw.num_hyperplanes(), 1);
  EXPECT_TRUE(p.fw.is_hyperplane(1));
  EXPECT_NEAR(p.fw.offset[1], 0.0, 1e-15);
  EXPECT_LT((p.fw.coord[0] + p.fw.coord[2]).norm(), 1e-12);  // swapped by the half-turn
  EXPECT_LT((p.group.rep(1) + Matrix::Identity(2, 2)).norm(), 1e-15);
  EXPECT_EQ(gap(fw), gap(p.fw));
}

// Hand-built mirror instance: a line on the mirror, two fixed points on it and
// two swapped arms. Flexible, with one non-trivial symmetric motion.
TEST(PairWithFixed, GrabBucketStaysFlexible) {
  const FrameworkDocument doc = framework_from_json(read_document(kData + "/grab_bucket.json"));
  const auto& fw = std::get<PHFramework>(doc.fw);
  const PointLinePair p = pair_with_fixed(fw, *doc.group, doc.action);
  // Fixed points 0 and 1 become lines through the origin; the mirror line 2
  // becomes a point at the origin.
  EXPECT_TRUE(p.fw.is_hyperplane(0));
  EXPECT_TRUE(p.fw.is_hyperplane(1));
  EXPECT_NEAR(p.fw.offset[0], 0.0, 1e-12);
  EXPECT_NEAR(p.fw.offset[1], 0.0, 1e-12);
  ASSERT_FALSE(p.fw.is_hyperplane(2));
  EXPECT_LT(p.fw.coord[2].norm(), 1e-12);

  EXPECT_GT(gap(doc.fw), 0);
  EXPECT_EQ(gap(doc.fw), gap(p.fw));
  EXPECT_GT(forced_gap(doc.fw, *doc.group, doc.action), 0);
  EXPECT_EQ(forced_gap(doc.fw, *doc.group, doc.action), forced_gap(p.fw, p.group, p.action));
}

TEST(PairWithFixed, FreeCaseMatchesPairingThenProjection) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const SymmetricGraph sg = random_mirror_graph(3, 0, rng);
    const PHFramework fw = sample_ph(sg, 2, {0, 0, 0, 0, 1, 1}, rng());
    const PointLinePair direct = pair_with_fixed(fw, sg.group, sg.action);

    const SphericalFramework s = project_ph_to_sphere(fw);
    const SymmetricSpherical paired = pairing_transform(s, augment(sg.group), sg.action, Subgroup{{0}});
    const Matrix q = quarter_turn(3);
    const SphericalFramework r = rotate(paired.fw, q);
    const SymmetryGroup turned = conjugate(paired.group, q);
    EXPECT_TRUE(same_matrix_set(turned.reps(), augment(make_schoenflies(2, "Cn", 2)).reps()));
    const PHFramework manual = project_sphere_to_ph(r, Symmetry{turned, sg.action});
    for (int v = 0; v < sg.graph.n; ++v) {
      ASSERT_EQ(manual.is_hyperplane(v), direct.fw.is_hyperplane(v));
      EXPECT_LT((manual.coord[v] - direct.fw.coord[v]).norm(), 1e-9) << "trial " << trial << " vertex " << v;
    }
  }
}

// Property: random mirror point-line frameworks with fixed vertices keep
// both flex counts after the transfer.
TEST(PairWithFixed, PreservesFlexCountsOnRandomInstances) {
  std::mt19937_64 rng(8);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int pairs = std::uniform_int_distribution<int>(1, 3)(rng);
    const int fixed = std::uniform_int_distribution<int>(1, 2)(rng);
    const SymmetricGraph sg = random_mirror_graph(pairs, fixed, rng);
    std::vector<char> lines(sg.graph.n, 0);
    if (std::bernoulli_distribution(0.5)(rng)) lines[0] = lines[1] = 1;
    const PHFramework fw = sample_ph(sg, 2, lines, rng());
    const PointLinePair p = pair_with_fixed(fw, sg.group, sg.action);
    for (int v = 2 * pairs; v < sg.graph.n; ++v) EXPECT_TRUE(p.fw.is_hyperplane(v));  // fixed points turn into lines
    EXPECT_EQ(gap(fw), gap(p.fw)) << "trial " << trial;
    EXPECT_EQ(forced_gap(fw, sg.group, sg.action), forced_gap(p.fw, p.group, p.action)) << "trial " << trial;
    ++checked;
  }
  EXPECT_EQ(checked, 40);
}

TEST(PairWithFixed, FixedPointOffMirrorIsRejected) {
  const EuclideanFramework fw{Graph(2, {{0, 1}}), 2, {vec({0.5, 1}), vec({0, 2})}};
  const SymmetryGroup cs = make_schoenflies(2, "Cs");
  try {
    pair_with_fixed(as_point_framework(fw), cs, {{0, 1}, {0, 1}});
    FAIL();
  } catch (const Error& e) {
    // The framework is not even symmetric; either check may fire first.
    EXPECT_TRUE(e.code() == ErrorCode::FixedVertexOffMirror || e.code() == ErrorCode::NotSymmetric);
  }
}
