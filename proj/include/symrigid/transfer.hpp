#pragma once

#include "symrigid/frameworks.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace symrigid {

// Optional symmetry attached to a transfer. When present, operators check
// orbit closure and carry the group along.
struct Symmetry {
  SymmetryGroup group;
  std::vector<Perm> action;
};

// p_i -> -p_i on `subset`. With a symmetry attached the subset must be a
// union of vertex orbits.
SphericalFramework partial_inversion(const SphericalFramework& fw, const std::vector<int>& subset,
                                     const std::optional<Symmetry>& sym = std::nullopt);

// Points (p, 1)/|(p, 1)|, hyperplanes (a, 0); offsets are dropped.
SphericalFramework project_ph_to_sphere(const PHFramework& fw);

// Inverts strictly lower vertices (whole orbits when symmetric), then sends
// q to q[0..d)/q_d off the equator and to the hyperplane (q[0..d), 0) on it.
// Hyperplane normals get a positive first nonzero coordinate.
PHFramework project_sphere_to_ph(const SphericalFramework& fw, const std::optional<Symmetry>& sym = std::nullopt,
                                 double equator_tol = 1e-9);

// blockdiag(rep, 1) -> rep; throws InvalidArgument if some matrix moves the last axis.
SymmetryGroup restrict_group(const SymmetryGroup& g);

struct SymmetricSpherical {
  SphericalFramework fw;
  SymmetryGroup group;
  std::vector<Perm> action;
};

// Negates every vertex g v (v the smallest vertex of its orbit) with g outside
// `subgroup`; the result is symmetric under pair_representation(group, subgroup).
SymmetricSpherical pairing_transform(const SphericalFramework& fw, const SymmetryGroup& group,
                                     const std::vector<Perm>& action, const Subgroup& subgroup);

// Union with the antipodal copy; vertex v + n is the copy of v. Element
// g + s|G| of the new group acts as (-1)^s rep(g).
SymmetricSpherical double_cover(const SphericalFramework& fw, const SymmetryGroup& group,
                                const std::vector<Perm>& action);

// Multiplies every coordinate by q; equator flags are recomputed on the
// sphere. The representation, if any, becomes q rep q^T.
SphericalFramework rotate(const SphericalFramework& fw, const Matrix& q);
EuclideanFramework rotate(const EuclideanFramework& fw, const Matrix& q);
SymmetricSpherical rotate(const SymmetricSpherical& s, const Matrix& q);

// Quarter turn in the (first, last) coordinate plane with e_1 -> -e_last.
Matrix quarter_turn(int dim);

struct RotationResult {
  SphericalFramework fw;
  Matrix rotation;
  double angle = 0.0;
};

// Smallest angle among seeded candidates, in a (k, last) plane, that leaves
// every vertex at |last coordinate| >= 1e-6. With a symmetry attached only
// rotations commuting with the group are used; a vertex on the normal line
// of a mirror raises VertexOnMirrorNormal.
RotationResult rotate_off_equator(const SphericalFramework& fw, const std::optional<Symmetry>& sym,
                                  std::uint64_t seed = 1);

struct PointLinePair {
  PHFramework fw;
  SymmetryGroup group;  // half-turn in the plane
  std::vector<Perm> action;
};

// Mirror-symmetric framework in the plane (x -> -x) to a half-turn symmetric
// point-line framework. Fixed points become lines through the origin and
// fixed lines along the mirror become a point at the origin.
PointLinePair pair_with_fixed(const PHFramework& fw, const SymmetryGroup& group, const std::vector<Perm>& action);
PointLinePair pair_with_fixed(const EuclideanFramework& fw, const SymmetryGroup& group,
                              const std::vector<Perm>& action);

PHFramework as_point_framework(const EuclideanFramework& fw);

}  // namespace symrigid
