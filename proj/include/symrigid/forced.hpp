#pragma once

#include "symrigid/frameworks.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace symrigid {

// Orthonormal basis of the velocities u with u_{g v} = B(g, v) u_v, where
// B is rep(g) for points and sphere vertices and ±blockdiag(rep(g), 1) for
// hyperplanes (sign from the normals).
Matrix symmetric_velocity_basis(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                                const TolerancePolicy& tol = {});

struct ForcedReport {
  int symmetric_dim = 0;
  int restricted_rank = 0;
  int forced_nullity = 0;
  int trivial_symmetric_dim = 0;
  bool forced_rigid = false;
};

ForcedReport forced_rigidity(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                             const TolerancePolicy& tol = {});

struct OrbitMatrix {
  Matrix matrix;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  GainGraph quotient;
  QuotientMap map;
};

// Free actions only. Columns follow the quotient vertices (orbit order);
// PH puts point orbits before hyperplane orbits.
OrbitMatrix orbit_matrix_spherical(const SphericalFramework& fw, const SymmetryGroup& group,
                                   const std::vector<Perm>& action);
OrbitMatrix orbit_matrix_ph(const PHFramework& fw, const SymmetryGroup& group, const std::vector<Perm>& action);

// Best of `trials` symmetric samples, ranked by full rank plus restricted rank.
struct RegularSample {
  Framework fw;
  RigidityReport full;
  ForcedReport forced;
  std::uint64_t seed = 0;
};
RegularSample sample_regular(const SymmetricGraph& sg, Space space, int d, const std::vector<char>& special,
                             std::uint64_t seed, int trials = 3, const TolerancePolicy& tol = {});

struct VerdictContext {
  Space space = Space::euclidean;
  int d = 2;
  std::vector<char> hyperplanes;  // PH only
};

struct CombinatorialVerdict {
  std::optional<bool> predicted_forced_rigid;
  std::optional<bool> predicted_inf_rigid;
  std::optional<bool> predicted_isostatic;
  std::vector<std::string> tags;  // one per prediction source
  std::optional<std::vector<int>> tight_231;
  std::optional<std::vector<int>> tight_232;
  std::vector<FixedCount> fixed;
  bool applicable() const { return !tags.empty(); }
};

// Citation tags attached to predictions.
inline constexpr const char* kTagCyclicForced = "free-cyclic-forced-count";
inline constexpr const char* kTagZ2Rigidity = "free-z2-rigidity-count";
inline constexpr const char* kTagMirrorTwoLines = "point-line-mirror-two-lines";
inline constexpr const char* kTagFixedVertexIsostatic = "fixed-vertex-isostatic-count";
inline constexpr const char* kTagHalfTurnFixedLines = "point-line-halfturn-fixed-lines";

CombinatorialVerdict combinatorial_verdict(const SymmetricGraph& sg, const VerdictContext& ctx);
CombinatorialVerdict combinatorial_verdict(const GainGraph& gg, const VerdictContext& ctx);

enum class PlanarType { none, identity, mirror, rotation };
// Recognizes a cyclic planar group by its matrices; order in *n.
PlanarType classify_planar(const SymmetryGroup& g, int* n = nullptr);

}  // namespace symrigid
