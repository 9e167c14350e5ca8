#pragma once

#include "symrigid/numerics.hpp"
#include "symrigid/symgraph.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace symrigid {

enum class Space { euclidean, spherical, ph };

struct EuclideanFramework {
  Graph graph;
  int d = 2;
  std::vector<Vector> p;
};

// Points on the unit sphere in R^{d+1}; X lists the vertices on the equator.
struct SphericalFramework {
  Graph graph;
  int d = 2;
  std::vector<Vector> p;
  std::vector<char> equator;  // per vertex
};

enum class VertexKind { point, hyperplane };

// Points p_i in R^d and hyperplanes {x : <a_j, x> + r_j = 0} with unit a_j.
// coord[v] is the point for point vertices and the normal for hyperplanes.
struct PHFramework {
  Graph graph;
  int d = 2;
  std::vector<VertexKind> kind;
  std::vector<Vector> coord;
  std::vector<double> offset;  // r_j; 0 for points

  bool is_hyperplane(int v) const { return kind[v] == VertexKind::hyperplane; }
  int num_points() const;
  int num_hyperplanes() const;
};

using Framework = std::variant<EuclideanFramework, SphericalFramework, PHFramework>;

const Graph& graph_of(const Framework& fw);
Space space_of(const Framework& fw);
int ambient_dim(const Framework& fw);  // d, or d+1 for the sphere

// Throws InvalidArgument when sizes or norms break the framework invariants.
void check(const EuclideanFramework& fw);
void check(const SphericalFramework& fw, double tol = 1e-12);
void check(const PHFramework& fw, double tol = 1e-12);

// Recomputes the equator flags from the last coordinate.
std::vector<char> equator_from_coords(const SphericalFramework& fw, double tol = 1e-9);

// Velocity layout: column offset and width per vertex.
struct Layout {
  std::vector<int> size;
  std::vector<int> offset;
  int total = 0;
  int column(int vertex, int coord) const { return offset[vertex] + coord; }
};
Layout layout_of(const EuclideanFramework& fw);
Layout layout_of(const SphericalFramework& fw);
// PH: points first (d columns each), then hyperplanes (d+1: normal then offset).
Layout layout_of(const PHFramework& fw);

Matrix rigidity_matrix_euclidean(const EuclideanFramework& fw);
Matrix rigidity_matrix_spherical(const SphericalFramework& fw);
Matrix rigidity_matrix_ph(const PHFramework& fw);
// Difference form on the sphere: rows <p_i - p_j, u_i - u_j> plus tangency.
Matrix rigidity_matrix_cone(const SphericalFramework& fw);
Matrix rigidity_matrix(const Framework& fw);
// Number of rows that come from edges (they come first).
int edge_row_count(const Framework& fw);

struct TrivialMotions {
  Matrix basis;  // orthonormal columns
  int expected = 0;
  bool span_deficient = false;
};
TrivialMotions trivial_motion_basis(const EuclideanFramework& fw);
TrivialMotions trivial_motion_basis(const SphericalFramework& fw);
TrivialMotions trivial_motion_basis(const PHFramework& fw);
TrivialMotions trivial_motion_basis(const Framework& fw);

struct RigidityReport {
  int rows = 0;
  int cols = 0;
  int rank = 0;
  int nullity = 0;
  int trivial_dim = 0;
  bool span_deficient = false;
  bool is_inf_rigid = false;
  bool is_isostatic = false;
  std::vector<int> redundant_edges;   // filled when requested
  std::vector<int> degenerate_edges;  // coincident endpoints / zero rows
};

struct AnalyzeOptions {
  TolerancePolicy tol{};
  bool list_redundant = false;
};

RigidityReport analyze(const Framework& fw, const AnalyzeOptions& opt = {});

// Group action on coordinates: the matrix of element g must map framework
// coordinates of v onto those of action[g][v] (hyperplanes up to a sign).
bool validate_symmetric(const Framework& fw, const SymmetryGroup& group, const std::vector<Perm>& action,
                        double tol = 1e-9);

// Flips (a, r) -> (-a, -r) so that a_{g v} = rep(g) a_v along each hyperplane
// orbit, measured from the orbit's smallest vertex.
PHFramework normalize_hyperplane_signs(const PHFramework& fw, const SymmetryGroup& group,
                                       const std::vector<Perm>& action);

// Sign e with rep(g) a_v = e * a_{g v}; +1 for points.
int hyperplane_sign(const PHFramework& fw, const SymmetryGroup& group, const std::vector<Perm>& action, int g,
                    int v);

// Shift all hyperplanes to pass through the origin.
PHFramework zero_offsets(const PHFramework& fw);

// Symmetric realizations. `special` marks X: equator vertices on the sphere,
// hyperplane vertices for PH, ignored for Euclidean. Orbits must be closed.
EuclideanFramework sample_euclidean(const SymmetricGraph& sg, int d, std::uint64_t seed);
SphericalFramework sample_spherical(const SymmetricGraph& sg, int d, const std::vector<char>& special,
                                    std::uint64_t seed);
PHFramework sample_ph(const SymmetricGraph& sg, int d, const std::vector<char>& special, std::uint64_t seed);
Framework sample_symmetric(const SymmetricGraph& sg, Space space, int d, const std::vector<char>& special,
                           std::uint64_t seed);

// Edge rows p_j | p_i and vertex rows p_i; sign flips by eps give the matrix
// of the framework with p_i replaced by eps_i p_i.
Matrix basic_spherical_matrix(const SphericalFramework& fw);
Matrix epsilon_transform(const Matrix& basic, const Graph& graph, int block, const std::vector<int>& eps);

}  // namespace symrigid
