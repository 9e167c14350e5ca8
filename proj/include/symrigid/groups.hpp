#pragma once

#include "symrigid/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace symrigid {

struct GroupName {
  std::string label;  // Schoenflies family: Cs, Cn, Ci, Cnv, Cnh, S2n, Dn, Dnh, Dnd, Td, O, C1
  int n = 1;
  bool operator==(const GroupName&) const = default;
};

// Finite group stored as an explicit element table with an orthogonal matrix
// per element. Element 0 is the identity. Generators (when the group was
// built from generator matrices) occupy ids 1..k in the order given.
class SymmetryGroup {
 public:
  SymmetryGroup() = default;

  // Closes the generator set under multiplication (entrywise tolerance 1e-9).
  static SymmetryGroup from_generators(int dim, const std::vector<Matrix>& generators,
                                       std::optional<GroupName> name = std::nullopt);

  // Builds from a full table; validates every axiom and the homomorphism.
  static SymmetryGroup from_table(std::vector<std::vector<int>> mult, std::vector<Matrix> reps,
                                  std::optional<GroupName> name = std::nullopt);

  int order() const { return static_cast<int>(reps_.size()); }
  int dim() const { return dim_; }
  int mult(int g, int h) const { return mult_[g][h]; }
  int inv(int g) const { return inv_[g]; }
  const Matrix& rep(int g) const { return reps_[g]; }
  const std::vector<Matrix>& reps() const { return reps_; }
  const std::vector<std::vector<int>>& table() const { return mult_; }
  const std::vector<int>& generators() const { return generators_; }
  const std::optional<GroupName>& name() const { return name_; }
  void set_name(std::optional<GroupName> n) { name_ = std::move(n); }

  // Element whose matrix equals m within tol, or -1.
  int find(const Matrix& m, double tol = 1e-9) const;
  bool contains_inversion(double tol = 1e-9) const;

  // Exhaustive axiom checks; throws InvalidArgument describing the first failure.
  void validate(double rep_tol = 1e-12) const;

  // Same abstract group with every matrix replaced.
  SymmetryGroup with_reps(std::vector<Matrix> reps) const;

 private:
  int dim_ = 0;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  std::vector<Matrix> reps_;
  std::vector<int> generators_;
  std::optional<GroupName> name_;
};

struct Subgroup {
  std::vector<int> members;  // sorted element ids
  bool contains(int g) const;
  int size() const { return static_cast<int>(members.size()); }
};

SymmetryGroup trivial_group(int dim);

// Schoenflies catalog. n is ignored for Cs, Ci, Td, O.
SymmetryGroup make_schoenflies(int dim, const std::string& label, int n = 1);

// Rotation by angle in the (i, j) coordinate plane of R^dim.
Matrix plane_rotation(int dim, int i, int j, double angle);
// Rotation about the unit axis u in R^3.
Matrix axis_rotation(const Vector& axis, double angle);

// rep(g) -> blockdiag(rep(g), 1)
SymmetryGroup augment(const SymmetryGroup& g);

std::vector<Subgroup> index2_subgroups(const SymmetryGroup& g);
bool is_subgroup(const SymmetryGroup& g, const Subgroup& h);
Subgroup subgroup_generated(const SymmetryGroup& g, const std::vector<int>& gens);

// rep'(g) = rep(g) on h and -rep(g) off h.
SymmetryGroup pair_representation(const SymmetryGroup& g, const Subgroup& h);

// Diagonal involution: +1 on the listed axes (1-based), -1 elsewhere.
SymmetryGroup involution_group(int d, const std::vector<int>& axis_dims);

// rep(g) -> q rep(g) q^T
SymmetryGroup conjugate(const SymmetryGroup& g, const Matrix& q);

// Unordered equality of matrix sets within tol.
bool same_matrix_set(const std::vector<Matrix>& a, const std::vector<Matrix>& b,
                     double tol = 1e-9);

bool is_orthogonal(const Matrix& q, double tol = 1e-12);

// One row of the pairing catalog on the 2-sphere or 3-sphere: the left group,
// the selector of the index-2 subgroup used for the sign twist, the expected
// right group, and the fixed change of basis q such that
// q * twisted * q^T equals the right catalog group as a matrix set.
struct PairingRow {
  std::string name;
  SymmetryGroup left;
  Subgroup subgroup;
  SymmetryGroup right;
  Matrix conjugator;
};

// Rows for every pairing family with parameters up to max_n.
std::vector<PairingRow> pairing_catalog(int max_n = 6);

}  // namespace symrigid
