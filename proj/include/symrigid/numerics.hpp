#pragma once

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace symrigid {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class RankMode { floating, exact_rational };

struct TolerancePolicy {
  double relative_tol = 1e-9;
  RankMode mode = RankMode::floating;
};

// Throws NonFinite on NaN/inf entries.
void require_finite(const Matrix& m);

// Singular values above relative_tol * sigma_max count toward the rank.
// Exact mode reads every double as the rational number it represents.
int rank(const Matrix& m, const TolerancePolicy& tol = {});
int exact_rank(const Matrix& m);

// Orthonormal columns spanning ker(m).
Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol = {});

// Orthonormal columns spanning the column space of m.
Matrix range_basis(const Matrix& m, const TolerancePolicy& tol = {});

// Orthonormal basis of span(a) ∩ span(b), both given as column sets.
Matrix intersect(const Matrix& a, const Matrix& b, const TolerancePolicy& tol = {});

// Averaging projector onto the invariant vectors of a block-permutation
// representation. perms[g][v] is the image of vertex v under element g;
// block(g, v) maps the coordinates of v to those of perms[g][v].
using BlockFn = std::function<Matrix(int element, int vertex)>;
Matrix symmetrize_projector(const std::vector<std::vector<int>>& perms,
                            const std::vector<int>& block_sizes, const BlockFn& block);

// Column offsets for vertex-major layouts, followed by the total width.
std::vector<int> block_offsets(const std::vector<int>& block_sizes);

}  // namespace symrigid
