#include "symrigid/numerics.hpp"

#include "symrigid/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace symrigid {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

// Two-sided Jacobi: divide-and-conquer SVD in Eigen 3.4 returns wrong
// singular vectors on some projector matrices with repeated singular values.
Eigen::JacobiSVD<Matrix> svd_of(const Matrix& m, unsigned options) {
  return Eigen::JacobiSVD<Matrix>(m, options);
}

int count_above(const Vector& sv, double relative_tol) {
  if (sv.size() == 0) return 0;
  const double smax = sv(0);
  if (!(smax > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > relative_tol * smax) ++r;
  }
  return r;
}

cpp_rational to_rational(double x) {
  if (x == 0.0) return cpp_rational(0);
  int exponent = 0;
  double mant = std::frexp(x, &exponent);
  // 53 bits of mantissa fit exactly in a 64-bit integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exponent -= 53;
  cpp_rational value{cpp_int(scaled)};
  if (exponent > 0) {
    value *= cpp_rational(cpp_int(1) << exponent);
  } else if (exponent < 0) {
    value /= cpp_rational(cpp_int(1) << (-exponent));
  }
  return value;
}

}  // namespace

void require_finite(const Matrix& m) {
  if (!m.allFinite()) throw Error(ErrorCode::NonFinite, "matrix has non-finite entries");
}

int exact_rank(const Matrix& m) {
  require_finite(m);
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  std::vector<std::vector<cpp_rational>> a(rows, std::vector<cpp_rational>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = to_rational(m(i, j));

  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (a[i][c] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(a[r], a[pivot]);
    for (int i = r + 1; i < rows; ++i) {
      if (a[i][c] == 0) continue;
      const cpp_rational f = a[i][c] / a[r][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

int rank(const Matrix& m, const TolerancePolicy& tol) {
  require_finite(m);
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if (tol.mode == RankMode::exact_rational) return exact_rank(m);
  return count_above(svd_of(m, 0).singularValues(), tol.relative_tol);
}

Matrix kernel_basis(const Matrix& m, const TolerancePolicy& tol) {
  require_finite(m);
  const Eigen::Index n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  auto svd = svd_of(m, Eigen::ComputeFullV);
  int r = count_above(svd.singularValues(), tol.relative_tol);
  if (tol.mode == RankMode::exact_rational) r = exact_rank(m);
  return svd.matrixV().rightCols(n - r);
}

Matrix range_basis(const Matrix& m, const TolerancePolicy& tol) {
  require_finite(m);
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  auto svd = svd_of(m, Eigen::ComputeThinU);
  const int r = count_above(svd.singularValues(), tol.relative_tol);
  return svd.matrixU().leftCols(r);
}

Matrix intersect(const Matrix& a, const Matrix& b, const TolerancePolicy& tol) {
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "intersect: row counts " + std::to_string(a.rows()) + " and " +
                    std::to_string(b.rows()));
  }
  const Eigen::Index n = a.rows();
  const Matrix qa = range_basis(a, tol);
  const Matrix qb = range_basis(b, tol);
  Matrix stacked(2 * n, n);
  stacked.topRows(n) = Matrix::Identity(n, n) - qa * qa.transpose();
  stacked.bottomRows(n) = Matrix::Identity(n, n) - qb * qb.transpose();
  return kernel_basis(stacked, TolerancePolicy{tol.relative_tol, RankMode::floating});
}

std::vector<int> block_offsets(const std::vector<int>& block_sizes) {
  std::vector<int> off(block_sizes.size() + 1, 0);
  for (std::size_t i = 0; i < block_sizes.size(); ++i) off[i + 1] = off[i] + block_sizes[i];
  return off;
}

Matrix symmetrize_projector(const std::vector<std::vector<int>>& perms,
                            const std::vector<int>& block_sizes, const BlockFn& block) {
  const auto off = block_offsets(block_sizes);
  const int total = off.back();
  Matrix p = Matrix::Zero(total, total);
  if (perms.empty()) throw Error(ErrorCode::DimensionMismatch, "empty group action");
  for (std::size_t g = 0; g < perms.size(); ++g) {
    if (perms[g].size() != block_sizes.size()) {
      throw Error(ErrorCode::DimensionMismatch, "permutation size differs from vertex count");
    }
    for (std::size_t v = 0; v < block_sizes.size(); ++v) {
      const int w = perms[g][v];
      const Matrix b = block(static_cast<int>(g), static_cast<int>(v));
      if (b.rows() != block_sizes[w] || b.cols() != block_sizes[v]) {
        throw Error(ErrorCode::DimensionMismatch, "block size does not match layout");
      }
      p.block(off[w], off[v], b.rows(), b.cols()) += b;
    }
  }
  p /= static_cast<double>(perms.size());
  return p;
}

}  // namespace symrigid
