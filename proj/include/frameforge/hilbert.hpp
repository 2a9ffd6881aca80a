#pragma once

// Dense complex linear algebra on finite-dimensional Hilbert spaces with
// tensor (Kronecker) structure.
//
// Flattening convention, used by every module: a multi-index (i_1, ..., i_m)
// over factor dimensions (d_1, ..., d_m) maps to
//   i_1 * d_2 * ... * d_m + ... + i_{m-1} * d_m + i_m,
// i.e. row-major with the first factor most significant. This is the order
// produced by tensor_vec / tensor_op.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace frameforge {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using COperator = Eigen::MatrixXcd;

/// Relative tolerance for rank and invertibility decisions (times sigma_max).
inline constexpr double kDefaultRelTol = 1e-9;

class SpaceShape {
 public:
  SpaceShape() = default;
  explicit SpaceShape(std::vector<std::size_t> factor_dims);

  const std::vector<std::size_t>& factor_dims() const noexcept { return dims_; }
  std::size_t factors() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }

  std::size_t flatten(std::span<const std::size_t> multi_index) const;
  std::vector<std::size_t> unflatten(std::size_t index) const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// <x, y>: linear in x, conjugate-linear in y.
Complex inner(const CVector& x, const CVector& y);

CVector tensor_vec(const CVector& x, const CVector& y);
CVector tensor_vec(std::span<const CVector> factors);

/// Kronecker product; (A (x) B)(x (x) y) = Ax (x) By.
COperator tensor_op(const COperator& a, const COperator& b);

struct SingularExtremes {
  double sigma_max = 0.0;
  double sigma_min = 0.0;
};

/// Largest and smallest of the min(rows, cols) singular values.
SingularExtremes op_norm_extremes(const COperator& a);

/// Spectral norm.
double op_norm(const COperator& a);

Eigen::VectorXd singular_values(const COperator& a);

/// Number of singular values above rel_tol * sigma_max. Zero for a zero matrix.
std::size_t numerical_rank(const COperator& a, double rel_tol = kDefaultRelTol);

/// Moore-Penrose left inverse of an injective operator (rows >= cols and
/// sigma_min > rel_tol * sigma_max). Throws NotInjective otherwise.
COperator left_pseudo_inverse(const COperator& a, double rel_tol = kDefaultRelTol);

/// Orthonormal basis (as columns) of the column space of a, using rel_tol for
/// the rank decision.
COperator range_basis(const COperator& a, double rel_tol = kDefaultRelTol);

/// Row-major flattening of a matrix into a vector of length rows * cols.
CVector flatten_rowmajor(const COperator& a);
COperator unflatten_rowmajor(const CVector& v, Eigen::Index rows, Eigen::Index cols);

/// Standard basis vector e_index in C^dim.
CVector basis_vector(Eigen::Index dim, Eigen::Index index);

}  // namespace frameforge
