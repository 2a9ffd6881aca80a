#include "frameforge/hilbert.hpp"

#include <algorithm>
#include <string>

#include "frameforge/errors.hpp"

namespace frameforge {

SpaceShape::SpaceShape(std::vector<std::size_t> factor_dims) : dims_(std::move(factor_dims)) {
  total_ = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw InvalidArgument("factor dimensions must be positive");
    total_ *= d;
  }
}

std::size_t SpaceShape::flatten(std::span<const std::size_t> multi_index) const {
  if (multi_index.size() != dims_.size())
    throw DimensionMismatch("multi-index has " + std::to_string(multi_index.size()) +
                            " entries, shape has " + std::to_string(dims_.size()));
  std::size_t index = 0;
  for (std::size_t j = 0; j < dims_.size(); ++j) {
    if (multi_index[j] >= dims_[j]) throw InvalidArgument("multi-index entry out of range");
    index = index * dims_[j] + multi_index[j];
  }
  return index;
}

std::vector<std::size_t> SpaceShape::unflatten(std::size_t index) const {
  if (index >= total_) throw InvalidArgument("flat index out of range");
  std::vector<std::size_t> multi(dims_.size());
  for (std::size_t j = dims_.size(); j-- > 0;) {
    multi[j] = index % dims_[j];
    index /= dims_[j];
  }
  return multi;
}

Complex inner(const CVector& x, const CVector& y) {
  if (x.size() != y.size())
    throw DimensionMismatch("inner: dimensions " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  // Eigen's dot() conjugates its left operand.
  return y.dot(x);
}

CVector tensor_vec(const CVector& x, const CVector& y) {
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return out;
}

CVector tensor_vec(std::span<const CVector> factors) {
  if (factors.empty()) throw InvalidArgument("tensor_vec: no factors");
  CVector out = factors.front();
  for (std::size_t j = 1; j < factors.size(); ++j) out = tensor_vec(out, factors[j]);
  return out;
}

COperator tensor_op(const COperator& a, const COperator& b) {
  COperator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXd singular_values(const COperator& a) {
  if (a.size() == 0) return Eigen::VectorXd();
  return Eigen::JacobiSVD<COperator>(a).singularValues();
}

SingularExtremes op_norm_extremes(const COperator& a) {
  if (a.size() == 0) throw InvalidArgument("op_norm_extremes: empty operator");
  const Eigen::VectorXd s = singular_values(a);
  return {s(0), s(s.size() - 1)};
}

double op_norm(const COperator& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

std::size_t numerical_rank(const COperator& a, double rel_tol) {
  const Eigen::VectorXd s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double cut = rel_tol * s(0);
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

COperator left_pseudo_inverse(const COperator& a, double rel_tol) {
  if (a.size() == 0) throw InvalidArgument("left_pseudo_inverse: empty operator");
  if (a.rows() < a.cols())
    throw NotInjective("left_pseudo_inverse: " + std::to_string(a.rows()) + "x" +
                       std::to_string(a.cols()) + " operator cannot be injective");
  Eigen::JacobiSVD<COperator> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (!(s(s.size() - 1) > rel_tol * s(0)))
    throw NotInjective("left_pseudo_inverse: sigma_min " + std::to_string(s(s.size() - 1)) +
                       " below tolerance");
  return svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
}

COperator range_basis(const COperator& a, double rel_tol) {
  if (a.size() == 0) return COperator(a.rows(), 0);
  Eigen::JacobiSVD<COperator> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd& s = svd.singularValues();
  Eigen::Index rank = 0;
  if (s(0) > 0.0)
    while (rank < s.size() && s(rank) > rel_tol * s(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

CVector flatten_rowmajor(const COperator& a) {
  CVector v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

COperator unflatten_rowmajor(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unflatten_rowmajor: size mismatch");
  COperator a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

CVector basis_vector(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw InvalidArgument("basis_vector: index out of range");
  CVector e = CVector::Zero(dim);
  e(index) = 1.0;
  return e;
}

}  // namespace frameforge
