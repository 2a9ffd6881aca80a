#include "frameforge/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frameforge/errors.hpp"

namespace frameforge {

namespace {

using Idx = Eigen::Index;

Idx as_idx(std::size_t n) { return static_cast<Idx>(n); }

void expect_dim(const CVector& v, std::size_t dim, const char* what) {
  if (v.size() != as_idx(dim))
    throw DimensionMismatch(std::string(what) + " has dimension " + std::to_string(v.size()) +
                            ", expected " + std::to_string(dim));
}

}  // namespace

void BipartiteShape::validate() const {
  if (h1 == 0 || h2 == 0 || k1 == 0 || k2 == 0)
    throw InvalidArgument("bipartite shape dimensions must be positive");
}

void BipartiteShape::check_operator(const COperator& f) const {
  if (f.rows() != as_idx(codomain_dim()) || f.cols() != as_idx(domain_dim()))
    throw DimensionMismatch("operator is " + std::to_string(f.rows()) + "x" +
                            std::to_string(f.cols()) + ", shape expects " +
                            std::to_string(codomain_dim()) + "x" + std::to_string(domain_dim()));
}

FSROperator::FSROperator(BipartiteShape shape, std::vector<FactorPair> terms)
    : shape_(shape), terms_(std::move(terms)) {
  shape_.validate();
  for (const FactorPair& t : terms_) check_term(t);
}

void FSROperator::push_back(FactorPair term) {
  check_term(term);
  terms_.push_back(std::move(term));
}

void FSROperator::check_term(const FactorPair& t) const {
  if (t.first.rows() != as_idx(shape_.k1) || t.first.cols() != as_idx(shape_.h1) ||
      t.second.rows() != as_idx(shape_.k2) || t.second.cols() != as_idx(shape_.h2))
    throw DimensionMismatch("factor pair does not match the bipartite shape");
}

COperator FSROperator::materialize() const {
  COperator out = COperator::Zero(as_idx(shape_.codomain_dim()), as_idx(shape_.domain_dim()));
  for (const FactorPair& t : terms_) out += tensor_op(t.first, t.second);
  return out;
}

COperator embed_U1(const CVector& u1, std::size_t h2) {
  return tensor_op(u1, COperator::Identity(as_idx(h2), as_idx(h2)));
}

COperator embed_U2(const CVector& u2, std::size_t h1) {
  return tensor_op(COperator::Identity(as_idx(h1), as_idx(h1)), u2);
}

COperator contraction_V1(const CVector& v1, std::size_t k2) {
  return tensor_op(v1.adjoint(), COperator::Identity(as_idx(k2), as_idx(k2)));
}

COperator contraction_V2(const CVector& v2, std::size_t k1) {
  return tensor_op(COperator::Identity(as_idx(k1), as_idx(k1)), v2.adjoint());
}

CVector contract_V1(const CVector& v1, const CVector& h, const BipartiteShape& shape) {
  expect_dim(v1, shape.k1, "v1");
  expect_dim(h, shape.codomain_dim(), "h");
  const Idx k2 = as_idx(shape.k2);
  CVector out = CVector::Zero(k2);
  for (Idx i1 = 0; i1 < v1.size(); ++i1) out += std::conj(v1(i1)) * h.segment(i1 * k2, k2);
  return out;
}

CVector contract_V2(const CVector& v2, const CVector& h, const BipartiteShape& shape) {
  expect_dim(v2, shape.k2, "v2");
  expect_dim(h, shape.codomain_dim(), "h");
  const Idx k1 = as_idx(shape.k1);
  const Idx k2 = as_idx(shape.k2);
  CVector out(k1);
  for (Idx i1 = 0; i1 < k1; ++i1) out(i1) = v2.dot(h.segment(i1 * k2, k2));
  return out;
}

namespace {

void check_probes(const ProductVector& u, const ProductVector& v, const BipartiteShape& shape) {
  expect_dim(u.first, shape.h1, "u1");
  expect_dim(u.second, shape.h2, "u2");
  expect_dim(v.first, shape.k1, "v1");
  expect_dim(v.second, shape.k2, "v2");
}

}  // namespace

Complex pairing(const COperator& f, const ProductVector& u, const ProductVector& v,
                const BipartiteShape& shape) {
  shape.check_operator(f);
  check_probes(u, v, shape);
  return inner(f * u.flatten(), v.flatten());
}

FactorPair P_uv(const COperator& f, const COperator& g, const ProductVector& u,
                const ProductVector& v, const BipartiteShape& shape) {
  shape.validate();
  shape.check_operator(f);
  shape.check_operator(g);
  check_probes(u, v, shape);
  FactorPair out;
  out.first = contraction_V2(v.second, shape.k1) * f * embed_U2(u.second, shape.h1);
  out.second = contraction_V1(v.first, shape.k2) * g * embed_U1(u.first, shape.h2);
  return out;
}

FactorPair D_uv(const COperator& f, const ProductVector& u, const ProductVector& v,
                const BipartiteShape& shape) {
  return P_uv(f, f, u, v, shape);
}

COperator deflate(const COperator& f, const ProductVector& u, const ProductVector& v,
                  const BipartiteShape& shape) {
  const Complex p = pairing(f, u, v, shape);
  if (std::abs(p - 1.0) > kPairingTol)
    throw PairingNotOne("deflate: <F(u), v> = (" + std::to_string(p.real()) + ", " +
                        std::to_string(p.imag()) + "), expected 1");
  const FactorPair d = D_uv(f, u, v, shape);
  return f - tensor_op(d.first, d.second);
}

DeflationResult schmidt_decompose_deflation(const COperator& f, const BipartiteShape& shape,
                                            double tol) {
  shape.validate();
  shape.check_operator(f);
  DeflationResult result{FSROperator(shape), {}, 0.0};

  const double f_norm = op_norm(f);
  if (f_norm == 0.0) return result;

  // Schmidt rank never exceeds the smaller side of the reshuffled matrix.
  const std::size_t max_rank = std::min(shape.k1 * shape.h1, shape.k2 * shape.h2);
  const Idx h2 = as_idx(shape.h2);
  const Idx k2 = as_idx(shape.k2);

  COperator residual = f;
  double residual_norm = f_norm;
  while (residual_norm > tol * f_norm && result.steps.size() < max_rank) {
    Idx row = 0;
    Idx col = 0;
    residual.cwiseAbs().maxCoeff(&row, &col);
    const Complex p = residual(row, col);
    if (p == 0.0) break;

    ProductVector u{basis_vector(as_idx(shape.h1), col / h2), basis_vector(h2, col % h2)};
    ProductVector v{basis_vector(as_idx(shape.k1), row / k2), basis_vector(k2, row % k2)};
    // <F u, v> = p * conj(alpha) for v1 = alpha e_{i1}.
    v.first *= 1.0 / std::conj(p);

    FactorPair term = D_uv(residual, u, v, shape);
    residual = deflate(residual, u, v, shape);
    residual_norm = op_norm(residual);
    result.decomposition.push_back(std::move(term));
    result.steps.push_back({row, col, p, residual_norm});
  }
  result.relative_error = op_norm(f - result.decomposition.materialize()) / f_norm;
  return result;
}

COperator reshuffle(const COperator& f, const BipartiteShape& shape) {
  shape.validate();
  shape.check_operator(f);
  const Idx h1 = as_idx(shape.h1), h2 = as_idx(shape.h2);
  const Idx k1 = as_idx(shape.k1), k2 = as_idx(shape.k2);
  COperator r(k1 * h1, k2 * h2);
  for (Idx i1 = 0; i1 < k1; ++i1)
    for (Idx i2 = 0; i2 < k2; ++i2)
      for (Idx j1 = 0; j1 < h1; ++j1)
        for (Idx j2 = 0; j2 < h2; ++j2) r(i1 * h1 + j1, i2 * h2 + j2) = f(i1 * k2 + i2, j1 * h2 + j2);
  return r;
}

ReshuffleResult reshuffle_rank(const COperator& f, const BipartiteShape& shape, double tol) {
  const COperator r = reshuffle(f, shape);
  Eigen::JacobiSVD<COperator> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ReshuffleResult result{0, FSROperator(shape), svd.singularValues()};
  const Eigen::VectorXd& s = result.singular_values;
  if (s.size() == 0 || s(0) == 0.0) return result;
  while (result.rank < static_cast<std::size_t>(s.size()) && s(as_idx(result.rank)) > tol * s(0))
    ++result.rank;
  for (std::size_t k = 0; k < result.rank; ++k) {
    const Idx c = as_idx(k);
    CVector left = s(c) * svd.matrixU().col(c);
    CVector right = svd.matrixV().col(c).conjugate();
    result.canonical_terms.push_back(
        {unflatten_rowmajor(left, as_idx(shape.k1), as_idx(shape.h1)),
         unflatten_rowmajor(right, as_idx(shape.k2), as_idx(shape.h2))});
  }
  return result;
}

namespace {

COperator stacked_factors(std::span<const FactorPair> terms, FactorSide side) {
  if (terms.empty()) return COperator();
  const COperator& proto = side == FactorSide::first ? terms.front().first : terms.front().second;
  COperator m(proto.size(), as_idx(terms.size()));
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const COperator& a = side == FactorSide::first ? terms[k].first : terms[k].second;
    if (a.rows() != proto.rows() || a.cols() != proto.cols())
      throw DimensionMismatch("factor shapes differ within a term list");
    m.col(as_idx(k)) = flatten_rowmajor(a);
  }
  return m;
}

}  // namespace

bool is_fms(std::span<const FactorPair> terms, double tol) {
  if (terms.empty()) return true;
  const std::size_t r = terms.size();
  return numerical_rank(stacked_factors(terms, FactorSide::first), tol) == r &&
         numerical_rank(stacked_factors(terms, FactorSide::second), tol) == r;
}

bool spans_equal(std::span<const FactorPair> a, std::span<const FactorPair> b, FactorSide side,
                 double tol) {
  if (a.size() != b.size())
    throw LengthMismatch("spans_equal: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + " terms");
  if (a.empty()) return true;
  const COperator ma = stacked_factors(a, side);
  const COperator mb = stacked_factors(b, side);
  if (ma.rows() != mb.rows()) throw DimensionMismatch("spans_equal: factor shapes differ");
  const COperator qa = range_basis(ma, tol);
  const COperator qb = range_basis(mb, tol);
  if (qa.cols() != qb.cols()) return false;
  // Largest sine of the principal angles between the two subspaces.
  const COperator outside = qb - qa * (qa.adjoint() * qb);
  return op_norm(outside) <= tol;
}

namespace {

// Left construction on the terms of `f`, given L with L F = I.
std::vector<FactorPair> left_factors(const std::vector<FactorPair>& terms, const BipartiteShape& s,
                                     const COperator& l, const ProductVector& u,
                                     const ProductVector& v) {
  std::vector<FactorPair> out;
  out.reserve(terms.size());
  const COperator v2_contract = contraction_V2(v.second, s.h1);  // on H1 (x) H2
  const COperator v1_contract = contraction_V1(v.first, s.h2);
  for (const FactorPair& t : terms) {
    FactorPair p;
    p.first = v2_contract * l * embed_U2(t.second * u.second, s.k1);
    p.second = v1_contract * l * embed_U1(t.first * u.first, s.k2);
    out.push_back(std::move(p));
  }
  return out;
}

void check_normalization(const ProductVector& u, const ProductVector& v, std::size_t d1,
                         std::size_t d2) {
  expect_dim(u.first, d1, "u1");
  expect_dim(v.first, d1, "v1");
  expect_dim(u.second, d2, "u2");
  expect_dim(v.second, d2, "v2");
  if (std::abs(inner(u.first, v.first) - 1.0) > kPairingTol ||
      std::abs(inner(u.second, v.second) - 1.0) > kPairingTol)
    throw BadNormalization("inverse_factors requires <u1, v1> = <u2, v2> = 1");
}

}  // namespace

std::vector<FactorPair> inverse_factors(const FSROperator& f, const COperator& inverse,
                                        InverseSide side, const ProductVector& u,
                                        const ProductVector& v) {
  const BipartiteShape& s = f.shape();
  const COperator fm = f.materialize();
  if (inverse.rows() != fm.cols() || inverse.cols() != fm.rows())
    throw DimensionMismatch("inverse_factors: inverse has the wrong shape");

  if (side == InverseSide::left) {
    check_normalization(u, v, s.h1, s.h2);
    const COperator defect = inverse * fm - COperator::Identity(fm.cols(), fm.cols());
    if (op_norm(defect) > kInverseTol) throw NotAnInverse("inverse_factors: L F != I");
    return left_factors(f.terms(), s, inverse, u, v);
  }

  check_normalization(u, v, s.k1, s.k2);
  const COperator defect = fm * inverse - COperator::Identity(fm.rows(), fm.rows());
  if (op_norm(defect) > kInverseTol) throw NotAnInverse("inverse_factors: F R != I");
  // R^* is a left inverse of F^* = sum_k A_k^* (x) B_k^*.
  std::vector<FactorPair> adjoint_terms;
  for (const FactorPair& t : f.terms()) adjoint_terms.push_back({t.first.adjoint(), t.second.adjoint()});
  const BipartiteShape swapped{s.k1, s.k2, s.h1, s.h2};
  std::vector<FactorPair> out = left_factors(adjoint_terms, swapped, inverse.adjoint(), u, v);
  for (FactorPair& p : out) {
    p.first.adjointInPlace();
    p.second.adjointInPlace();
  }
  return out;
}

}  // namespace frameforge
