#pragma once

// Operators of finite Schmidt rank on bipartite spaces
//   F : C^{h1} (x) C^{h2} -> C^{k1} (x) C^{k2},   F = sum_k A_k (x) B_k,
// with A_k : C^{h1} -> C^{k1} and B_k : C^{h2} -> C^{k2}.
//
// Rows of F are indexed by (i1, i2) -> i1 * k2 + i2 and columns by
// (j1, j2) -> j1 * h2 + j2, following the flattening convention in hilbert.hpp.

#include <cstddef>
#include <span>
#include <vector>

#include "frameforge/hilbert.hpp"

namespace frameforge {

struct BipartiteShape {
  std::size_t h1 = 1;
  std::size_t h2 = 1;
  std::size_t k1 = 1;
  std::size_t k2 = 1;

  std::size_t domain_dim() const noexcept { return h1 * h2; }
  std::size_t codomain_dim() const noexcept { return k1 * k2; }
  /// Throws InvalidArgument if any dimension is zero.
  void validate() const;
  /// Throws DimensionMismatch unless f is codomain_dim x domain_dim.
  void check_operator(const COperator& f) const;

  bool operator==(const BipartiteShape&) const = default;
};

/// One elementary term A (x) B.
struct FactorPair {
  COperator first;   // k1 x h1
  COperator second;  // k2 x h2
};

class FSROperator {
 public:
  explicit FSROperator(BipartiteShape shape, std::vector<FactorPair> terms = {});

  const BipartiteShape& shape() const noexcept { return shape_; }
  const std::vector<FactorPair>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void push_back(FactorPair term);

  /// sum_k tensor_op(A_k, B_k).
  COperator materialize() const;

 private:
  void check_term(const FactorPair& term) const;

  BipartiteShape shape_;
  std::vector<FactorPair> terms_;
};

/// Elementary vector first (x) second.
struct ProductVector {
  CVector first;
  CVector second;

  CVector flatten() const { return tensor_vec(first, second); }
  double norm() const { return first.norm() * second.norm(); }
};

// Embeddings and contractions.
//   U_{u1} x2 = u1 (x) x2        U^{u2} x1 = x1 (x) u2
//   V_{v1}(y1 (x) y2) = <y1, v1> y2    V^{v2}(y1 (x) y2) = <y2, v2> y1
COperator embed_U1(const CVector& u1, std::size_t h2);
COperator embed_U2(const CVector& u2, std::size_t h1);
COperator contraction_V1(const CVector& v1, std::size_t k2);
COperator contraction_V2(const CVector& v2, std::size_t k1);

CVector contract_V1(const CVector& v1, const CVector& h, const BipartiteShape& shape);
CVector contract_V2(const CVector& v2, const CVector& h, const BipartiteShape& shape);

/// <F(u1 (x) u2), v1 (x) v2>.
Complex pairing(const COperator& f, const ProductVector& u, const ProductVector& v,
                const BipartiteShape& shape);

/// (V^{v2} F U^{u2}, V_{v1} G U_{u1}).
FactorPair P_uv(const COperator& f, const COperator& g, const ProductVector& u,
                const ProductVector& v, const BipartiteShape& shape);

/// P_uv(F, F).
FactorPair D_uv(const COperator& f, const ProductVector& u, const ProductVector& v,
                const BipartiteShape& shape);

/// Maximum deviation of the pairing from 1 accepted by deflate().
inline constexpr double kPairingTol = 1e-9;

/// F - D_uv(F), which has Schmidt rank one less than F. Requires
/// |<F(u), v> - 1| <= kPairingTol, otherwise throws PairingNotOne.
COperator deflate(const COperator& f, const ProductVector& u, const ProductVector& v,
                  const BipartiteShape& shape);

struct DeflationStep {
  Eigen::Index pivot_row = 0;
  Eigen::Index pivot_col = 0;
  Complex pivot;
  double residual_norm = 0.0;  // ||residual|| after this step
};

struct DeflationResult {
  FSROperator decomposition;
  std::vector<DeflationStep> steps;
  double relative_error = 0.0;  // ||F - sum terms|| / ||F||, 0 for F = 0
};

/// Greedy Schmidt decomposition by repeated deflation. Each step pivots on
/// the largest-modulus entry of the residual, takes u, v as the matching
/// standard basis tensors with v1 rescaled so the pairing is exactly 1, and
/// subtracts D_uv. Stops once ||residual|| <= tol * ||F||.
DeflationResult schmidt_decompose_deflation(const COperator& f, const BipartiteShape& shape,
                                            double tol = kDefaultRelTol);

/// R[(i1, j1), (i2, j2)] = F[(i1, i2), (j1, j2)]; a (k1*h1) x (k2*h2) matrix
/// whose ordinary rank is the Schmidt rank of F.
COperator reshuffle(const COperator& f, const BipartiteShape& shape);

struct ReshuffleResult {
  std::size_t rank = 0;
  FSROperator canonical_terms;
  Eigen::VectorXd singular_values;
};

/// Schmidt rank and decomposition from the SVD of the reshuffled matrix.
ReshuffleResult reshuffle_rank(const COperator& f, const BipartiteShape& shape,
                               double tol = kDefaultRelTol);

/// True iff {A_k} and {B_k} are each linearly independent.
bool is_fms(std::span<const FactorPair> terms, double tol = kDefaultRelTol);

enum class FactorSide { first = 1, second = 2 };

/// Default tolerance of spans_equal, used for both the rank decision and the
/// containment test (largest sine of principal angles).
inline constexpr double kSpanTol = 1e-8;

/// Whether span{A_k} == span{A'_k} (side first) or span{B_k} == span{B'_k}.
/// Throws LengthMismatch if the two lists differ in length.
bool spans_equal(std::span<const FactorPair> a, std::span<const FactorPair> b, FactorSide side,
                 double tol = kSpanTol);

enum class InverseSide { left, right };

/// Tolerance on ||L F - I|| (or ||F R - I||) accepted by inverse_factors.
inline constexpr double kInverseTol = 1e-8;

/// Factors {(L_{1,k}, L_{2,k})} with sum_k L_{1,k} A_k = I and
/// sum_k L_{2,k} B_k = I, built from a left inverse L of F as
///   L_{1,k} = V^{v2} L U^{B_k u2},   L_{2,k} = V_{v1} L U_{A_k u1}.
/// u and v must satisfy <u1, v1> = <u2, v2> = 1 (BadNormalization otherwise).
/// For a left inverse u, v live in the domain factors (h1, h2); for a right
/// inverse R (F R = I) they live in the codomain factors (k1, k2) and the
/// returned pairs satisfy sum_k A_k R_{1,k} = I and sum_k B_k R_{2,k} = I.
std::vector<FactorPair> inverse_factors(const FSROperator& f, const COperator& inverse,
                                        InverseSide side, const ProductVector& u,
                                        const ProductVector& v);

}  // namespace frameforge
