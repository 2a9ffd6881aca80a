#pragma once

// Finite vector sequences: analysis, synthesis and frame operators, Bessel /
// frame / Riesz classification, tensor products of sequences and minimal sums
// of tensor products.
//
// The coefficient basis {e_n} is the standard basis, so the analysis operator
// of {f_n} is the matrix whose n-th row is f_n^*.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frameforge/hilbert.hpp"

namespace frameforge {

/// Frame decisions use A > tol * B.
inline constexpr double kDefaultFrameTol = 1e-10;

class VectorSequence {
 public:
  /// Throws InvalidArgument on an empty list and DimensionMismatch when a
  /// vector does not live in C^space_dim.
  VectorSequence(std::size_t space_dim, std::vector<CVector> vectors);

  /// Sequence whose n-th vector is the n-th column of `columns`.
  static VectorSequence from_columns(const COperator& columns);

  std::size_t space_dim() const noexcept { return space_dim_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<CVector>& vectors() const noexcept { return vectors_; }
  const CVector& operator[](std::size_t n) const { return vectors_.at(n); }

  /// Cached analysis operator (size() x space_dim()).
  const COperator& analysis() const noexcept { return analysis_; }

  /// All vectors stacked into one vector of length size() * space_dim().
  CVector flattened() const;

 private:
  std::size_t space_dim_;
  std::vector<CVector> vectors_;
  COperator analysis_;
};

COperator analysis_operator(const VectorSequence& seq);
COperator synthesis_operator(const VectorSequence& seq);
COperator frame_operator(const VectorSequence& seq);

struct FrameReport {
  double lower_bound = 0.0;   // A: optimal lower frame bound, lambda_min(S)
  double bessel_bound = 0.0;  // B: optimal Bessel bound, lambda_max(S)
  bool is_frame = false;
  bool is_riesz = false;
};

FrameReport classify(const VectorSequence& seq, double tol = kDefaultFrameTol);

/// Same decision from a precomputed frame operator S of `count` vectors,
/// using the extreme eigenvalues of S.
FrameReport classify_frame_operator(const COperator& s, std::size_t count,
                                    double tol = kDefaultFrameTol);

/// {f_{1,n_1} (x) ... (x) f_{d,n_d}} in lexicographic multi-index order.
VectorSequence tensor_sequences(std::span<const VectorSequence> seqs);

/// Concatenation in list order; all parts must share space_dim.
VectorSequence concatenate(std::span<const VectorSequence> seqs);

/// d groups of r component sequences; f_{n_1..n_d} = sum_k (x)_j f_{j,k,n_j}.
/// Within a group the r sequences are linearly independent and share length
/// and space dimension.
class MinimalSumSequence {
 public:
  std::size_t d() const noexcept { return groups_.size(); }
  std::size_t r() const noexcept { return groups_.front().size(); }
  const std::vector<VectorSequence>& group(std::size_t j) const { return groups_.at(j); }
  const VectorSequence& component(std::size_t j, std::size_t k) const { return groups_.at(j).at(k); }
  const std::vector<std::vector<VectorSequence>>& groups() const noexcept { return groups_; }

  /// Length N_j and dimension m_j of group j.
  std::size_t length(std::size_t j) const { return groups_.at(j).front().size(); }
  std::size_t dim(std::size_t j) const { return groups_.at(j).front().space_dim(); }

 private:
  friend MinimalSumSequence build_minimal_sum(std::vector<std::vector<VectorSequence>>, double);
  explicit MinimalSumSequence(std::vector<std::vector<VectorSequence>> groups)
      : groups_(std::move(groups)) {}

  std::vector<std::vector<VectorSequence>> groups_;
};

/// Validates shapes and independence; throws DependentGroup(j) when the r
/// sequences of group j are linearly dependent.
MinimalSumSequence build_minimal_sum(std::vector<std::vector<VectorSequence>> groups,
                                     double rel_tol = kDefaultRelTol);

/// Length prod N_j in dimension prod m_j, lexicographic over (n_1, ..., n_d).
VectorSequence materialize(const MinimalSumSequence& ms);

/// Concatenation over k of the component sequences of group j.
VectorSequence concatenated_group(const MinimalSumSequence& ms, std::size_t j);

struct GroupFrameStats {
  std::size_t group = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool is_frame = false;
};

struct MainTheoremReport {
  FrameReport sum;
  bool claim_applies = false;  // the materialized sum is a frame
  std::vector<GroupFrameStats> per_group;
  // (sum_k prod_j sqrt(B_{j,k}))^2, an upper bound for sum.bessel_bound.
  double bessel_sum_bound = 0.0;
  bool bessel_subadditive = false;
  // r == 1 only: product bounds equal the products of the factor bounds and
  // the product is a frame iff every factor is.
  std::optional<bool> product_law;
  bool holds = false;
  std::string note;
};

MainTheoremReport verify_main_theorem(const MinimalSumSequence& ms, double tol = kDefaultFrameTol);

struct DisjunctionReport {
  FrameReport sum;
  bool claim_applies = false;
  bool first_term_frame = false;   // F_1 = (x)_j f_{j,1}
  bool second_term_frame = false;  // F_2 = (x)_j f_{j,2}
  // component_frames[j][k]: is {f_{j,k,n}} a frame.
  std::vector<std::vector<bool>> component_frames;
  std::optional<std::size_t> removable_index;  // smallest i for branch 3
  int branch = 0;  // 1, 2, 3, or 0 when no branch holds
  bool holds = false;
};

/// Throws WrongRank unless ms.r() == 2.
DisjunctionReport two_term_disjunction_check(const MinimalSumSequence& ms,
                                             double tol = kDefaultFrameTol);

}  // namespace frameforge
