#include "frameforge/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "frameforge/errors.hpp"

namespace frameforge {

VectorSequence::VectorSequence(std::size_t space_dim, std::vector<CVector> vectors)
    : space_dim_(space_dim), vectors_(std::move(vectors)) {
  if (space_dim_ == 0) throw InvalidArgument("sequence space dimension must be positive");
  if (vectors_.empty()) throw InvalidArgument("sequence must be nonempty");
  const auto m = static_cast<Eigen::Index>(space_dim_);
  analysis_.resize(static_cast<Eigen::Index>(vectors_.size()), m);
  for (std::size_t n = 0; n < vectors_.size(); ++n) {
    if (vectors_[n].size() != m)
      throw DimensionMismatch("vector " + std::to_string(n) + " has dimension " +
                              std::to_string(vectors_[n].size()) + ", expected " +
                              std::to_string(space_dim_));
    analysis_.row(static_cast<Eigen::Index>(n)) = vectors_[n].adjoint();
  }
}

VectorSequence VectorSequence::from_columns(const COperator& columns) {
  std::vector<CVector> vectors;
  vectors.reserve(static_cast<std::size_t>(columns.cols()));
  for (Eigen::Index n = 0; n < columns.cols(); ++n) vectors.emplace_back(columns.col(n));
  return VectorSequence(static_cast<std::size_t>(columns.rows()), std::move(vectors));
}

CVector VectorSequence::flattened() const {
  const auto m = static_cast<Eigen::Index>(space_dim_);
  CVector out(m * static_cast<Eigen::Index>(vectors_.size()));
  for (std::size_t n = 0; n < vectors_.size(); ++n)
    out.segment(static_cast<Eigen::Index>(n) * m, m) = vectors_[n];
  return out;
}

COperator analysis_operator(const VectorSequence& seq) { return seq.analysis(); }

COperator synthesis_operator(const VectorSequence& seq) { return seq.analysis().adjoint(); }

COperator frame_operator(const VectorSequence& seq) {
  const COperator& f = seq.analysis();
  return f.adjoint() * f;
}

FrameReport classify(const VectorSequence& seq, double tol) {
  const Eigen::VectorXd s = singular_values(seq.analysis());
  FrameReport report;
  report.bessel_bound = s(0) * s(0);
  // Fewer vectors than dimensions: S has a kernel.
  if (seq.size() >= seq.space_dim()) {
    const double smin = s(s.size() - 1);
    report.lower_bound = smin * smin;
  }
  report.is_frame = report.lower_bound > tol * report.bessel_bound;
  report.is_riesz = report.is_frame && seq.size() == seq.space_dim();
  return report;
}

FrameReport classify_frame_operator(const COperator& s, std::size_t count, double tol) {
  if (s.rows() == 0 || s.rows() != s.cols())
    throw DimensionMismatch("frame operator must be square and nonempty");
  const Eigen::SelfAdjointEigenSolver<COperator> eig(s, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const auto dim = static_cast<std::size_t>(s.rows());
  FrameReport report;
  report.bessel_bound = std::max(lambda(lambda.size() - 1), 0.0);
  if (count >= dim) report.lower_bound = std::max(lambda(0), 0.0);
  report.is_frame = report.lower_bound > tol * report.bessel_bound;
  report.is_riesz = report.is_frame && count == dim;
  return report;
}

VectorSequence tensor_sequences(std::span<const VectorSequence> seqs) {
  if (seqs.empty()) throw InvalidArgument("tensor_sequences: empty list");
  std::vector<CVector> current = seqs.front().vectors();
  std::size_t dim = seqs.front().space_dim();
  for (std::size_t j = 1; j < seqs.size(); ++j) {
    std::vector<CVector> next;
    next.reserve(current.size() * seqs[j].size());
    for (const CVector& x : current)
      for (const CVector& y : seqs[j].vectors()) next.push_back(tensor_vec(x, y));
    current = std::move(next);
    dim *= seqs[j].space_dim();
  }
  return VectorSequence(dim, std::move(current));
}

VectorSequence concatenate(std::span<const VectorSequence> seqs) {
  if (seqs.empty()) throw InvalidArgument("concatenate: empty list");
  const std::size_t dim = seqs.front().space_dim();
  std::vector<CVector> out;
  for (const VectorSequence& s : seqs) {
    if (s.space_dim() != dim) throw DimensionMismatch("concatenate: space dimensions differ");
    out.insert(out.end(), s.vectors().begin(), s.vectors().end());
  }
  return VectorSequence(dim, std::move(out));
}

MinimalSumSequence build_minimal_sum(std::vector<std::vector<VectorSequence>> groups,
                                     double rel_tol) {
  if (groups.empty()) throw InvalidArgument("minimal sum needs at least one group");
  const std::size_t r = groups.front().size();
  if (r == 0) throw InvalidArgument("minimal sum needs at least one term");
  for (std::size_t j = 0; j < groups.size(); ++j) {
    const auto& group = groups[j];
    if (group.size() != r)
      throw InvalidArgument("group " + std::to_string(j) + " has " + std::to_string(group.size()) +
                            " sequences, expected " + std::to_string(r));
    const std::size_t len = group.front().size();
    const std::size_t dim = group.front().space_dim();
    for (const VectorSequence& s : group)
      if (s.size() != len || s.space_dim() != dim)
        throw DimensionMismatch("group " + std::to_string(j) + " mixes sequence shapes");

    COperator stacked(static_cast<Eigen::Index>(len * dim), static_cast<Eigen::Index>(r));
    for (std::size_t k = 0; k < r; ++k) stacked.col(static_cast<Eigen::Index>(k)) = group[k].flattened();
    if (numerical_rank(stacked, rel_tol) != r) throw DependentGroup(j);
  }
  return MinimalSumSequence(std::move(groups));
}

VectorSequence materialize(const MinimalSumSequence& ms) {
  std::vector<VectorSequence> chain;
  chain.reserve(ms.d());
  std::vector<CVector> acc;
  std::size_t dim = 0;
  for (std::size_t k = 0; k < ms.r(); ++k) {
    chain.clear();
    for (std::size_t j = 0; j < ms.d(); ++j) chain.push_back(ms.component(j, k));
    const VectorSequence term = tensor_sequences(chain);
    if (k == 0) {
      acc = term.vectors();
      dim = term.space_dim();
    } else {
      for (std::size_t n = 0; n < acc.size(); ++n) acc[n] += term[n];
    }
  }
  return VectorSequence(dim, std::move(acc));
}

VectorSequence concatenated_group(const MinimalSumSequence& ms, std::size_t j) {
  return concatenate(ms.group(j));
}

namespace {

bool close_rel(double x, double y, double scale, double rel) {
  return std::abs(x - y) <= rel * std::max(scale, 1e-300);
}

}  // namespace

MainTheoremReport verify_main_theorem(const MinimalSumSequence& ms, double tol) {
  MainTheoremReport report;
  report.sum = classify(materialize(ms), tol);
  report.claim_applies = report.sum.is_frame;

  double sum_of_products = 0.0;
  for (std::size_t k = 0; k < ms.r(); ++k) {
    double product = 1.0;
    for (std::size_t j = 0; j < ms.d(); ++j)
      product *= std::sqrt(classify(ms.component(j, k), tol).bessel_bound);
    sum_of_products += product;
  }
  report.bessel_sum_bound = sum_of_products * sum_of_products;
  report.bessel_subadditive = report.sum.bessel_bound <= report.bessel_sum_bound * (1.0 + 1e-12);

  bool groups_ok = true;
  for (std::size_t j = 0; j < ms.d(); ++j) {
    const FrameReport g = classify(concatenated_group(ms, j), tol);
    report.per_group.push_back({j, g.lower_bound, g.bessel_bound, g.is_frame});
    groups_ok = groups_ok && g.is_frame;
  }

  if (ms.r() == 1) {
    double a = 1.0;
    double b = 1.0;
    bool all_frames = true;
    for (std::size_t j = 0; j < ms.d(); ++j) {
      const FrameReport f = classify(ms.component(j, 0), tol);
      a *= f.lower_bound;
      b *= f.bessel_bound;
      all_frames = all_frames && f.is_frame;
    }
    const double scale = report.sum.bessel_bound;
    report.product_law = (all_frames == report.sum.is_frame) &&
                         close_rel(report.sum.bessel_bound, b, scale, 1e-9) &&
                         close_rel(report.sum.lower_bound, a, scale, 1e-9);
  }

  report.holds = report.bessel_subadditive && (!report.claim_applies || groups_ok) &&
                 report.product_law.value_or(true);
  if (!report.claim_applies)
    report.note = "no claim: the sum is not a frame";
  else if (!groups_ok)
    report.note = "violation: a concatenated group is not a frame";
  return report;
}

DisjunctionReport two_term_disjunction_check(const MinimalSumSequence& ms, double tol) {
  if (ms.r() != 2)
    throw WrongRank("two-term check needs r = 2, got r = " + std::to_string(ms.r()));
  DisjunctionReport report;
  report.sum = classify(materialize(ms), tol);
  report.claim_applies = report.sum.is_frame;

  const std::size_t d = ms.d();
  report.component_frames.assign(d, std::vector<bool>(2, false));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < 2; ++k)
      report.component_frames[j][k] = classify(ms.component(j, k), tol).is_frame;

  std::vector<VectorSequence> chain;
  for (std::size_t k = 0; k < 2; ++k) {
    chain.clear();
    for (std::size_t j = 0; j < d; ++j) chain.push_back(ms.component(j, k));
    const bool frame = classify(tensor_sequences(chain), tol).is_frame;
    (k == 0 ? report.first_term_frame : report.second_term_frame) = frame;
  }

  for (std::size_t i = 0; i < d && !report.removable_index; ++i) {
    bool all = true;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) all = all && report.component_frames[j][0] && report.component_frames[j][1];
    if (all) report.removable_index = i;
  }

  if (report.first_term_frame)
    report.branch = 1;
  else if (report.second_term_frame)
    report.branch = 2;
  else if (report.removable_index)
    report.branch = 3;
  report.holds = !report.claim_applies || report.branch != 0;
  return report;
}

}  // namespace frameforge
