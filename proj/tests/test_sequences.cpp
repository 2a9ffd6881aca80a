#include <doctest.h>

#include <cmath>

#include "frameforge/errors.hpp"
#include "frameforge/instances.hpp"
#include "frameforge/sequences.hpp"
#include "oracles.hpp"

using namespace frameforge;
using Idx = Eigen::Index;

namespace {

VectorSequence onb(Idx m) {
  std::vector<CVector> v;
  for (Idx i = 0; i < m; ++i) v.push_back(basis_vector(m, i));
  return VectorSequence(std::size_t(m), v);
}

VectorSequence mercedes() {
  CVector a(2), b(2), c(2);
  a << 0.0, 1.0;
  b << -std::sqrt(3.0) / 2, -0.5;
  c << std::sqrt(3.0) / 2, -0.5;
  return VectorSequence(2, {a, b, c});
}

std::vector<double> oracle_spectrum(const VectorSequence& s) {
  return oracle::hermitian_eigenvalues(oracle::frame_operator(s.vectors()));
}

}  // namespace

TEST_CASE("analysis operator rows are conjugated vectors") {
  CHECK(analysis_operator(onb(2)).isIdentity());
  const CVector e1 = basis_vector(2, 0);
  COperator want(2, 2);
  want << 1, 0, 1, 0;
  CHECK(analysis_operator(VectorSequence(2, {e1, e1})) == want);
  CVector iv(2);
  iv << Complex(0, 1), 0;
  CHECK(analysis_operator(VectorSequence(2, {iv}))(0, 0) == Complex(0, -1));
}

TEST_CASE("synthesis and frame operators") {
  CHECK(synthesis_operator(onb(3)).isIdentity());
  Rng rng(1);
  const VectorSequence s = instances::random_sequence(rng, 3, 5);
  const COperator t = synthesis_operator(s);
  for (std::size_t n = 0; n < s.size(); ++n) CHECK((t * basis_vector(5, Idx(n)) - s[n]).norm() < 1e-12);
  CHECK(oracle::max_abs_diff(t * analysis_operator(s), frame_operator(s)) < 1e-14);
  CHECK(oracle::max_abs_diff(frame_operator(s), oracle::frame_operator(s.vectors())) < 1e-12);

  CHECK(frame_operator(onb(2)).isIdentity());
  const std::vector<VectorSequence> two{onb(2), onb(2)};
  CHECK(frame_operator(concatenate(two)).isApprox(2.0 * COperator::Identity(2, 2)));
  CHECK(frame_operator(mercedes()).isApprox(1.5 * COperator::Identity(2, 2), 1e-14));
  const auto spec = oracle_spectrum(mercedes());
  CHECK(spec.front() == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(spec.back() == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("classify") {
  FrameReport r = classify(onb(3));
  CHECK(r.lower_bound == doctest::Approx(1.0));
  CHECK(r.bessel_bound == doctest::Approx(1.0));
  CHECK(r.is_frame);
  CHECK(r.is_riesz);

  const std::vector<VectorSequence> two{onb(2), onb(2)};
  r = classify(concatenate(two));
  CHECK(r.lower_bound == doctest::Approx(2.0));
  CHECK(r.bessel_bound == doctest::Approx(2.0));
  CHECK(r.is_frame);
  CHECK_FALSE(r.is_riesz);

  r = classify(mercedes());
  CHECK(r.lower_bound == doctest::Approx(1.5));
  CHECK(r.bessel_bound == doctest::Approx(1.5));
  CHECK(r.is_frame);
  CHECK_FALSE(r.is_riesz);

  // Too few vectors: A = 0.
  r = classify(VectorSequence(2, {basis_vector(2, 0)}));
  CHECK(r.lower_bound == 0.0);
  CHECK_FALSE(r.is_frame);

  CHECK_THROWS_AS(VectorSequence(2, {}), InvalidArgument);
  CHECK_THROWS_AS(VectorSequence(2, {basis_vector(3, 0)}), DimensionMismatch);
}

TEST_CASE("classify agrees with an independent eigen-solver") {
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    const std::size_t m = 1 + rng() % 4;
    const VectorSequence s = instances::random_sequence(rng, m, m + rng() % 3);
    const FrameReport r = classify(s);
    const auto spec = oracle_spectrum(s);
    CHECK(std::abs(r.lower_bound - std::max(spec.front(), 0.0)) < 1e-9 * r.bessel_bound);
    CHECK(std::abs(r.bessel_bound - spec.back()) < 1e-9 * r.bessel_bound);
    const FrameReport via_s = classify_frame_operator(frame_operator(s), s.size());
    CHECK(std::abs(via_s.lower_bound - r.lower_bound) < 1e-9 * r.bessel_bound);
    CHECK(via_s.is_frame == r.is_frame);
  }
}

TEST_CASE("sampled Bessel sums never exceed B and B is attained") {
  Rng rng(8);
  for (int t = 0; t < 10; ++t) {
    const VectorSequence s = instances::random_sequence(rng, 3, 4);
    const FrameReport r = classify(s);
    double best = 0.0;
    for (int draw = 0; draw < 1000; ++draw) {
      const CVector f = random_unit_cvector(rng, 3);
      double sum = 0.0;
      for (const CVector& fn : s.vectors()) sum += std::norm(inner(f, fn));
      best = std::max(best, sum);
    }
    CHECK(best <= r.bessel_bound * (1.0 + 1e-12));
    const double top = oracle::power_iteration(frame_operator(s), 100 + t);
    CHECK(std::abs(top - r.bessel_bound) < 1e-6 * r.bessel_bound);
  }
}

TEST_CASE("tensor products of sequences") {
  const std::vector<VectorSequence> onbs{onb(2), onb(2)};
  FrameReport r = classify(tensor_sequences(onbs));
  CHECK(r.lower_bound == doctest::Approx(1.0));
  CHECK(r.bessel_bound == doctest::Approx(1.0));
  CHECK(r.is_riesz);

  const VectorSequence e1e1e2(2, {basis_vector(2, 0), basis_vector(2, 0), basis_vector(2, 1)});
  const std::vector<VectorSequence> mixed{e1e1e2, onb(2)};
  const VectorSequence prod = tensor_sequences(mixed);
  r = classify(prod);
  const auto spec = oracle::hermitian_eigenvalues(
      oracle::kron(frame_operator(e1e1e2), frame_operator(onb(2))));
  CHECK(r.lower_bound == doctest::Approx(spec.front()));
  CHECK(r.bessel_bound == doctest::Approx(spec.back()));
  CHECK(r.lower_bound == doctest::Approx(1.0));
  CHECK(r.bessel_bound == doctest::Approx(2.0));

  // Ordering: lexicographic in (n1, n2).
  CHECK((prod[1] - oracle::kron(CVector(basis_vector(2, 0)), CVector(basis_vector(2, 1)))).norm() == 0.0);
  CHECK((prod[4] - oracle::kron(CVector(basis_vector(2, 1)), CVector(basis_vector(2, 0)))).norm() == 0.0);

  const std::vector<VectorSequence> broken{VectorSequence(2, {basis_vector(2, 0)}), onb(3)};
  CHECK_FALSE(classify(tensor_sequences(broken)).is_frame);
}

TEST_CASE("minimal sum construction") {
  const VectorSequence e1s(2, {basis_vector(2, 0), basis_vector(2, 0)});
  const VectorSequence e2s(2, {basis_vector(2, 1), basis_vector(2, 1)});
  const MinimalSumSequence ms = build_minimal_sum({{e1s, e2s}, {e2s, e1s}});
  CHECK(ms.d() == 2);
  CHECK(ms.r() == 2);

  std::vector<CVector> doubled;
  for (const CVector& v : e1s.vectors()) doubled.push_back(2.0 * v);
  const VectorSequence twice(2, doubled);
  try {
    build_minimal_sum({{e1s, e2s}, {e1s, twice}});
    FAIL("dependent group accepted");
  } catch (const DependentGroup& e) {
    CHECK(e.group() == 1);
  }

  Rng rng(12);
  const MinimalSumSequence rnd = instances::random_minimal_sum(rng, 2, {2, 3}, {3, 4});
  const VectorSequence m = materialize(rnd);
  CHECK(m.size() == 12);
  CHECK(m.space_dim() == 6);
  for (std::size_t n1 = 0; n1 < 3; ++n1)
    for (std::size_t n2 = 0; n2 < 4; ++n2) {
      CVector want = CVector::Zero(6);
      for (std::size_t k = 0; k < 2; ++k) want += oracle::kron(rnd.component(0, k)[n1], rnd.component(1, k)[n2]);
      CHECK((m[n1 * 4 + n2] - want).norm() < 1e-12);
    }

  const MinimalSumSequence single = instances::random_minimal_sum(rng, 1, {2, 2}, {3, 2});
  const std::vector<VectorSequence> chain{single.component(0, 0), single.component(1, 0)};
  CHECK(oracle::max_abs_diff(materialize(single).analysis(), tensor_sequences(chain).analysis()) == 0.0);
}

TEST_CASE("concatenation") {
  Rng rng(13);
  const VectorSequence a = instances::random_sequence(rng, 3, 3), b = instances::random_sequence(rng, 3, 2);
  const std::vector<VectorSequence> parts{a, b};
  const VectorSequence c = concatenate(parts);
  CHECK(c.size() == 5);
  CHECK(oracle::max_abs_diff(frame_operator(c), frame_operator(a) + frame_operator(b)) < 1e-12);
  CHECK(classify(c).lower_bound >= classify(a).lower_bound - 1e-12);
  const std::vector<VectorSequence> bad{a, onb(2)};
  CHECK_THROWS_AS(concatenate(bad), DimensionMismatch);
}

TEST_CASE("main theorem report on a seeded instance") {
  Rng rng(42);
  const MinimalSumSequence ms = instances::random_minimal_sum(rng, 2, {3, 3}, {4, 4});
  const MainTheoremReport rep = verify_main_theorem(ms);
  REQUIRE(rep.claim_applies);
  CHECK(rep.holds);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto spec = oracle::hermitian_eigenvalues(oracle::frame_operator(concatenated_group(ms, j).vectors()));
    CHECK(rep.per_group[j].lambda_min == doctest::Approx(spec.front()).epsilon(1e-9));
    CHECK(spec.front() > 1e-8 * spec.back());
  }
  CHECK(rep.sum.bessel_bound <= rep.bessel_sum_bound);
}

TEST_CASE("main theorem with r = 1 multiplies bounds") {
  Rng rng(5);
  const MinimalSumSequence ms = instances::random_minimal_sum(rng, 1, {2, 2}, {3, 2});
  const MainTheoremReport rep = verify_main_theorem(ms);
  REQUIRE(rep.product_law.has_value());
  CHECK(*rep.product_law);
  const double a = classify(ms.component(0, 0)).lower_bound * classify(ms.component(1, 0)).lower_bound;
  CHECK(rep.sum.lower_bound == doctest::Approx(a).epsilon(1e-9));
}

TEST_CASE("main theorem is vacuous for non-frames") {
  Rng rng(6);
  // Three vectors in C^4 cannot form a frame.
  const MinimalSumSequence ms = instances::random_minimal_sum(rng, 1, {2, 2}, {1, 3});
  const MainTheoremReport rep = verify_main_theorem(ms);
  CHECK_FALSE(rep.claim_applies);
  CHECK(rep.holds);
  CHECK_FALSE(rep.note.empty());
}

TEST_CASE("two-term disjunction branches") {
  Rng rng(31);
  DisjunctionReport rep = two_term_disjunction_check(instances::disjunction_instance(rng, instances::DisjunctionKind::generic, 2));
  CHECK(rep.claim_applies);
  CHECK(rep.branch == 1);

  rep = two_term_disjunction_check(instances::disjunction_instance(rng, instances::DisjunctionKind::first_degenerate, 2));
  CHECK(rep.branch == 2);

  std::size_t split = 99;
  const MinimalSumSequence ms = instances::disjunction_instance(rng, instances::DisjunctionKind::split_factor, 3, &split);
  rep = two_term_disjunction_check(ms);
  CHECK(rep.claim_applies);
  CHECK(rep.branch == 3);
  REQUIRE(rep.removable_index.has_value());
  CHECK(*rep.removable_index == split);
  for (std::size_t j = 0; j < 3; ++j)
    if (j != split)
      for (std::size_t k = 0; k < 2; ++k) CHECK(classify(ms.component(j, k)).is_frame);

  CHECK_THROWS_AS(two_term_disjunction_check(instances::random_minimal_sum(rng, 3, {2, 2}, {3, 3})), WrongRank);
}

TEST_CASE("Bessel bound subadditivity") {
  Rng rng(77);
  for (int t = 0; t < 50; ++t) {
    const std::size_t r = 1 + rng() % 3;
    const MinimalSumSequence ms = instances::random_minimal_sum(rng, r, {2, 3}, {std::max<std::size_t>(r, 3), std::max<std::size_t>(r, 2)});
    double bound = 0.0;
    for (std::size_t k = 0; k < r; ++k) {
      double prod = 1.0;
      for (std::size_t j = 0; j < 2; ++j) prod *= std::sqrt(oracle_spectrum(ms.component(j, k)).back());
      bound += prod;
    }
    CHECK(classify(materialize(ms)).bessel_bound <= bound * bound * (1 + 1e-12));
  }
}

TEST_CASE("left inverse lower bound") {
  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    const VectorSequence s = instances::random_sequence(rng, 3, 5);
    const FrameReport r = classify(s);
    const COperator& f = s.analysis();
    const COperator l = left_pseudo_inverse(f);
    CHECK(1.0 / std::pow(op_norm(l), 2) == doctest::Approx(r.lower_bound).epsilon(1e-9));
    const COperator other = l + random_coperator(rng, 3, 5) * (COperator::Identity(5, 5) - f * l);
    CHECK((other * f - COperator::Identity(3, 3)).norm() < 1e-10);
    CHECK(1.0 / std::pow(op_norm(other), 2) <= r.lower_bound * (1 + 1e-9));
  }
}
