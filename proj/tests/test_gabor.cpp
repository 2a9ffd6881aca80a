#include <doctest.h>

#include <filesystem>
#include <numbers>

#include "frameforge/errors.hpp"
#include "frameforge/gabor.hpp"
#include "frameforge/io.hpp"
#include "oracles.hpp"

using namespace frameforge;
using Idx = Eigen::Index;

namespace {

ZNWindow delta(std::size_t n) { return make_window(WindowKind::delta, n); }

// Brute-force shift straight from the definitions.
CVector shift_oracle(const CVector& g, long a, long b) {
  const long n = long(g.size());
  CVector out(g.size());
  for (long t = 0; t < n; ++t) {
    const long src = ((t - a) % n + n) % n;
    out(t) = std::polar(1.0, 2.0 * std::numbers::pi * double(b * t) / double(n)) * g(src);
  }
  return out;
}

}  // namespace

TEST_CASE("translation and modulation") {
  CHECK((translate(delta(4), 1).g - basis_vector(4, 1)).norm() == 0.0);
  Rng rng(1);
  const ZNWindow g = make_window(WindowKind::random, 6, 3);
  CHECK((translate(g, 6).g - g.g).norm() == 0.0);
  CHECK((modulate(g, 0).g - g.g).norm() == 0.0);
  CHECK((modulate(delta(4), 3).g - delta(4).g).norm() == 0.0);
  for (long a = -3; a < 9; ++a)
    for (long b = -3; b < 9; ++b) {
      CHECK(std::abs(translate(g, a).g.norm() - 1.0) < 1e-12);
      CHECK(std::abs(modulate(g, b).g.norm() - 1.0) < 1e-12);
      CHECK((time_frequency_shift(g.g, a, b) - shift_oracle(g.g, a, b)).norm() < 1e-12);
      CHECK((modulate(modulate(g, a), b).g - modulate(g, a + b).g).norm() < 1e-12);
      // M_b T_a = e^{2 pi i ab/N} T_a M_b.
      const Complex ph = std::polar(1.0, 2.0 * std::numbers::pi * double(a * b) / 6.0);
      CHECK((modulate(translate(g, a), b).g - ph * translate(modulate(g, b), a).g).norm() < 1e-12);
    }
}

TEST_CASE("gabor systems on Z_4") {
  const VectorSequence basis = gabor_system(delta(4), ZNLattice{4, 1, 4});
  CHECK(analysis_operator(basis).isIdentity());
  const FrameReport r = classify(basis);
  CHECK(r.lower_bound == doctest::Approx(1.0));
  CHECK(r.bessel_bound == doctest::Approx(1.0));

  const ZNWindow g = make_window(WindowKind::random, 4, 9);
  const VectorSequence full = gabor_system(g, ZNLattice{4, 1, 1});
  CHECK(oracle::max_abs_diff(oracle::frame_operator(full.vectors()), 4.0 * COperator::Identity(4, 4)) < 1e-12);
  CHECK(gabor_system(g, ZNLattice{4, 2, 2}).size() == 4);
  CHECK_THROWS_AS(gabor_system(g, ZNLattice{4, 3, 1}), NonDivisorLattice);

  // Ordering (m, n) with operator order M then T.
  const VectorSequence s = gabor_system(g, ZNLattice{4, 2, 1});
  CHECK((s[5] - shift_oracle(g.g, 2, 1)).norm() < 1e-14);
}

TEST_CASE("masked frame operator matches the brute-force sum") {
  for (std::size_t n : {4u, 6u, 8u, 12u}) {
    const ZNWindow g = make_window(WindowKind::random, n, n);
    for (std::size_t a : divisors(n))
      for (std::size_t b : divisors(n)) {
        const ZNLattice lat{n, a, b};
        const COperator brute = oracle::frame_operator(gabor_system(g, lat).vectors());
        CHECK(oracle::max_abs_diff(gabor_frame_operator(g, lat), brute) < 1e-12);
      }
  }
}

TEST_CASE("density statistics") {
  const std::vector<SweepRow> rows = density_sweep(WindowKind::random, 6, 7);
  CHECK(rows.size() == 16);
  for (const SweepRow& row : rows) {
    if (row.is_frame) CHECK(row.a * row.b <= 6);
    if (row.a * row.b > 6) CHECK(row.count < 6);
    CHECK(density_law_holds(row));
  }
  const GaborStats st = gabor_stats(make_window(WindowKind::random, 4, 2), ZNLattice{4, 2, 2});
  CHECK(st.frame.is_frame);
  CHECK(st.frame.is_riesz);
  CHECK(st.density_ok);

  const std::vector<SweepRow> six = density_sweep(make_window(WindowKind::gaussian, 6));
  for (const SweepRow& row : six)
    if (row.is_frame) CHECK(row.a * row.b <= 6);

  const std::vector<SweepRow> d4 = density_sweep(delta(4));
  bool found = false;
  for (const SweepRow& row : d4)
    if (row.a == 1 && row.b == 4) {
      found = true;
      CHECK(row.is_riesz);
    }
  CHECK(found);
  CHECK(density_sweep(WindowKind::gaussian, 12, 1).size() == 36);
  CHECK_THROWS_AS(density_sweep(WindowKind::gaussian, 300, 1), InvalidArgument);
}

TEST_CASE("oversampling") {
  const ZNWindow g = make_window(WindowKind::random, 8, 4);
  OversampleReport r = oversample_check(g, ZNLattice{8, 4, 2}, 1, 1);
  CHECK(r.fine_frame.lower_bound == doctest::Approx(r.coarse_frame.lower_bound));
  CHECK(r.fine_frame.bessel_bound == doctest::Approx(r.coarse_frame.bessel_bound));

  r = oversample_check(g, ZNLattice{8, 4, 2}, 2, 1);
  const auto coarse = oracle::hermitian_eigenvalues(oracle::frame_operator(gabor_system(g, ZNLattice{8, 4, 2}).vectors()));
  const auto fine = oracle::hermitian_eigenvalues(oracle::frame_operator(gabor_system(g, ZNLattice{8, 2, 2}).vectors()));
  CHECK(fine.front() >= 2 * coarse.front() - 1e-9);
  CHECK(fine.back() <= 2 * coarse.back() + 1e-9);
  CHECK(r.holds);

  // A tight system stays tight with the bound scaled by uv.
  const ZNWindow h = make_window(WindowKind::gaussian, 8);
  r = oversample_check(h, ZNLattice{8, 1, 2}, 1, 2);
  CHECK(r.fine_frame.lower_bound == doctest::Approx(8.0));
  CHECK(r.fine_frame.bessel_bound == doctest::Approx(8.0));
  CHECK_THROWS_AS(oversample_check(g, ZNLattice{8, 4, 2}, 3, 1), BadRefinement);
}

TEST_CASE("tensor Gabor equals Gabor of tensor") {
  const ZNWindow g1 = make_window(WindowKind::random, 4, 1), g2 = make_window(WindowKind::random, 6, 2);
  const std::vector<ZNLattice> lats{{4, 2, 1}, {6, 3, 2}};
  const VectorSequence prod = gabor_system(CVector(oracle::kron(g1.g, g2.g)), lats);
  const std::vector<VectorSequence> parts{gabor_system(g1, lats[0]), gabor_system(g2, lats[1])};
  const VectorSequence tens = tensor_sequences(parts);
  REQUIRE(prod.size() == tens.size());
  for (std::size_t i = 0; i < prod.size(); ++i) CHECK((prod[i] - tens[i]).norm() < 1e-12);
}

TEST_CASE("rank-r windows") {
  RankRWindowSpec plain{{make_window(WindowKind::random, 4, 1), make_window(WindowKind::random, 4, 2)}, {{0}, {0}}, {{0}, {0}}};
  const ProductWindow pw = build_rank_r_window(plain);
  CHECK((pw.g - oracle::kron(plain.windows[0].g, plain.windows[1].g)).norm() < 1e-14);

  RankRWindowSpec two{{delta(4), delta(4)}, {{0, 1}, {0, 2}}, {{0, 1}, {1, 0}}};
  CHECK(build_rank_r_window(two).g.size() == 16);

  RankRWindowSpec zero{{make_window(CVector::Zero(4)), delta(4)}, {{0, 1}, {0, 2}}, {{0, 1}, {1, 0}}};
  try {
    build_rank_r_window(zero);
    FAIL("zero window accepted");
  } catch (const DependentModulates& e) {
    CHECK(e.factor() == 0);
  }

  // Z6 x Z6, lattice-multiple shifts.
  const std::vector<ZNLattice> lats{{6, 2, 1}, {6, 1, 3}};
  RankRWindowSpec spec{{make_window(WindowKind::random, 6, 5), make_window(WindowKind::random, 6, 6)},
                       {{0, 2}, {0, 3}},
                       {{0, 1}, {0, 3}}};
  const RankRFrameReport rep = verify_rank_r_frame_implication(spec, lats);
  CHECK(rep.claim_applies);
  CHECK(rep.holds);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(classify(gabor_system(spec.windows[j], lats[j])).is_frame);
    CHECK(rep.factors[j].averaging_defect < 1e-12);
  }

  RankRWindowSpec off = spec;
  off.alpha[0][1] = 1;
  CHECK_THROWS_AS(verify_rank_r_frame_implication(off, lats), ConditionViolated);

  // r = 1 reduces to the tensor product law.
  RankRWindowSpec single{spec.windows, {{0}, {0}}, {{0}, {0}}};
  const RankRFrameReport r1 = verify_rank_r_frame_implication(single, lats);
  CHECK(r1.product.is_frame == (r1.factors[0].frame.is_frame && r1.factors[1].frame.is_frame));
}

TEST_CASE("perturbation") {
  const ZNWindow g = make_window(WindowKind::random, 8, 17);
  const PerturbationReport rep = perturb_window(g, ZNLattice{8, 2, 2}, 4, 4, 0.0);
  CHECK(rep.conditions_hold);
  CHECK(rep.ratio < 1e-8);
  CHECK_FALSE(rep.frame.is_frame);
  const auto spec = oracle::hermitian_eigenvalues(
      oracle::frame_operator(gabor_system(make_window(rep.perturbed), ZNLattice{8, 2, 2}).vectors()));
  CHECK(std::abs(spec.front()) < 1e-10 * spec.back());

  CHECK_THROWS_AS(perturb_window(g, ZNLattice{8, 2, 2}, 0, 8, 0.0), ZeroShift);
  const PerturbationReport violated = perturb_window(g, ZNLattice{8, 2, 2}, 1, 4, 0.0);
  CHECK_FALSE(violated.conditions_hold);
  CHECK_FALSE(violated.condition_violation.empty());
  CHECK(violated.spectrum.size() == 8);
}

TEST_CASE("perturbation golden instances") {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(FRAMEFORGE_GOLDEN_DIR "/perturbation")) {
    const nlohmann::json j = io::read_json_file(entry.path());
    const ZNWindow g = io::window_from_json(j.at("window"));
    const ZNLattice lat{j.at("N").get<std::size_t>(), j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()};
    const PerturbationReport rep =
        perturb_window(g, lat, j.at("alpha").get<long>(), j.at("beta").get<long>(), j.at("c_phase").get<double>());
    const auto want = j.at("spectrum").get<std::vector<double>>();
    INFO(entry.path().filename().string());
    CHECK(rep.conditions_hold);
    CHECK(rep.ratio < 1e-8);
    REQUIRE(std::size_t(rep.spectrum.size()) == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(std::abs(rep.spectrum(Idx(i)) - want[i]) < 1e-9 * want.back());
    ++seen;
  }
  CHECK(seen >= 10);
}
