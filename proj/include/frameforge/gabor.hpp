#pragma once

// Discrete Gabor systems on the cyclic group Z_N and on products
// Z_{N_1} x ... x Z_{N_d}.
//
//   (T_a g)[t] = g[(t - a) mod N]
//   (M_b g)[t] = exp(2 pi i b t / N) g[t]
//   G(g, a, b) = { M_{n b} T_{m a} g : 0 <= m < N/a, 0 <= n < N/b },
// ordered lexicographically in (m, n). Only divisor lattices (a | N, b | N)
// are modelled. The discrete density law reads: a frame needs ab <= N, and a
// frame is a Riesz basis exactly when ab == N.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frameforge/hilbert.hpp"
#include "frameforge/sequences.hpp"

namespace frameforge {

/// Largest group size accepted by density sweeps.
inline constexpr std::size_t kMaxSweepN = 256;

struct ZNLattice {
  std::size_t N = 1;
  std::size_t a = 1;
  std::size_t b = 1;

  /// Throws NonDivisorLattice unless a and b are positive divisors of N.
  void validate() const;
  std::size_t count() const noexcept { return (N / a) * (N / b); }
  double ab_over_N() const noexcept {
    return static_cast<double>(a) * static_cast<double>(b) / static_cast<double>(N);
  }
};

enum class WindowKind { gaussian, twoexp, sech, rational, delta, random };

std::optional<WindowKind> parse_window_kind(std::string_view name);
std::string_view window_kind_name(WindowKind kind);

struct ZNWindow {
  std::size_t N = 0;
  CVector g;
  std::string generator;  // gaussian | twoexp | sech | rational | delta | random | file
};

/// Unit-norm window on Z_N. The class-E kernels are sampled as u(c(t) / s)
/// with c(t) the centred representative of t in [-N/2, N/2) and s = N / 8
/// (or `scale` when positive), which is u((t - N/2) / s) rotated so that the
/// peak sits at t = 0. `seed` only affects WindowKind::random.
ZNWindow make_window(WindowKind kind, std::size_t N, std::uint64_t seed = 0, double scale = 0.0);

/// Wraps a vector; throws InvalidArgument for an empty vector.
ZNWindow make_window(CVector g, std::string generator = "file");

ZNWindow translate(const ZNWindow& g, std::int64_t a);
ZNWindow modulate(const ZNWindow& g, std::int64_t b);

/// M_b T_a g.
CVector time_frequency_shift(const CVector& g, std::int64_t a, std::int64_t b);

/// M_b T_a on Z_{N_1} x ... x Z_{N_d}, for g flattened with the first factor
/// most significant.
CVector time_frequency_shift(const CVector& g, std::span<const std::size_t> dims,
                             std::span<const std::int64_t> a, std::span<const std::int64_t> b);

VectorSequence gabor_system(const ZNWindow& g, const ZNLattice& lat);

/// Gabor system of a window on the product group with lattice
/// prod_j (a_j Z x b_j Z). Elements are ordered lexicographically over
/// ((m_1, n_1), ..., (m_d, n_d)), which is the tensor_sequences order of the
/// one-dimensional systems.
VectorSequence gabor_system(const CVector& g, std::span<const ZNLattice> lattices);

/// Frame operator of G(g, a, b), accumulated without materialising the
/// system: summing the N/b modulations of a rank-one term keeps the entries
/// (s, t) with s = t mod N/b and scales them by N/b.
COperator gabor_frame_operator(const ZNWindow& g, const ZNLattice& lat);

struct GaborStats {
  ZNLattice lattice;
  std::size_t count = 0;
  FrameReport frame;
  double ab_over_N = 0.0;
  bool density_ok = true;  // !(frame && ab > N) and (riesz <=> frame && ab == N)
};

GaborStats gabor_stats(const ZNWindow& g, const ZNLattice& lat, double tol = kDefaultFrameTol);

struct OversampleReport {
  ZNLattice coarse;
  ZNLattice fine;
  std::size_t u = 1;
  std::size_t v = 1;
  FrameReport coarse_frame;
  FrameReport fine_frame;
  bool lower_ok = false;  // A' >= u v A - slack
  bool upper_ok = false;  // B' <= u v B + slack
  bool holds = false;
};

/// Compares optimal bounds on (a, b) and on the refined lattice (a/u, b/v).
/// Throws BadRefinement unless u | a and v | b.
OversampleReport oversample_check(const ZNWindow& g, const ZNLattice& lat, std::size_t u,
                                  std::size_t v, double slack = 1e-9,
                                  double tol = kDefaultFrameTol);

/// Windows g = sum_k (x)_j M_{beta_{j,k}} T_{alpha_{j,k}} g_j.
struct RankRWindowSpec {
  std::vector<ZNWindow> windows;                // g_j on Z_{N_j}
  std::vector<std::vector<std::int64_t>> alpha;  // alpha[j][k]
  std::vector<std::vector<std::int64_t>> beta;   // beta[j][k]

  std::size_t d() const noexcept { return windows.size(); }
  std::size_t r() const noexcept { return alpha.empty() ? 0 : alpha.front().size(); }
  std::vector<std::size_t> dims() const;
};

struct ProductWindow {
  std::vector<std::size_t> dims;
  CVector g;
};

/// Throws InvalidArgument on malformed specs (repeated shift pairs included)
/// and DependentModulates(j) when {M_{beta_{j,k}} T_{alpha_{j,k}} g_j}_k is
/// linearly dependent.
ProductWindow build_rank_r_window(const RankRWindowSpec& spec, double rel_tol = kDefaultRelTol);

/// The minimal sum whose component (j, k) is G(M_{beta_{j,k}} T_{alpha_{j,k}} g_j, a_j, b_j);
/// it materialises to gabor_system(build_rank_r_window(spec).g, lattices).
MinimalSumSequence rank_r_minimal_sum(const RankRWindowSpec& spec,
                                      std::span<const ZNLattice> lattices);

struct FactorGaborReport {
  ZNLattice lattice;
  FrameReport frame;
  bool density_ok = false;  // a_j b_j <= N_j
  // ||S_concat - r S_j|| / ||r S_j||, where S_concat is the frame operator of
  // the concatenation over k of G(M_beta T_alpha g_j, a_j, b_j).
  double averaging_defect = 0.0;
};

struct RankRFrameReport {
  FrameReport product;
  bool claim_applies = false;
  std::vector<FactorGaborReport> factors;
  bool holds = false;
};

/// If the product system is a frame, every G(g_j, a_j, b_j) must be a frame
/// with a_j b_j <= N_j. Throws ConditionViolated unless every
/// alpha_{j,k} = 0 mod a_j and beta_{j,k} = 0 mod b_j.
RankRFrameReport verify_rank_r_frame_implication(const RankRWindowSpec& spec,
                                                 std::span<const ZNLattice> lattices,
                                                 double tol = kDefaultFrameTol);

struct PerturbationReport {
  ZNLattice lattice;
  std::int64_t alpha = 0;
  std::int64_t beta = 0;
  double c_phase = 0.0;
  bool conditions_hold = false;     // alpha b = 0 and beta a = 0 mod N
  std::string condition_violation;  // empty when conditions_hold
  FrameReport frame;
  double ratio = 0.0;                // lambda_min / lambda_max
  Eigen::VectorXd spectrum;          // eigenvalues of the frame operator, ascending
  CVector perturbed;                 // g + c M_beta T_alpha g
};

/// Classifies G(g + c M_beta T_alpha g, a, b) with c = exp(2 pi i c_phase).
/// Throws ZeroShift when alpha = beta = 0 mod N. A violated divisibility
/// condition is recorded in the report rather than thrown.
PerturbationReport perturb_window(const ZNWindow& g, const ZNLattice& lat, std::int64_t alpha,
                                  std::int64_t beta, double c_phase,
                                  double tol = kDefaultFrameTol);

struct SweepRow {
  std::size_t N = 0;
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t count = 0;
  double A = 0.0;
  double B = 0.0;
  bool is_frame = false;
  bool is_riesz = false;
  double ab_over_N = 0.0;
};

std::vector<std::size_t> divisors(std::size_t n);

/// One row per divisor pair (a, b), a-major. Throws InvalidArgument when
/// N > kMaxSweepN.
std::vector<SweepRow> density_sweep(const ZNWindow& g, double tol = kDefaultFrameTol);
std::vector<SweepRow> density_sweep(WindowKind kind, std::size_t N, std::uint64_t seed,
                                    double tol = kDefaultFrameTol);

/// True iff the row respects the discrete density law.
bool density_law_holds(const SweepRow& row);

}  // namespace frameforge
