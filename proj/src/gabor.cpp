#include "frameforge/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

#include "frameforge/errors.hpp"
#include "frameforge/random.hpp"

namespace frameforge {

namespace {

using Idx = Eigen::Index;

std::size_t mod(std::int64_t x, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((x % m) + m) % m);
}

// exp(2 pi i k / n) with k reduced mod n first.
Complex root_of_unity(std::int64_t k, std::size_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(mod(k, n)) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

std::size_t window_dim(const CVector& g) { return static_cast<std::size_t>(g.size()); }

}  // namespace

void ZNLattice::validate() const {
  if (N == 0 || a == 0 || b == 0) throw NonDivisorLattice("lattice parameters must be positive");
  if (N % a != 0 || N % b != 0)
    throw NonDivisorLattice("lattice (a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                            ") does not divide N=" + std::to_string(N));
}

std::optional<WindowKind> parse_window_kind(std::string_view name) {
  if (name == "gaussian") return WindowKind::gaussian;
  if (name == "twoexp") return WindowKind::twoexp;
  if (name == "sech") return WindowKind::sech;
  if (name == "rational") return WindowKind::rational;
  if (name == "delta") return WindowKind::delta;
  if (name == "random") return WindowKind::random;
  return std::nullopt;
}

std::string_view window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::gaussian: return "gaussian";
    case WindowKind::twoexp: return "twoexp";
    case WindowKind::sech: return "sech";
    case WindowKind::rational: return "rational";
    case WindowKind::delta: return "delta";
    case WindowKind::random: return "random";
  }
  return "unknown";
}

ZNWindow make_window(WindowKind kind, std::size_t N, std::uint64_t seed, double scale) {
  if (N == 0) throw InvalidArgument("window length must be positive");
  const Idx n = static_cast<Idx>(N);
  CVector g = CVector::Zero(n);
  if (kind == WindowKind::delta) {
    g(0) = 1.0;
  } else if (kind == WindowKind::random) {
    Rng rng(seed);
    g = random_unit_cvector(rng, n);
  } else {
    const double s = scale > 0.0 ? scale : static_cast<double>(N) / 8.0;
    const auto half = static_cast<std::int64_t>(N / 2);
    for (Idx t = 0; t < n; ++t) {
      const auto centred = static_cast<std::int64_t>(mod(t + half, N)) - half;
      const double x = static_cast<double>(centred) / s;
      double u = 0.0;
      switch (kind) {
        case WindowKind::gaussian: u = std::exp(-x * x); break;
        case WindowKind::twoexp: u = std::exp(-std::abs(x)); break;
        case WindowKind::rational: u = 1.0 / (1.0 + 4.0 * std::numbers::pi * std::numbers::pi * x * x); break;
        case WindowKind::sech: u = 1.0 / std::cosh(std::numbers::pi * x); break;
        default: break;
      }
      g(t) = u;
    }
    g /= g.norm();
  }
  return ZNWindow{N, std::move(g), std::string(window_kind_name(kind))};
}

ZNWindow make_window(CVector g, std::string generator) {
  if (g.size() == 0) throw InvalidArgument("window must be nonempty");
  const std::size_t N = window_dim(g);
  return ZNWindow{N, std::move(g), std::move(generator)};
}

CVector time_frequency_shift(const CVector& g, std::int64_t a, std::int64_t b) {
  const std::size_t N = window_dim(g);
  CVector out(g.size());
  for (Idx t = 0; t < g.size(); ++t)
    out(t) = root_of_unity(b * t, N) * g(static_cast<Idx>(mod(t - a, N)));
  return out;
}

ZNWindow translate(const ZNWindow& g, std::int64_t a) {
  return ZNWindow{g.N, time_frequency_shift(g.g, a, 0), g.generator};
}

ZNWindow modulate(const ZNWindow& g, std::int64_t b) {
  return ZNWindow{g.N, time_frequency_shift(g.g, 0, b), g.generator};
}

CVector time_frequency_shift(const CVector& g, std::span<const std::size_t> dims,
                             std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != dims.size() || b.size() != dims.size())
    throw DimensionMismatch("time_frequency_shift: shift and group ranks differ");
  const SpaceShape shape(std::vector<std::size_t>(dims.begin(), dims.end()));
  if (window_dim(g) != shape.total())
    throw DimensionMismatch("time_frequency_shift: window does not live on the product group");
  CVector out(g.size());
  std::vector<std::size_t> source(dims.size());
  for (std::size_t x = 0; x < shape.total(); ++x) {
    const std::vector<std::size_t> multi = shape.unflatten(x);
    double angle = 0.0;
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const auto xj = static_cast<std::int64_t>(multi[j]);
      source[j] = mod(xj - a[j], dims[j]);
      angle += static_cast<double>(mod(xj * b[j], dims[j])) / static_cast<double>(dims[j]);
    }
    out(static_cast<Idx>(x)) =
        std::polar(1.0, 2.0 * std::numbers::pi * angle) * g(static_cast<Idx>(shape.flatten(source)));
  }
  return out;
}

namespace {

void check_window(const ZNWindow& g, const ZNLattice& lat) {
  lat.validate();
  if (g.N != lat.N || window_dim(g.g) != g.N)
    throw DimensionMismatch("window length " + std::to_string(g.g.size()) +
                            " does not match N=" + std::to_string(lat.N));
}

}  // namespace

VectorSequence gabor_system(const ZNWindow& g, const ZNLattice& lat) {
  check_window(g, lat);
  std::vector<CVector> vectors;
  vectors.reserve(lat.count());
  for (std::size_t m = 0; m < lat.N / lat.a; ++m)
    for (std::size_t n = 0; n < lat.N / lat.b; ++n)
      vectors.push_back(time_frequency_shift(g.g, static_cast<std::int64_t>(m * lat.a),
                                             static_cast<std::int64_t>(n * lat.b)));
  return VectorSequence(lat.N, std::move(vectors));
}

VectorSequence gabor_system(const CVector& g, std::span<const ZNLattice> lattices) {
  if (lattices.empty()) throw InvalidArgument("gabor_system: no lattices");
  std::vector<std::size_t> dims;
  std::vector<std::size_t> counts;
  for (const ZNLattice& lat : lattices) {
    lat.validate();
    dims.push_back(lat.N);
    counts.push_back(lat.count());
  }
  const SpaceShape index_shape(counts);
  std::vector<std::int64_t> a(dims.size()), b(dims.size());
  std::vector<CVector> vectors;
  vectors.reserve(index_shape.total());
  for (std::size_t idx = 0; idx < index_shape.total(); ++idx) {
    const std::vector<std::size_t> multi = index_shape.unflatten(idx);
    for (std::size_t j = 0; j < dims.size(); ++j) {
      const std::size_t per_m = lattices[j].N / lattices[j].b;
      a[j] = static_cast<std::int64_t>((multi[j] / per_m) * lattices[j].a);
      b[j] = static_cast<std::int64_t>((multi[j] % per_m) * lattices[j].b);
    }
    vectors.push_back(time_frequency_shift(g, dims, a, b));
  }
  return VectorSequence(static_cast<std::size_t>(g.size()), std::move(vectors));
}

COperator gabor_frame_operator(const ZNWindow& g, const ZNLattice& lat) {
  check_window(g, lat);
  const Idx n = static_cast<Idx>(lat.N);
  const Idx period = static_cast<Idx>(lat.N / lat.b);
  COperator s = COperator::Zero(n, n);
  for (std::size_t m = 0; m < lat.N / lat.a; ++m) {
    const CVector x = time_frequency_shift(g.g, static_cast<std::int64_t>(m * lat.a), 0);
    for (Idx row = 0; row < n; ++row)
      for (Idx col = row % period; col < n; col += period) s(row, col) += x(row) * std::conj(x(col));
  }
  return static_cast<double>(period) * s;
}

GaborStats gabor_stats(const ZNWindow& g, const ZNLattice& lat, double tol) {
  GaborStats stats;
  stats.lattice = lat;
  stats.frame = classify_frame_operator(gabor_frame_operator(g, lat), lat.count(), tol);
  stats.count = lat.count();
  stats.ab_over_N = lat.ab_over_N();
  const std::size_t ab = lat.a * lat.b;
  const bool frame_violates = stats.frame.is_frame && ab > lat.N;
  const bool riesz_law = stats.frame.is_riesz == (stats.frame.is_frame && ab == lat.N);
  stats.density_ok = !frame_violates && riesz_law;
  return stats;
}

OversampleReport oversample_check(const ZNWindow& g, const ZNLattice& lat, std::size_t u,
                                  std::size_t v, double slack, double tol) {
  lat.validate();
  if (u == 0 || v == 0 || lat.a % u != 0 || lat.b % v != 0)
    throw BadRefinement("refinement (u=" + std::to_string(u) + ", v=" + std::to_string(v) +
                        ") must divide (a=" + std::to_string(lat.a) + ", b=" +
                        std::to_string(lat.b) + ")");
  OversampleReport report;
  report.coarse = lat;
  report.fine = ZNLattice{lat.N, lat.a / u, lat.b / v};
  report.u = u;
  report.v = v;
  report.coarse_frame = gabor_stats(g, report.coarse, tol).frame;
  report.fine_frame = gabor_stats(g, report.fine, tol).frame;
  const double uv = static_cast<double>(u * v);
  report.lower_ok = report.fine_frame.lower_bound >= uv * report.coarse_frame.lower_bound - slack;
  report.upper_ok = report.fine_frame.bessel_bound <= uv * report.coarse_frame.bessel_bound + slack;
  report.holds = report.lower_ok && report.upper_ok;
  return report;
}

std::vector<std::size_t> RankRWindowSpec::dims() const {
  std::vector<std::size_t> out;
  for (const ZNWindow& w : windows) out.push_back(w.N);
  return out;
}

namespace {

void validate_spec(const RankRWindowSpec& spec) {
  const std::size_t d = spec.d();
  if (d == 0) throw InvalidArgument("rank-r window needs at least one factor");
  if (spec.alpha.size() != d || spec.beta.size() != d)
    throw InvalidArgument("shift tables must have one row per factor");
  const std::size_t r = spec.r();
  if (r == 0) throw InvalidArgument("rank-r window needs r >= 1");
  for (std::size_t j = 0; j < d; ++j) {
    const ZNWindow& w = spec.windows[j];
    if (w.N == 0 || window_dim(w.g) != w.N) throw InvalidArgument("malformed window " + std::to_string(j));
    if (spec.alpha[j].size() != r || spec.beta[j].size() != r)
      throw InvalidArgument("shift table row " + std::to_string(j) + " must have r entries");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < r; ++k)
      if (!seen.emplace(mod(spec.alpha[j][k], w.N), mod(spec.beta[j][k], w.N)).second)
        throw InvalidArgument("repeated shift pair in factor " + std::to_string(j));
  }
}

CVector shifted_window(const RankRWindowSpec& spec, std::size_t j, std::size_t k) {
  return time_frequency_shift(spec.windows[j].g, spec.alpha[j][k], spec.beta[j][k]);
}

}  // namespace

ProductWindow build_rank_r_window(const RankRWindowSpec& spec, double rel_tol) {
  validate_spec(spec);
  const std::size_t d = spec.d();
  const std::size_t r = spec.r();
  for (std::size_t j = 0; j < d; ++j) {
    COperator columns(spec.windows[j].g.size(), static_cast<Idx>(r));
    for (std::size_t k = 0; k < r; ++k) columns.col(static_cast<Idx>(k)) = shifted_window(spec, j, k);
    if (numerical_rank(columns, rel_tol) != r) throw DependentModulates(j);
  }
  ProductWindow out{spec.dims(), CVector()};
  std::vector<CVector> chain(d);
  for (std::size_t k = 0; k < r; ++k) {
    for (std::size_t j = 0; j < d; ++j) chain[j] = shifted_window(spec, j, k);
    const CVector term = tensor_vec(chain);
    if (k == 0)
      out.g = term;
    else
      out.g += term;
  }
  return out;
}

namespace {

void check_lattices(const RankRWindowSpec& spec, std::span<const ZNLattice> lattices) {
  if (lattices.size() != spec.d()) throw InvalidArgument("need one lattice per factor");
  for (std::size_t j = 0; j < spec.d(); ++j) {
    lattices[j].validate();
    if (lattices[j].N != spec.windows[j].N)
      throw DimensionMismatch("lattice " + std::to_string(j) + " lives on a different group");
  }
}

}  // namespace

MinimalSumSequence rank_r_minimal_sum(const RankRWindowSpec& spec,
                                      std::span<const ZNLattice> lattices) {
  validate_spec(spec);
  check_lattices(spec, lattices);
  std::vector<std::vector<VectorSequence>> groups(spec.d());
  for (std::size_t j = 0; j < spec.d(); ++j)
    for (std::size_t k = 0; k < spec.r(); ++k)
      groups[j].push_back(gabor_system(make_window(shifted_window(spec, j, k)), lattices[j]));
  return build_minimal_sum(std::move(groups));
}

RankRFrameReport verify_rank_r_frame_implication(const RankRWindowSpec& spec,
                                                 std::span<const ZNLattice> lattices,
                                                 double tol) {
  validate_spec(spec);
  check_lattices(spec, lattices);
  for (std::size_t j = 0; j < spec.d(); ++j)
    for (std::size_t k = 0; k < spec.r(); ++k)
      if (mod(spec.alpha[j][k], lattices[j].a) != 0 || mod(spec.beta[j][k], lattices[j].b) != 0)
        throw ConditionViolated("shift (" + std::to_string(spec.alpha[j][k]) + ", " +
                                std::to_string(spec.beta[j][k]) + ") of factor " +
                                std::to_string(j) + " is not on the lattice");

  const ProductWindow window = build_rank_r_window(spec);
  RankRFrameReport report;
  report.product = classify(gabor_system(window.g, lattices), tol);
  report.claim_applies = report.product.is_frame;

  bool factors_ok = true;
  for (std::size_t j = 0; j < spec.d(); ++j) {
    FactorGaborReport fr;
    fr.lattice = lattices[j];
    const GaborStats stats = gabor_stats(spec.windows[j], lattices[j], tol);
    fr.frame = stats.frame;
    fr.density_ok = lattices[j].a * lattices[j].b <= lattices[j].N;

    const COperator base = gabor_frame_operator(spec.windows[j], lattices[j]);
    COperator concat = COperator::Zero(base.rows(), base.cols());
    for (std::size_t k = 0; k < spec.r(); ++k)
      concat += gabor_frame_operator(make_window(shifted_window(spec, j, k)), lattices[j]);
    const double r = static_cast<double>(spec.r());
    const double scale = op_norm(r * base);
    fr.averaging_defect = scale > 0.0 ? op_norm(concat - r * base) / scale : 0.0;

    factors_ok = factors_ok && fr.frame.is_frame && fr.density_ok && fr.averaging_defect <= 1e-9;
    report.factors.push_back(fr);
  }
  report.holds = !report.claim_applies || factors_ok;
  return report;
}

PerturbationReport perturb_window(const ZNWindow& g, const ZNLattice& lat, std::int64_t alpha,
                                  std::int64_t beta, double c_phase, double tol) {
  check_window(g, lat);
  if (mod(alpha, lat.N) == 0 && mod(beta, lat.N) == 0)
    throw ZeroShift("perturbation needs (alpha, beta) != (0, 0) mod N");
  PerturbationReport report;
  report.lattice = lat;
  report.alpha = alpha;
  report.beta = beta;
  report.c_phase = c_phase;

  const std::size_t alpha_b = mod(alpha * static_cast<std::int64_t>(lat.b), lat.N);
  const std::size_t beta_a = mod(beta * static_cast<std::int64_t>(lat.a), lat.N);
  report.conditions_hold = alpha_b == 0 && beta_a == 0;
  if (alpha_b != 0)
    report.condition_violation = "alpha*b = " + std::to_string(alpha_b) + " mod N";
  else if (beta_a != 0)
    report.condition_violation = "beta*a = " + std::to_string(beta_a) + " mod N";

  const Complex c = std::polar(1.0, 2.0 * std::numbers::pi * c_phase);
  report.perturbed = g.g + c * time_frequency_shift(g.g, alpha, beta);
  const COperator s = gabor_frame_operator(make_window(report.perturbed, g.generator), lat);
  report.frame = classify_frame_operator(s, lat.count(), tol);
  report.spectrum = Eigen::SelfAdjointEigenSolver<COperator>(s, Eigen::EigenvaluesOnly).eigenvalues();
  const double lmax = report.spectrum(report.spectrum.size() - 1);
  report.ratio = lmax > 0.0 ? std::max(report.spectrum(0), 0.0) / lmax : 0.0;
  return report;
}

std::vector<std::size_t> divisors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t q = 1; q <= n; ++q)
    if (n % q == 0) out.push_back(q);
  return out;
}

std::vector<SweepRow> density_sweep(const ZNWindow& g, double tol) {
  if (g.N == 0 || g.N > kMaxSweepN)
    throw InvalidArgument("density sweep supports 1 <= N <= " + std::to_string(kMaxSweepN));
  std::vector<SweepRow> rows;
  const std::vector<std::size_t> divs = divisors(g.N);
  for (std::size_t a : divs)
    for (std::size_t b : divs) {
      const GaborStats s = gabor_stats(g, ZNLattice{g.N, a, b}, tol);
      rows.push_back({g.N, a, b, s.count, s.frame.lower_bound, s.frame.bessel_bound,
                      s.frame.is_frame, s.frame.is_riesz, s.ab_over_N});
    }
  return rows;
}

std::vector<SweepRow> density_sweep(WindowKind kind, std::size_t N, std::uint64_t seed, double tol) {
  if (N == 0 || N > kMaxSweepN)
    throw InvalidArgument("density sweep supports 1 <= N <= " + std::to_string(kMaxSweepN));
  return density_sweep(make_window(kind, N, seed), tol);
}

bool density_law_holds(const SweepRow& row) {
  const std::size_t ab = row.a * row.b;
  if (row.is_frame && ab > row.N) return false;
  return row.is_riesz == (row.is_frame && ab == row.N);
}

}  // namespace frameforge
