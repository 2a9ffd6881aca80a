// frameforge command-line driver.
//
// Exit codes: 0 success, 1 a checked property failed, 2 usage, parse or I/O
// error.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "frameforge/errors.hpp"
#include "frameforge/gabor.hpp"
#include "frameforge/instances.hpp"
#include "frameforge/io.hpp"
#include "frameforge/random.hpp"
#include "frameforge/schmidt.hpp"
#include "frameforge/sequences.hpp"
#include "frameforge/suites.hpp"

namespace ff = frameforge;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

// Thrown for configuration problems found after CLI11 has parsed.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double default_tol(double fallback) {
  const char* env = std::getenv("FRAMEFORGE_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0)) throw UsageError("FRAMEFORGE_TOL must be a positive number");
  return v;
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(item, &pos);
      if (pos != item.size() || v <= 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": expected a comma-separated list of positive integers");
    }
  }
  if (out.empty()) throw UsageError(std::string(what) + " is empty");
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void emit(const json& j, const std::string& path) {
  if (path.empty())
    std::cout << j.dump(2) << '\n';
  else
    ff::io::write_json_file(path, j);
}

ff::ZNWindow load_window(const std::string& spec, std::size_t n, std::uint64_t seed) {
  if (spec.rfind("file:", 0) == 0) {
    const json j = ff::io::read_json_file(spec.substr(5));
    ff::ZNWindow w = ff::io::window_from_json(j);
    if (w.N != n) throw UsageError("window file length differs from --N");
    return w;
  }
  const auto kind = ff::parse_window_kind(spec);
  if (!kind) throw UsageError("unknown window generator: " + spec);
  return ff::make_window(*kind, n, seed);
}

struct SchmidtArgs {
  std::string input, shape, method = "deflate", output;
  double tol = 0.0;
};

int run_schmidt(const SchmidtArgs& args) {
  const double tol = args.tol > 0.0 ? args.tol : default_tol(ff::kDefaultRelTol);
  const std::vector<std::size_t> dims = parse_list(args.shape, "--shape");
  if (dims.size() != 4) throw UsageError("--shape needs h1,h2,k1,k2");
  const ff::BipartiteShape shape{dims[0], dims[1], dims[2], dims[3]};
  shape.validate();

  const json in = ff::io::read_json_file(args.input);
  const ff::COperator f = in.contains("terms") ? ff::io::fsr_from_json(in).materialize() : ff::io::operator_from_json(in);
  shape.check_operator(f);

  const ff::ReshuffleResult oracle = ff::reshuffle_rank(f, shape, tol);
  ff::FSROperator terms(shape);
  if (args.method == "deflate")
    terms = ff::schmidt_decompose_deflation(f, shape, tol).decomposition;
  else
    terms = oracle.canonical_terms;

  const double fn = ff::op_norm(f);
  const double err = fn == 0.0 ? 0.0 : ff::op_norm(f - terms.materialize()) / fn;
  std::cout << "method " << args.method << "\nrank " << terms.size() << "\noracle_rank " << oracle.rank
            << "\nreconstruction_error " << std::setprecision(6) << err << '\n';
  if (!args.output.empty()) ff::io::write_json_file(args.output, ff::io::fsr_to_json(terms));
  return err <= tol ? kOk : kCheckFailed;
}

int run_classify(const std::string& input, double tol_arg) {
  const double tol = tol_arg > 0.0 ? tol_arg : default_tol(ff::kDefaultFrameTol);
  const json in = ff::io::read_json_file(input);
  if (in.contains("groups")) {
    const ff::MinimalSumSequence ms = ff::io::minimal_sum_from_json(in);
    const ff::MainTheoremReport rep = ff::verify_main_theorem(ms, tol);
    std::cout << ff::io::main_theorem_report_to_json(rep).dump(2) << '\n';
    return rep.holds ? kOk : kCheckFailed;
  }
  const ff::VectorSequence seq = ff::io::sequence_from_json(in);
  std::cout << ff::io::frame_report_to_json(ff::classify(seq, tol)).dump(2) << '\n';
  return kOk;
}

struct VerifyMainArgs {
  std::string dims, lens, output;
  std::size_t rank = 1, trials = 10;
  std::uint64_t seed = 7;
};

int run_verify_main(const VerifyMainArgs& args) {
  const double tol = default_tol(ff::kDefaultFrameTol);
  const auto dims = parse_list(args.dims, "--dims");
  const auto lens = parse_list(args.lens, "--lens");
  if (dims.size() != lens.size()) throw UsageError("--dims and --lens need the same length");
  if (args.rank == 0 || args.trials == 0) throw UsageError("--rank and --trials must be at least 1");
  for (std::size_t n : lens)
    if (n < args.rank) throw UsageError("every length must be at least --rank");

  std::size_t applied = 0, failed = 0;
  json runs = json::array();
  for (std::size_t t = 0; t < args.trials; ++t) {
    ff::Rng rng(ff::derive_seed(args.seed, static_cast<std::uint64_t>(t)));
    const ff::MinimalSumSequence ms = ff::instances::random_minimal_sum(rng, args.rank, dims, lens);
    const ff::MainTheoremReport rep = ff::verify_main_theorem(ms, tol);
    applied += rep.claim_applies;
    failed += !rep.holds;
    runs.push_back(ff::io::main_theorem_report_to_json(rep));
  }
  json out{{"seed", args.seed}, {"trials", args.trials}, {"tol", tol},         {"rank", args.rank},
           {"frames", applied}, {"failures", failed},    {"reports", std::move(runs)}};
  if (args.output.empty())
    std::cout << "trials " << args.trials << "\nframes " << applied << "\nfailures " << failed << '\n';
  else
    ff::io::write_json_file(args.output, out);
  return failed == 0 ? kOk : kCheckFailed;
}

struct SweepArgs {
  std::size_t n = 0;
  std::string window = "gaussian", output;
  std::uint64_t seed = 0;
};

int run_sweep(const SweepArgs& args) {
  if (args.n == 0 || args.n > ff::kMaxSweepN)
    throw UsageError("--N must be between 1 and " + std::to_string(ff::kMaxSweepN));
  const double tol = default_tol(ff::kDefaultFrameTol);
  const ff::ZNWindow g = load_window(args.window, args.n, args.seed);
  const std::vector<ff::SweepRow> rows = ff::density_sweep(g, tol);
  if (args.output.empty()) {
    ff::io::write_sweep_csv(std::cout, rows);
  } else {
    std::ofstream out(args.output);
    if (!out) throw ff::ParseError("cannot write " + args.output);
    ff::io::write_sweep_csv(out, rows);
  }
  std::size_t violations = 0;
  for (const ff::SweepRow& row : rows) violations += !ff::density_law_holds(row);
  if (violations > 0) std::cerr << violations << " rows violate the density law\n";
  return violations == 0 ? kOk : kCheckFailed;
}

struct PerturbArgs {
  std::size_t n = 0, a = 0, b = 0;
  std::int64_t alpha = 0, beta = 0;
  double c_phase = 0.0;
  std::string window = "gaussian", output;
  std::uint64_t seed = 0;
  bool expect_nonframe = false;
};

int run_perturb(const PerturbArgs& args) {
  const double tol = default_tol(ff::kDefaultFrameTol);
  const ff::ZNLattice lat{args.n, args.a, args.b};
  lat.validate();
  const ff::ZNWindow g = load_window(args.window, args.n, args.seed);
  const ff::PerturbationReport rep = ff::perturb_window(g, lat, args.alpha, args.beta, args.c_phase, tol);
  emit(ff::io::perturbation_report_to_json(rep), args.output);
  if (args.expect_nonframe && rep.frame.is_frame) {
    std::cerr << "expected a non-frame, lambda_min / lambda_max = " << rep.ratio << '\n';
    return kCheckFailed;
  }
  return kOk;
}

struct VerifyAllArgs {
  std::uint64_t seed = 7;
  std::size_t trials = 50;
  std::string report;
};

int run_verify_all(const VerifyAllArgs& args) {
  if (args.trials == 0) throw UsageError("--trials must be at least 1");
  ff::suites::SuiteConfig cfg;
  cfg.seed = args.seed;
  cfg.trials = args.trials;
  cfg.tol = default_tol(ff::kDefaultRelTol);
  const auto results = ff::suites::run_all(cfg);
  const json rep = ff::suites::report(cfg, results, utc_timestamp());
  for (const auto& r : results)
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " cases=" << r.cases
              << " worst_residual=" << r.worst_residual << '\n';
  if (!args.report.empty()) ff::io::write_json_file(args.report, rep);
  return rep.at("all_passed").get<bool>() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frameforge: frames, Schmidt rank and discrete Gabor systems"};
  app.require_subcommand(1);

  SchmidtArgs schmidt;
  auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt decompositions")->require_subcommand(1);
  auto* decompose = schmidt_cmd->add_subcommand("decompose", "decompose an operator on H1 (x) H2");
  decompose->add_option("--input", schmidt.input, "operator or FSR JSON")->required();
  decompose->add_option("--shape", schmidt.shape, "h1,h2,k1,k2")->required();
  decompose->add_option("--method", schmidt.method)->check(CLI::IsMember({"deflate", "svd"}));
  decompose->add_option("--tol", schmidt.tol, "rank and reconstruction tolerance")->check(CLI::PositiveNumber);
  decompose->add_option("--output", schmidt.output, "decomposition JSON");

  auto* frames_cmd = app.add_subcommand("frames", "frame classification")->require_subcommand(1);
  std::string classify_input;
  double classify_tol = 0.0;
  auto* classify_cmd = frames_cmd->add_subcommand("classify", "bounds of a sequence or minimal sum");
  classify_cmd->add_option("--input", classify_input)->required();
  classify_cmd->add_option("--tol", classify_tol)->check(CLI::PositiveNumber);

  VerifyMainArgs vm;
  auto* verify_main = frames_cmd->add_subcommand("verify-main", "random minimal sums");
  verify_main->add_option("--dims", vm.dims, "m1,m2,...")->required();
  verify_main->add_option("--lens", vm.lens, "N1,N2,...")->required();
  verify_main->add_option("--rank", vm.rank);
  verify_main->add_option("--seed", vm.seed);
  verify_main->add_option("--trials", vm.trials);
  verify_main->add_option("--output", vm.output);

  auto* gabor_cmd = app.add_subcommand("gabor", "Gabor systems on Z_N")->require_subcommand(1);
  SweepArgs sweep;
  auto* sweep_cmd = gabor_cmd->add_subcommand("sweep", "classify every divisor lattice");
  sweep_cmd->add_option("--N", sweep.n)->required();
  sweep_cmd->add_option("--window", sweep.window, "generator name or file:PATH");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--output", sweep.output, "CSV path, stdout by default");

  PerturbArgs perturb;
  auto* perturb_cmd = gabor_cmd->add_subcommand("perturb", "classify G(g + c M_beta T_alpha g, a, b)");
  perturb_cmd->add_option("--N", perturb.n)->required();
  perturb_cmd->add_option("--a", perturb.a)->required();
  perturb_cmd->add_option("--b", perturb.b)->required();
  perturb_cmd->add_option("--alpha", perturb.alpha)->required();
  perturb_cmd->add_option("--beta", perturb.beta)->required();
  perturb_cmd->add_option("--c-phase", perturb.c_phase, "c = exp(2 pi i phase)");
  perturb_cmd->add_option("--window", perturb.window);
  perturb_cmd->add_option("--seed", perturb.seed);
  perturb_cmd->add_option("--output", perturb.output);
  perturb_cmd->add_flag("--expect-nonframe", perturb.expect_nonframe);

  VerifyAllArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "property suites")->require_subcommand(1);
  auto* all_cmd = verify_cmd->add_subcommand("all", "run every suite");
  all_cmd->add_option("--seed", va.seed);
  all_cmd->add_option("--trials", va.trials);
  all_cmd->add_option("--report", va.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) return run_schmidt(schmidt);
    if (*classify_cmd) return run_classify(classify_input, classify_tol);
    if (*verify_main) return run_verify_main(vm);
    if (*sweep_cmd) return run_sweep(sweep);
    if (*perturb_cmd) return run_perturb(perturb);
    if (*all_cmd) return run_verify_all(va);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ff::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
