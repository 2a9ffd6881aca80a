// Acceptance driver: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Suite results are re-checked against the hand-written oracles where
// the suite itself relies on library decompositions.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "frameforge/gabor.hpp"
#include "frameforge/instances.hpp"
#include "frameforge/io.hpp"
#include "frameforge/schmidt.hpp"
#include "frameforge/sequences.hpp"
#include "frameforge/suites.hpp"
#include "oracles.hpp"

using namespace frameforge;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

Outcome from_suites(std::initializer_list<suites::SuiteResult> results) {
  Outcome out;
  std::ostringstream d;
  for (const auto& r : results) {
    out.passed = out.passed && r.passed;
    d << r.name << ": " << r.cases << " cases, worst residual " << r.worst_residual << "; ";
    for (const auto& f : r.failures) d << "[" << f << "] ";
  }
  out.detail = d.str();
  return out;
}

void fail(Outcome& o, const std::string& why) {
  o.passed = false;
  o.detail += "[" + why + "] ";
}

suites::SuiteConfig config(std::size_t trials) {
  suites::SuiteConfig cfg;
  cfg.seed = 7;
  cfg.trials = trials;
  return cfg;
}

Outcome deflation() {
  Outcome out = from_suites({suites::deflation_rank_law(config(100))});
  // Independent replay: pivoted Gram-Schmidt rank of each residual.
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(1001, t));
    const BipartiteShape s = instances::random_shape(rng, 1, 3);
    const std::size_t r = instances::uniform_size(rng, 1, 4);
    const COperator f = instances::random_fsr(rng, s, r).materialize();
    const std::size_t want = oracle::schmidt_rank(f, s.h1, s.h2, s.k1, s.k2);
    const DeflationResult dec = schmidt_decompose_deflation(f, s, 1e-9);
    if (dec.decomposition.size() != want) fail(out, "oracle rank mismatch at replay " + std::to_string(t));
    if (dec.relative_error > 1e-8) fail(out, "replay reconstruction");
    // Cut-off relative to the original operator, not the shrinking residual.
    const double floor = 1e-9 * oracle::reshuffle(f, s.h1, s.h2, s.k1, s.k2).norm();
    COperator residual = f;
    std::size_t rank = want;
    for (const FactorPair& term : dec.decomposition.terms()) {
      residual -= oracle::kron(term.first, term.second);
      const std::size_t next = oracle::rank(oracle::reshuffle(residual, s.h1, s.h2, s.k1, s.k2), 0.0, floor);
      if (next + 1 != rank) fail(out, "replay rank drop at instance " + std::to_string(t));
      rank = next;
    }
  }
  return out;
}

Outcome minimal_sums() {
  Outcome out = from_suites({suites::tensor_bounds(config(50)), suites::minimal_sum_frames(config(100))});
  // Jacobi re-check of the concatenated groups on fresh frame instances.
  std::size_t checked = 0;
  for (std::uint64_t t = 0; checked < 100 && t < 1000; ++t) {
    Rng rng(derive_seed(2002, t));
    const std::size_t d = instances::uniform_size(rng, 2, 3), r = instances::uniform_size(rng, 1, 3);
    std::vector<std::size_t> dims(d), lens(d);
    for (std::size_t j = 0; j < d; ++j) {
      dims[j] = instances::uniform_size(rng, 1, 4);
      lens[j] = std::max(dims[j] + instances::uniform_size(rng, 0, 1), r);
    }
    const MinimalSumSequence ms = instances::random_minimal_sum(rng, r, dims, lens);
    if (!classify(materialize(ms)).is_frame) continue;
    ++checked;
    for (std::size_t j = 0; j < d; ++j) {
      const auto eig = oracle::hermitian_eigenvalues(oracle::frame_operator(concatenated_group(ms, j).vectors()));
      if (!(eig.front() > 1e-8 * eig.back())) fail(out, "oracle: group is not a frame");
    }
  }
  if (checked < 100) fail(out, "too few oracle frame instances");
  return out;
}

Outcome disjunction() {
  const suites::SuiteResult r = suites::two_term_disjunction(config(50));
  Outcome out = from_suites({r});
  if (r.cases < 50) fail(out, "fewer than 50 instances");
  if (r.details.value("branch3", 0) < 5) fail(out, "fewer than 5 branch-3 instances");
  return out;
}

Outcome oversampling() {
  const suites::SuiteResult r = suites::gabor_oversampling(config(20));
  Outcome out = from_suites({r});
  if (r.cases != 20) fail(out, "expected 20 refinement cases");
  return out;
}

Outcome perturbation() {
  Outcome out;
  std::size_t n = 0;
  double worst = 0.0;
  for (const auto& entry : fs::directory_iterator(FRAMEFORGE_GOLDEN_DIR "/perturbation")) {
    const json j = io::read_json_file(entry.path());
    const ZNWindow g = io::window_from_json(j.at("window"));
    const ZNLattice lat{j.at("N").get<std::size_t>(), j.at("a").get<std::size_t>(), j.at("b").get<std::size_t>()};
    const PerturbationReport rep = perturb_window(g, lat, j.at("alpha").get<std::int64_t>(),
                                                  j.at("beta").get<std::int64_t>(), j.at("c_phase").get<double>());
    const auto golden = j.at("spectrum").get<std::vector<double>>();
    if (golden.size() != std::size_t(rep.spectrum.size())) {
      fail(out, entry.path().filename().string() + ": spectrum length");
      continue;
    }
    for (std::size_t i = 0; i < golden.size(); ++i)
      if (std::abs(golden[i] - rep.spectrum(Eigen::Index(i))) > 1e-9 * golden.back())
        fail(out, entry.path().filename().string() + ": spectrum differs from golden");
    if (!(rep.ratio < 1e-8)) fail(out, entry.path().filename().string() + ": ratio " + std::to_string(rep.ratio));
    worst = std::max(worst, rep.ratio);
    ++n;
  }
  if (n < 10) fail(out, "fewer than 10 golden instances");
  out.detail += std::to_string(n) + " instances, worst ratio " + std::to_string(worst);
  return out;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRAMEFORGE_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome determinism() {
  Outcome out;
  const fs::path a = fs::temp_directory_path() / "frameforge_accept_a.json";
  const fs::path b = fs::temp_directory_path() / "frameforge_accept_b.json";
  const int ca = run_cli("verify all --seed 7 --trials 50 --report " + a.string());
  const int cb = run_cli("verify all --seed 7 --trials 50 --report " + b.string());
  if (ca != 0 || cb != 0) fail(out, "exit codes " + std::to_string(ca) + ", " + std::to_string(cb));
  try {
    json ja = io::read_json_file(a), jb = io::read_json_file(b);
    ja.erase("timestamp");
    jb.erase("timestamp");
    if (ja.dump() != jb.dump()) fail(out, "reports differ");
    out.detail += std::to_string(ja.at("suites").size()) + " suites, identical reports";
  } catch (const std::exception& e) {
    fail(out, e.what());
  }
  fs::remove(a);
  fs::remove(b);
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "deflation rank law", 10, deflation},
      {2, "embedding and contraction identities", 5,
       [] { return from_suites({suites::contraction_identities(config(100))}); }},
      {3, "inverse factors", 5, [] { return from_suites({suites::inverse_factor_identities(config(50))}); }},
      {4, "span uniqueness", 5, [] { return from_suites({suites::span_uniqueness(config(50))}); }},
      {5, "tensor bounds and frame minimal sums", 20, minimal_sums},
      {6, "two-term disjunction", 10, disjunction},
      {7, "discrete Gabor density", 30, [] { return from_suites({suites::gabor_density(config(1))}); }},
      {8, "oversampling", 10, oversampling},
      {9, "perturbation non-frames", 5, perturbation},
      {10, "determinism of verify all", 120, determinism},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) fail(o, "runtime limit " + std::to_string(c.limit_s) + " s exceeded");
    failed += !o.passed;
    std::printf("%s criterion %2d: %s (%.2f s) %s\n", o.passed ? "PASS" : "FAIL", c.id, c.name, secs,
                o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
