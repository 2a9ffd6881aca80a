#pragma once

// Seeded property suites behind `frameforge verify all` and the acceptance
// tests. Every suite draws its randomness from derive_seed(seed, name), so
// suites can run in any order with identical results.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "frameforge/hilbert.hpp"

namespace frameforge::suites {

struct SuiteConfig {
  std::uint64_t seed = 7;
  std::size_t trials = 50;
  double tol = kDefaultRelTol;  // rank tolerance for Schmidt computations
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst_residual = 0.0;
  std::vector<std::string> failures;  // first few failure descriptions
  nlohmann::json details = nlohmann::json::object();

  void fail(std::string what);
  void residual(double value);
};

// Deflation: each step lowers the reshuffle rank by one, term count equals
// the oracle rank, reconstruction within 1e-8 ||F||.
SuiteResult deflation_rank_law(const SuiteConfig& cfg);

// Norms of the embeddings and contractions, the bound on P, continuity of D,
// and the rank-one fixed point D(F) = <F(u), v> F in both directions.
SuiteResult contraction_identities(const SuiteConfig& cfg);

// Left and right inverse factor identities on invertible rank-2 operators
// over C^2 (x) C^2.
SuiteResult inverse_factor_identities(const SuiteConfig& cfg);

// Deflation and reshuffle-SVD decompositions span the same factor spaces.
SuiteResult span_uniqueness(const SuiteConfig& cfg);

// Rank of strong limits of operators with bounded Schmidt rank.
SuiteResult rank_of_limits(const SuiteConfig& cfg);

// Optimal bounds of tensor products of sequences are products of bounds.
SuiteResult tensor_bounds(const SuiteConfig& cfg);

// Frame minimal sums: concatenated groups are frames, Bessel bound
// subadditivity, sampled Bessel bound and left-inverse lower bound.
SuiteResult minimal_sum_frames(const SuiteConfig& cfg);

// Two-term disjunction with independent re-verification of the branch.
SuiteResult two_term_disjunction(const SuiteConfig& cfg);

// Discrete density law and full-lattice tightness over N in {4, 6, 8, 12}.
SuiteResult gabor_density(const SuiteConfig& cfg);

// Oversampling inequalities A' >= uvA, B' <= uvB.
SuiteResult gabor_oversampling(const SuiteConfig& cfg);

// Rank-r windows with lattice shifts: product frame implies factor frames.
SuiteResult gabor_rank_r(const SuiteConfig& cfg);

std::vector<SuiteResult> run_all(const SuiteConfig& cfg);

nlohmann::json to_json(const SuiteResult& r);

/// Full report; `timestamp` is the only field that may differ between two
/// runs with the same configuration.
nlohmann::json report(const SuiteConfig& cfg, const std::vector<SuiteResult>& results,
                      const std::string& timestamp);

}  // namespace frameforge::suites
