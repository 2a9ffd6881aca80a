#pragma once

// Seeded random instances for the verification suites and tests.

#include <cstddef>
#include <vector>

#include "frameforge/random.hpp"
#include "frameforge/schmidt.hpp"
#include "frameforge/sequences.hpp"

namespace frameforge::instances {

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi);

/// sum_{k < rank} A_k (x) B_k with Gaussian factors.
FSROperator random_fsr(Rng& rng, const BipartiteShape& shape, std::size_t rank);

/// Shape with every dimension in [lo, hi].
BipartiteShape random_shape(Rng& rng, std::size_t lo, std::size_t hi);

VectorSequence random_sequence(Rng& rng, std::size_t dim, std::size_t length);

/// Minimal sum with Gaussian components; dims[j] = m_j, lengths[j] = N_j.
MinimalSumSequence random_minimal_sum(Rng& rng, std::size_t r, const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& lengths);

enum class DisjunctionKind {
  generic,        // every component is a generic frame
  first_degenerate,  // f_{1,1} spans a line, so F_1 is not a frame
  split_factor,   // one factor i carries {e1, 0} and {0, e2}: neither F_k is a frame
};

/// r = 2 minimal sum over d factors built to exercise one branch of the
/// two-term disjunction. For split_factor the split index is returned in
/// `split_index`.
MinimalSumSequence disjunction_instance(Rng& rng, DisjunctionKind kind, std::size_t d,
                                        std::size_t* split_index = nullptr);

}  // namespace frameforge::instances
