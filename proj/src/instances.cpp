#include "frameforge/instances.hpp"

namespace frameforge::instances {

using Idx = Eigen::Index;

std::size_t uniform_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

FSROperator random_fsr(Rng& rng, const BipartiteShape& shape, std::size_t rank) {
  FSROperator f(shape);
  for (std::size_t k = 0; k < rank; ++k)
    f.push_back({random_coperator(rng, static_cast<Idx>(shape.k1), static_cast<Idx>(shape.h1)),
                 random_coperator(rng, static_cast<Idx>(shape.k2), static_cast<Idx>(shape.h2))});
  return f;
}

BipartiteShape random_shape(Rng& rng, std::size_t lo, std::size_t hi) {
  BipartiteShape s;
  s.h1 = uniform_size(rng, lo, hi);
  s.h2 = uniform_size(rng, lo, hi);
  s.k1 = uniform_size(rng, lo, hi);
  s.k2 = uniform_size(rng, lo, hi);
  return s;
}

VectorSequence random_sequence(Rng& rng, std::size_t dim, std::size_t length) {
  std::vector<CVector> vectors;
  for (std::size_t n = 0; n < length; ++n) vectors.push_back(random_cvector(rng, static_cast<Idx>(dim)));
  return VectorSequence(dim, std::move(vectors));
}

MinimalSumSequence random_minimal_sum(Rng& rng, std::size_t r, const std::vector<std::size_t>& dims,
                                      const std::vector<std::size_t>& lengths) {
  std::vector<std::vector<VectorSequence>> groups(dims.size());
  for (std::size_t j = 0; j < dims.size(); ++j)
    for (std::size_t k = 0; k < r; ++k) groups[j].push_back(random_sequence(rng, dims[j], lengths[j]));
  return build_minimal_sum(std::move(groups));
}

MinimalSumSequence disjunction_instance(Rng& rng, DisjunctionKind kind, std::size_t d,
                                        std::size_t* split_index) {
  std::vector<std::size_t> dims(d), lengths(d);
  for (std::size_t j = 0; j < d; ++j) {
    dims[j] = uniform_size(rng, 2, 3);
    lengths[j] = dims[j] + uniform_size(rng, 0, 2);
  }
  std::size_t split = d;
  if (kind == DisjunctionKind::split_factor) {
    split = uniform_size(rng, 0, d - 1);
    dims[split] = 2;
    lengths[split] = 2;
  }
  if (split_index) *split_index = split;

  std::vector<std::vector<VectorSequence>> groups(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < 2; ++k) {
      if (j == split) {
        // {e1, 0} for k = 0 and {0, e2} for k = 1.
        std::vector<CVector> v(2, CVector::Zero(2));
        v[k] = basis_vector(2, static_cast<Idx>(k));
        groups[j].emplace_back(2, std::move(v));
      } else if (kind == DisjunctionKind::first_degenerate && j == 0 && k == 0) {
        const CVector line = random_cvector(rng, static_cast<Idx>(dims[j]));
        const CVector coeffs = random_cvector(rng, static_cast<Idx>(lengths[j]));
        std::vector<CVector> v;
        for (Idx n = 0; n < coeffs.size(); ++n) v.emplace_back(coeffs(n) * line);
        groups[j].emplace_back(dims[j], std::move(v));
      } else {
        groups[j].push_back(random_sequence(rng, dims[j], lengths[j]));
      }
    }
  }
  return build_minimal_sum(std::move(groups));
}

}  // namespace frameforge::instances
