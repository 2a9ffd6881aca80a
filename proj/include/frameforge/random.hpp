#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "frameforge/hilbert.hpp"

namespace frameforge {

/// splitmix64 finalizer; used to derive independent per-stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for the named stream of a master seed. Streams do not depend on the
/// order in which they are requested.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view stream) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : stream) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return splitmix64(master ^ splitmix64(h));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

using Rng = std::mt19937_64;

/// Entries with independent standard normal real and imaginary parts.
CVector random_cvector(Rng& rng, Eigen::Index dim);
COperator random_coperator(Rng& rng, Eigen::Index rows, Eigen::Index cols);
CVector random_unit_cvector(Rng& rng, Eigen::Index dim);

}  // namespace frameforge
