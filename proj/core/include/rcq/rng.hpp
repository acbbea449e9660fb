#pragma once

#include <cstdint>

namespace rcq {

/// Deterministic xoshiro256** generator with SplitMix64-derived state.
///
/// Substreams are derived counter-style from (seed, stream), so trial i of a
/// run can be simulated independently of trial j and in any order while
/// producing exactly the bits a serial sweep would. All sampling in the
/// library goes through this class; none of it touches <random>, whose
/// distributions are not bit-stable across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : Rng(seed, 0) {}
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next_u64();

  /// Uniform integer in [0, bound). bound must be nonzero.
  std::uint64_t bounded(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (consumes two uniforms per pair).
  double normal();

private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// SplitMix64 mixing step, exposed for hashing-style uses (config hashes,
/// substream derivation).
std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace rcq
