// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace rsm {

/// SplitMix64 step; used only to derive well-mixed stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Seed for an independent replicate stream: mixes the root seed with the
/// replicate index so any parallel schedule draws identical numbers.
std::uint64_t derive_stream_seed(std::uint64_t root, std::uint64_t index);

/// Deterministic random stream. Uniforms come from explicit bit
/// manipulation of mt19937_64 output and normals from the Marsaglia polar
/// transform, so the draw sequence is fixed by the seed alone (the standard
/// library's distribution objects are not portable across implementations).
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal via the polar method (second deviate cached).
  double normal();

 private:
  std::mt19937_64 gen_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

}  // namespace rsm
