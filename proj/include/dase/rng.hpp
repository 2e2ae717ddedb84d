// Copyright 2026 The DASE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace dase {

using Seed = std::uint64_t;

/// SplitMix64 finalizer. Used to derive statistically independent stream
/// seeds from a master seed and a counter.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of stream (tag, index) under `master`. The result depends only on
/// the three inputs, so replicate i draws the same numbers regardless of the
/// order or thread it runs on.
constexpr Seed derive_seed(Seed master, std::uint64_t tag,
                           std::uint64_t index = 0) noexcept {
  return mix64(mix64(mix64(master) ^ tag) + index);
}

// Stream tags. Kept distinct so no two kinds of draw in a replicate share a
// stream.
namespace stream {
inline constexpr std::uint64_t assignment = 0x61737367;
inline constexpr std::uint64_t graph = 0x67726170;
inline constexpr std::uint64_t embedding = 0x656d6264;
inline constexpr std::uint64_t clustering = 0x636c7573;
inline constexpr std::uint64_t restart = 0x72737472;
inline constexpr std::uint64_t reference = 0x72656666;
inline constexpr std::uint64_t replicate = 0x7265706c;
}  // namespace stream

/// Thin wrapper over mt19937_64 with portable floating-point draws
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(mix64(seed)) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    // Lemire-free rejection; n is small in every call site.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Standard normal via Box-Muller (the spare value is discarded so the
  /// stream position depends only on the call count).
  double normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dase
