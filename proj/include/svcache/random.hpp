// Copyright 2026 The svcache Authors
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

#ifndef SVCACHE_RANDOM_HPP
#define SVCACHE_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace svcache {

// SplitMix64 finalizer, used only to derive well-mixed seeds.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Counter-based substream derivation: substream k of a base seed is
// independent of how many draws other substreams consumed.
inline std::uint64_t substream_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(base_seed ^ splitmix64(index));
}

// Seedable random stream with explicit, platform-independent mappings
// from raw 64-bit output to doubles. No global state anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Inverse-CDF exponential draw with the given mean. next_double() < 1
  // keeps log1p finite.
  double exponential(double mean) { return -mean * std::log1p(-next_double()); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace svcache

#endif  // SVCACHE_RANDOM_HPP
