// Copyright 2026 The closedfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLOSEDFIT_RNG_HPP_
#define CLOSEDFIT_RNG_HPP_

#include <cstdint>
#include <random>

namespace closedfit {

/// SplitMix64 finalizer; used to turn (seed, index) pairs into engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for stream `index` under `master`. Distinct indices give
/// statistically independent streams; the mapping is fixed across releases.
constexpr std::uint64_t derive_seed(std::uint64_t master,
                                    std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

// Single-owner random stream. Not safe for concurrent use; move it instead.
// Every draw is computed from raw 64-bit engine output, so sequences are
// identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derive(std::uint64_t master, std::uint64_t index) {
    return RngStream(derive_seed(master, index));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (one variate per call).
  double normal();

  /// Gamma(shape, scale = 1). Marsaglia-Tsang for shape >= 1, boosted with
  /// U^(1/shape) below that.
  double gamma(double shape);

 private:
  std::mt19937_64 engine_;
};

}  // namespace closedfit

#endif  // CLOSEDFIT_RNG_HPP_
