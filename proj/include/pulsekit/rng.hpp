// Copyright 2026 The pulsekit Authors.
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

namespace pulsekit {

/// SplitMix64: a small counter-based generator with a fully specified update,
/// so a given seed reproduces the same stream on every platform and compiler.
/// All randomness in the toolkit flows through this generator; the standard
/// library distributions are avoided because their output is
/// implementation-defined.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    /// Derive a decorrelated child seed for stream `index`. Used to give every
    /// sample of a sweep its own generator, so results do not depend on the
    /// order (or thread) in which samples are evaluated.
    static std::uint64_t stream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 a(seed);
        SplitMix64 b(index ^ 0xA3EC4F1D9C2B5E77ULL);
        return a.next() ^ b.next();
    }

  private:
    std::uint64_t state_;
};

} // namespace pulsekit
