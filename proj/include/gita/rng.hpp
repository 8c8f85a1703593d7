// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace gita {

/// Seeded random source with platform-independent draws.
///
/// std::mt19937_64 is fully specified by the standard, but the distribution
/// classes are not; every mapping from raw engine output to a value is done
/// here so that a seed produces the same graphs with any standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [lo, hi] (inclusive), rejection-sampled.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double p) { return p >= 1.0 || (p > 0.0 && uniform01() < p); }

    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(items[i - 1], items[j]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed and a string key.
std::uint64_t derive_seed(std::uint64_t base, std::string_view key);

}  // namespace gita
