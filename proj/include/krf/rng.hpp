#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace krf {

/// Seeded random stream. Built on std::mt19937_64, whose output sequence is
/// fixed by the standard; the derived draws below avoid the
/// implementation-defined std distributions so results match across
/// standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t uniform_index(std::size_t n);

    /// Standard normal via Box-Muller.
    double normal();

    /// `count` distinct indices from [0, n), returned in ascending order.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

private:
    std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to derive independent per-frame seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace krf
