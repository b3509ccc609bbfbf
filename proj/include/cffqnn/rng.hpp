#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cffqnn {

/// Seeded pseudo-random source with hand-rolled distributions so that a
/// given seed produces the same stream on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
        return lo + u * (hi - lo);
    }

    /// Uniform integer in [0, n), n > 0. Rejection sampling keeps it unbiased.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % n;
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

// One CLI seed drives every stage; stages draw from fixed offsets so that
// adding a stage never perturbs the others.
namespace seed_offset {
inline constexpr std::uint64_t balance = 1;
inline constexpr std::uint64_t split = 2;
inline constexpr std::uint64_t init = 3;
inline constexpr std::uint64_t frozen = 4;
}  // namespace seed_offset

}  // namespace cffqnn
