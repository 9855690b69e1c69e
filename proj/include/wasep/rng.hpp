#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace wasep {

/// SplitMix64 finalizer. Used to expand seeds and to derive replica seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of replica `index` in an ensemble driven by `master_seed`:
///
///     replica_seed = splitmix64(master_seed ^ splitmix64(index))
///
/// The mix is part of the reproducibility contract; its values are pinned by
/// unit tests and must not change.
constexpr std::uint64_t replica_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return splitmix64(master_seed ^ splitmix64(index));
}

/// xoshiro256** with portable, hand-written distributions so that a seed
/// gives bit-identical streams on every platform (std:: distributions are
/// implementation-defined).
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0) noexcept { reseed(seed); }

    void reseed(std::uint64_t seed) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next(); }

    result_type next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), unbiased (Lemire's multiply-and-reject).
    std::uint64_t below(std::uint64_t bound) noexcept {
        __extension__ using u128 = unsigned __int128;
        u128 m = static_cast<u128>(next()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                m = static_cast<u128>(next()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    bool bernoulli(double p) noexcept { return uniform() < p; }

    /// Standard normal (Marsaglia polar method; the spare variate is cached).
    double normal() noexcept;

    double exponential() noexcept;

    /// Poisson variate. Inversion by multiplication for small means,
    /// Hormann's transformed rejection (PTRS) otherwise. Exact in both cases.
    std::int64_t poisson(double mean) noexcept;

    const std::array<std::uint64_t, 4>& state() const noexcept { return s_; }

    friend bool operator==(const Rng& a, const Rng& b) noexcept {
        return a.s_ == b.s_ && a.has_spare_ == b.has_spare_ && a.spare_ == b.spare_;
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> s_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace wasep
