#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace misr {

// Portable draws on top of mt19937_64. The standard distributions are
// implementation-defined, which would break byte-identical artifacts.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform integer in [lo, hi].
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(eng_());
        return lo + static_cast<std::int64_t>(eng_() % span);
    }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // True with probability num/den (clamped to [0,1]).
    bool bernoulli(std::int64_t num, std::int64_t den) {
        if (num >= den) return true;
        if (num <= 0) return false;
        return uniform(0, den - 1) < num;
    }

    template <class It>
    void shuffle(It first, It last) {
        auto n = last - first;
        for (auto i = n - 1; i > 0; --i) {
            auto j = uniform(0, i);
            std::swap(first[i], first[j]);
        }
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable sub-seed for (base seed, tag, trial index).
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t trial) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return splitmix64(splitmix64(base ^ h) + trial);
}

}  // namespace misr
