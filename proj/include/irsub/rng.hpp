#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace irsub {

/// SplitMix64 finalizer; used to derive well-separated stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of an independent sub-experiment (pilot runs, one n of a sweep, ...).
constexpr std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t tag) noexcept {
    return splitmix64(master_seed + splitmix64(tag ^ 0xd1b54a32d192ed03ULL));
}

/// A deterministic random stream identified by (master seed, stream index).
///
/// Trial i of an experiment always draws from Stream(master, i), so results
/// do not depend on how trials are scheduled across workers. The engine is
/// std::mt19937_64, whose output sequence is fixed by the standard; all
/// derived draws below are implemented here rather than through the
/// implementation-defined std distributions.
class Stream {
public:
    Stream(std::uint64_t master_seed, std::uint64_t index)
        : engine_(splitmix64(master_seed ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's method).
    std::uint64_t below(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (low < threshold) {
                m = static_cast<unsigned __int128>(engine_()) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    /// Uniformly random permutation of 0..n-1.
    std::vector<std::uint32_t> permutation(std::uint32_t n) {
        std::vector<std::uint32_t> p(n);
        for (std::uint32_t i = 0; i < n; ++i) p[i] = i;
        shuffle(std::span<std::uint32_t>(p));
        return p;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace irsub
