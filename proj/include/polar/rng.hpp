#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace polar {

/// splitmix64 stream; used instead of <random> engines so that seeded output
/// is identical across platforms and standard library implementations.
struct Rng {
    uint64_t state;

    explicit Rng(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) by rejection.
    uint64_t below(uint64_t n) {
        if (n == 0) return 0;
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
};

inline uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    Rng r(seed ^ (0x8c98'562a'9f4b'3c17ULL * (stream + 1)));
    return r.next();
}

} // namespace polar
