// Deterministic random number utilities. All randomness in the library goes
// through these so that results are reproducible across platforms and
// independent of the standard library's distribution implementations.
#pragma once

#include <cstdint>
#include <vector>

namespace netsparse {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
    return splitmix64(seed ^ (v + kGolden + (seed << 6) + (seed >> 2)));
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return hash_combine(hash_combine(seed, a), b);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                  std::uint64_t c) {
    return hash_combine(hash_combine(seed, a, b), c);
}

// 53-bit mantissa draw in [0, 1).
inline double to_unit(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Draw in [-0.5, 0.5).
inline double to_symmetric_unit(std::uint64_t bits) { return to_unit(bits) - 0.5; }

// Sequential splitmix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += kGolden;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased integer in [0, n), n >= 1.
    std::uint64_t bounded(std::uint64_t n) {
        std::uint64_t x, r;
        do {
            x = next();
            r = x % n;
        } while (x - r > ~std::uint64_t{0} - (n - 1));
        return r;
    }

    double unit() { return to_unit(next()); }

private:
    std::uint64_t state_;
};

template <typename T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.bounded(i));
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace netsparse
