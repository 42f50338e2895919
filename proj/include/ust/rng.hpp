#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ust {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

// Deterministic random stream. Independent sub-streams are derived from
// (seed, purpose tag, index) so every trial and module draws reproducibly
// from its own stream regardless of interleaving.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(detail::splitmix64(seed)) {}

    Rng derive(std::string_view tag, std::uint64_t index = 0) const {
        std::uint64_t s = seed_;
        s = detail::splitmix64(s ^ detail::hash_tag(tag));
        s = detail::splitmix64(s ^ index);
        return Rng(s);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t u64() { return eng_(); }

    // Unbiased draw from {0, ..., n-1}. Avoids std distributions, whose
    // output is implementation-defined.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t x;
        do { x = eng_(); } while (x >= limit);
        return x % n;
    }

    int index(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    // Uniform in [0, 1) with 53-bit resolution.
    double real() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool coin(double p) { return real() < p; }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace ust
