#ifndef LTFSK_RNG_HPP
#define LTFSK_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace ltfsk {

// splitmix64 finalizer; used wherever independent streams are derived from one
// base seed so that results do not depend on execution schedule.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ (a + 0xA24BAED4963EE407ULL));
    s = mix64(s ^ (b + 0x9FB21C651E98DF25ULL));
    s = mix64(s ^ (c + 0xD6E8FEB86659FD93ULL));
    return s;
}

// mt19937_64 engine with hand-rolled sampling on top. The standard pins the
// engine output sequence but not the distribution adaptors, so the adaptors
// live here to keep seeded runs byte-identical across toolchains.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform double in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // unbiased integer in [0, n), n >= 1 (rejection on the top of the range)
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    double exponential(double mean) { return -mean * std::log1p(-next_unit()); }

  private:
    std::mt19937_64 eng_;
};

} // namespace ltfsk

#endif
