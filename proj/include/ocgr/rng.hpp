#ifndef OCGR_RNG_HPP
#define OCGR_RNG_HPP

#include <cstdint>

namespace ocgr {

/*
  Splitmix64 generator. The standard <random> distributions are
  implementation-defined, and golden test values plus byte-identical
  benchmark reports need the exact same stream on every platform, so all
  randomness in the project goes through this.
*/
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n); n must be positive. Rejection sampling keeps the
    // distribution exact.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold)
                return r % n;
        }
    }

    /// Derive an independent stream for a sub-computation.
    Rng fork(std::uint64_t salt) {
        std::uint64_t s = next_u64();
        return Rng(s ^ (salt * 0xd2b74407b1ce6e93ULL + 0x9e3779b97f4a7c15ULL));
    }

private:
    std::uint64_t state_;
};

/// Stable seed derivation for (seed, index...) tuples, used by the dataset
/// generator so each instance owns a reproducible stream.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    Rng rng(base ^ 0x5851f42d4c957f2dULL);
    std::uint64_t s = rng.next_u64();
    s ^= a * 0x9e3779b97f4a7c15ULL;
    s ^= b * 0xc2b2ae3d27d4eb4fULL;
    s ^= c * 0x165667b19e3779f9ULL;
    Rng mix(s);
    return mix.next_u64();
}

} // namespace ocgr

#endif
