#ifndef QIF_RNG_HPP
#define QIF_RNG_HPP

#include <cstdint>
#include <cmath>

namespace qif {

/// Deterministic 64-bit generator (splitmix64). All randomized operations in
/// the library take an explicit seed and draw through this class, so results
/// are reproducible byte-for-byte across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double u01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double u01_open() noexcept {
        return 1.0 - u01();
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept {
        return next_u64() % n;
    }

    /// Standard exponential variate.
    double exponential() noexcept {
        return -std::log(u01_open());
    }

private:
    std::uint64_t state_;
};

} // namespace qif

#endif
