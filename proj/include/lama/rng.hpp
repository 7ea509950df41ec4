#pragma once

#include <cstdint>
#include <random>

namespace lama {

/// Deterministic pseudo-random stream.
///
/// The generator is std::mt19937_64, whose output sequence is fully pinned by
/// the C++ standard, and both draw mappings below avoid the (implementation
/// defined) standard distributions. Equal seeds therefore reproduce the same
/// draw sequence on every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1): top 53 bits of one engine draw.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n): multiply-shift reduction of one engine draw.
    std::size_t below(std::size_t n) {
        const unsigned __int128 wide =
            static_cast<unsigned __int128>(engine_()) * static_cast<unsigned __int128>(n);
        return static_cast<std::size_t>(wide >> 64);
    }

    std::uint64_t next_word() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace lama
