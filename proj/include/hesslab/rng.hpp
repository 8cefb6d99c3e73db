#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

#include "hesslab/point.hpp"

namespace hesslab {

// SplitMix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based sample source: every variate is a pure function of
// (seed, stream, counter, slot), so estimates are bit-identical regardless
// of batch partitioning or evaluation order.
struct CounterRng {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    std::uint64_t bits(std::uint64_t counter, std::uint32_t slot) const {
        std::uint64_t x = mix64(seed ^ 0x6a09e667f3bcc909ULL);
        x = mix64(x ^ stream);
        x = mix64(x ^ counter);
        return mix64(x ^ slot);
    }

    // uniform in (0, 1)
    double uniform(std::uint64_t counter, std::uint32_t slot) const {
        const std::uint64_t b = bits(counter, slot);
        return (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal, one per slot (two uniforms each)
    double gaussian(std::uint64_t counter, std::uint32_t slot) const {
        const double u1 = uniform(counter, 2 * slot);
        const double u2 = uniform(counter, 2 * slot + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    void fill_gaussian(std::uint64_t counter, std::span<double> out,
                       std::uint32_t slot0 = 0) const {
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = gaussian(counter, slot0 + static_cast<std::uint32_t>(j));
    }
};

// Direction on the unit sphere of R^{2l} from 2l gaussians.
inline void unit_direction(const CounterRng& rng, std::uint64_t counter,
                           std::uint32_t gslot0, std::span<cplx> out) {
    double norm2 = 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double re = rng.gaussian(counter, gslot0 + static_cast<std::uint32_t>(2 * j));
        const double im = rng.gaussian(counter, gslot0 + static_cast<std::uint32_t>(2 * j + 1));
        out[j] = cplx(re, im);
        norm2 += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& c : out) c *= inv;
}

// Fixed stream tags so different estimators draw decorrelated variates from
// the same user seed.
namespace streams {
inline constexpr std::uint64_t sphere = 0x5350484552455331ULL;
inline constexpr std::uint64_t ball = 0x42414c4c4d45414eULL;
inline constexpr std::uint64_t mass = 0x4d4153534553544dULL;
inline constexpr std::uint64_t integrability = 0x494e544547524142ULL;
inline constexpr std::uint64_t scan = 0x5343414e504f494eULL;
}  // namespace streams

}  // namespace hesslab
