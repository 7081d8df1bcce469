#ifndef GFDM_RNG_HPP
#define GFDM_RNG_HPP

#include <cmath>
#include <cstdint>

#include "gfdm/types.hpp"

namespace gfdm {

/// Counter-based deterministic generator. Every (key, stream) pair yields an
/// independent sequence, so Monte-Carlo blocks can be assigned to worker
/// threads in any order and still draw identical values.
class CounterRng {
  public:
    CounterRng(std::uint64_t key, std::uint64_t stream) : state_(mix(mix(key) ^ mix(stream ^ kStreamSalt))) {
        if (state_ == 0) state_ = kStreamSalt;
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix_output(state_);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (explicit so results do not depend on
    /// the standard library's distribution implementation).
    double next_gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        // Guard against log(0).
        double r = std::sqrt(-2.0 * std::log1p(-u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    /// Circularly symmetric complex Gaussian with total variance `variance`.
    cplx next_cgauss(double variance) {
        double s = std::sqrt(variance * 0.5);
        return {s * next_gauss(), s * next_gauss()};
    }

    /// Uniform integer in [0, n).
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<__uint128_t>(next_u64()) * n) >> 64);
    }

  private:
    static constexpr std::uint64_t kStreamSalt = 0xda442d24f6a5c1a7ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        return mix_output(z);
    }

    static std::uint64_t mix_output(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace gfdm

#endif
