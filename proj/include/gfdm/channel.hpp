#ifndef GFDM_CHANNEL_HPP
#define GFDM_CHANNEL_HPP

#include "gfdm/rng.hpp"
#include "gfdm/types.hpp"

namespace gfdm {

/// Multipath channel realization: L+1 taps plus the cached D-point frequency
/// response C_l = sum_n c[n] e^{-j2*pi*nl/D} (unnormalized DFT, matching the
/// circulant eigenvalue convention rather than the unitary W_D used
/// elsewhere). Immutable after construction.
struct ChannelRealization {
    CVec taps;           // length <= D
    CVec freq_response;  // length D

    static ChannelRealization from_taps(const CVec& taps, int block_size);

    int block_size() const { return static_cast<int>(freq_response.size()); }
};

/// Per-tap variances of an independent complex Gaussian tap model.
struct PowerDelayProfile {
    RVec variances;  // N^(c)_n for n = 0..L

    /// Exponential profile: N_n = 0.64^n for 0 <= n < D/4, zero after,
    /// normalized to unit total energy.
    static PowerDelayProfile exponential(int block_size);

    /// Pedestrian profile with relative powers 0, -1, -2, -3, -8, -17.2,
    /// -20.8 dB at delays 0, 3, 7, 9, 11, 19, 41, normalized.
    static PowerDelayProfile pedestrian();

    PowerDelayProfile normalized() const;
};

/// y = IDFT(C_l .* DFT(x)) + q with q circularly symmetric complex Gaussian of
/// per-sample variance n0. Circular convolution (the cyclic prefix makes the
/// physical channel act this way; equivalence is covered by tests).
CVec apply_channel(const CVec& x, const ChannelRealization& ch, double n0, CounterRng& rng);

/// Noiseless circular convolution (split out for reuse and for oracles).
CVec apply_channel_noiseless(const CVec& x, const ChannelRealization& ch);

/// Independent complex Gaussian taps with the profile's variances.
ChannelRealization sample_rayleigh(const PowerDelayProfile& pdp, int block_size, CounterRng& rng);

/// Rejection-sampled Rayleigh draw: redraw until min_l |C_l| >= 10^(db/20).
/// Gives up after 10^6 consecutive rejections. The accepted-draw count can be
/// retrieved through `rejections`.
ChannelRealization sample_dfe_rayleigh(const PowerDelayProfile& pdp, int block_size, double threshold_db,
                                       CounterRng& rng, long* rejections = nullptr);

/// Fixed four-tap test channel used by the CSI-dependent filter scenarios.
ChannelRealization builtin_static_channel(int block_size);

}  // namespace gfdm

#endif
