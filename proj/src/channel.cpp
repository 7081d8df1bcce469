#include "gfdm/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gfdm/fft.hpp"
#include "gfdm/kernels.hpp"

namespace gfdm {

ChannelRealization ChannelRealization::from_taps(const CVec& taps, int block_size) {
    if (taps.size() < 1 || taps.size() > block_size) {
        throw std::invalid_argument("ChannelRealization: tap count " + std::to_string(taps.size()) +
                                    " out of range for D=" + std::to_string(block_size));
    }
    CVec freq = CVec::Zero(block_size);
    freq.head(taps.size()) = taps;
    fft::dft_unnormalized(freq.data(), block_size);
    return ChannelRealization{taps, std::move(freq)};
}

PowerDelayProfile PowerDelayProfile::exponential(int block_size) {
    int len = std::max(1, block_size / 4);
    RVec v(len);
    for (int n = 0; n < len; ++n) v[n] = std::pow(0.64, n);
    return PowerDelayProfile{v}.normalized();
}

PowerDelayProfile PowerDelayProfile::pedestrian() {
    const int delays[] = {0, 3, 7, 9, 11, 19, 41};
    const double powers_db[] = {0.0, -1.0, -2.0, -3.0, -8.0, -17.2, -20.8};
    RVec v = RVec::Zero(42);
    for (int i = 0; i < 7; ++i) v[delays[i]] = std::pow(10.0, powers_db[i] / 10.0);
    return PowerDelayProfile{v}.normalized();
}

PowerDelayProfile PowerDelayProfile::normalized() const {
    double total = variances.sum();
    if (total <= 0.0) throw std::invalid_argument("PowerDelayProfile: zero total energy");
    return PowerDelayProfile{variances / total};
}

CVec apply_channel_noiseless(const CVec& x, const ChannelRealization& ch) {
    const int D = ch.block_size();
    if (x.size() != D) throw std::invalid_argument("apply_channel: block length mismatch");
    CVec y = x;
    fft::dft(y.data(), D);
    kernels::cmul(y.data(), y.data(), ch.freq_response.data(), D);
    fft::idft(y.data(), D);
    return y;
}

CVec apply_channel(const CVec& x, const ChannelRealization& ch, double n0, CounterRng& rng) {
    if (n0 < 0.0) throw std::invalid_argument("apply_channel: negative noise variance");
    CVec y = apply_channel_noiseless(x, ch);
    if (n0 > 0.0) {
        for (int n = 0; n < y.size(); ++n) y[n] += rng.next_cgauss(n0);
    }
    return y;
}

ChannelRealization sample_rayleigh(const PowerDelayProfile& pdp, int block_size, CounterRng& rng) {
    if (pdp.variances.size() > block_size) {
        throw std::invalid_argument("sample_rayleigh: profile longer than block size");
    }
    CVec taps(pdp.variances.size());
    for (int n = 0; n < taps.size(); ++n) {
        taps[n] = pdp.variances[n] > 0.0 ? rng.next_cgauss(pdp.variances[n]) : cplx(0.0, 0.0);
    }
    return ChannelRealization::from_taps(taps, block_size);
}

ChannelRealization sample_dfe_rayleigh(const PowerDelayProfile& pdp, int block_size, double threshold_db,
                                       CounterRng& rng, long* rejections) {
    const double floor_mag = std::pow(10.0, threshold_db / 20.0);
    long rejected = 0;
    for (;;) {
        ChannelRealization ch = sample_rayleigh(pdp, block_size, rng);
        double min_mag = ch.freq_response.cwiseAbs().minCoeff();
        if (min_mag >= floor_mag) {
            if (rejections) *rejections = rejected;
            return ch;
        }
        if (++rejected > 1000000) {
            throw std::runtime_error("sample_dfe_rayleigh: rejection threshold " +
                                     std::to_string(threshold_db) + " dB rejected 10^6 draws in a row");
        }
    }
}

ChannelRealization builtin_static_channel(int block_size) {
    CVec taps(4);
    taps << cplx(-0.1518, 0.6475), cplx(0.2701, 0.3063), cplx(0.5703, 0.0767), cplx(-0.0900, 0.2274);
    return ChannelRealization::from_taps(taps, block_size);
}

}  // namespace gfdm
