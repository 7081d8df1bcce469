#include "gfdm/qam.hpp"

#include <cmath>
#include <stdexcept>

namespace gfdm {

namespace {

// Per-axis Gray code: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (16QAM).
constexpr double k16Levels[4] = {-3.0, -1.0, 1.0, 3.0};
constexpr int k16GrayToIndex[4] = {0, 1, 3, 2};   // bits -> level index
constexpr int k16IndexToGray[4] = {0, 1, 3, 2};   // level index -> bits (self-inverse)

double axis16(int two_bits) { return k16Levels[k16GrayToIndex[two_bits]]; }

int slice16(double v) {
    if (v < -2.0) return 0;
    if (v < 0.0) return 1;
    if (v < 2.0) return 2;
    return 3;
}

const double k16Scale = 1.0 / std::sqrt(10.0);  // unit average energy
const double k4Scale = 1.0 / std::sqrt(2.0);

}  // namespace

int bits_per_symbol(Constellation c) { return c == Constellation::Qam16 ? 4 : 2; }

CVec qam_map(const std::vector<std::uint8_t>& bits, Constellation c) {
    const int bps = bits_per_symbol(c);
    if (bits.size() % bps != 0) throw std::invalid_argument("qam_map: bit count not divisible by bits/symbol");
    const long n = static_cast<long>(bits.size()) / bps;
    CVec out(n);
    for (long i = 0; i < n; ++i) {
        const std::uint8_t* b = bits.data() + i * bps;
        if (c == Constellation::Qam16) {
            double re = axis16((b[0] << 1) | b[1]);
            double im = axis16((b[2] << 1) | b[3]);
            out[i] = k16Scale * cplx(re, im);
        } else {
            out[i] = k4Scale * cplx(b[0] ? 1.0 : -1.0, b[1] ? 1.0 : -1.0);
        }
    }
    return out;
}

std::vector<std::uint8_t> qam_demap(const CVec& symbols, Constellation c) {
    const int bps = bits_per_symbol(c);
    std::vector<std::uint8_t> bits(symbols.size() * bps);
    for (long i = 0; i < symbols.size(); ++i) {
        std::uint8_t* b = bits.data() + i * bps;
        if (c == Constellation::Qam16) {
            int gi = k16IndexToGray[slice16(symbols[i].real() / k16Scale)];
            int gq = k16IndexToGray[slice16(symbols[i].imag() / k16Scale)];
            b[0] = (gi >> 1) & 1;
            b[1] = gi & 1;
            b[2] = (gq >> 1) & 1;
            b[3] = gq & 1;
        } else {
            b[0] = symbols[i].real() >= 0.0 ? 1 : 0;
            b[1] = symbols[i].imag() >= 0.0 ? 1 : 0;
        }
    }
    return bits;
}

Eigen::VectorXi qam_hard_indices(const CVec& estimates, Constellation c) {
    Eigen::VectorXi out(estimates.size());
    for (long i = 0; i < estimates.size(); ++i) {
        if (c == Constellation::Qam16) {
            out[i] = 4 * slice16(estimates[i].real() / k16Scale) + slice16(estimates[i].imag() / k16Scale);
        } else {
            out[i] = 2 * (estimates[i].real() >= 0.0 ? 1 : 0) + (estimates[i].imag() >= 0.0 ? 1 : 0);
        }
    }
    return out;
}

CVec qam_slice(const CVec& estimates, Constellation c) {
    CVec out(estimates.size());
    for (long i = 0; i < estimates.size(); ++i) {
        if (c == Constellation::Qam16) {
            double re = k16Levels[slice16(estimates[i].real() / k16Scale)];
            double im = k16Levels[slice16(estimates[i].imag() / k16Scale)];
            out[i] = k16Scale * cplx(re, im);
        } else {
            out[i] = k4Scale * cplx(estimates[i].real() >= 0.0 ? 1.0 : -1.0,
                                    estimates[i].imag() >= 0.0 ? 1.0 : -1.0);
        }
    }
    return out;
}

}  // namespace gfdm
