#ifndef GFDM_ANALYSIS_HPP
#define GFDM_ANALYSIS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gfdm/channel.hpp"
#include "gfdm/char_matrix.hpp"

namespace gfdm {

// --- Closed-form receiver MSE --------------------------------------------

/// ZF over AWGN: sigma^2 = xi_H * N0 for any invertible G; the minimum over
/// filters of fixed energy is N0 / xi_G, attained exactly by the
/// constant-magnitude class.
double zf_awgn_mse(const CharacteristicMatrix& G, double n0);
double zf_awgn_mse_min(double xi_g, double n0);

/// ZF over a static channel: sigma^2 = (N0/(K*D)) * sum_{k,l} alpha_l/|G[k,l]|^2
/// with alpha_l = sum_r 1/|C_{l+rM}|^2; minimum (N0/(K*M^2*xi_G))*(sum_l sqrt(alpha_l))^2.
double zf_static_mse(const CharacteristicMatrix& G, const ChannelRealization& ch, double n0);
double zf_static_mse_min(const GfdmParams& params, double xi_g, const ChannelRealization& ch, double n0);

/// ZF over a statistical channel with E{1/|C_l|^2} = beta for every bin:
/// sigma^2 = beta * xi_H * N0; minimum beta * N0 / xi_G.
double zf_statistical_mse(const CharacteristicMatrix& G, double beta, double n0);
double zf_statistical_mse_min(double xi_g, double beta, double n0);

/// MMSE over AWGN: sigma^2 = sum_{k,l} (N0/D) / (|G[k,l]|^2 + 1/gamma);
/// minimum Es / (gamma*xi_G + 1).
double mmse_awgn_mse(const CharacteristicMatrix& G, double gamma, double symbol_energy = 1.0);
double mmse_awgn_mse_min(double xi_g, double gamma, double symbol_energy = 1.0);

/// Monte-Carlo estimate of the conjectured MMSE-over-fading minimum
/// E{ Es / (gamma*xi_G*|C_0|^2 + 1) } with a standard-error report.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
};

McEstimate mmse_fading_mse_reference(const PowerDelayProfile& pdp, double gamma, double xi_g, long trials,
                                     std::uint64_t seed, double symbol_energy = 1.0);

// --- Spectrum -------------------------------------------------------------

/// Periodic sinc: sin(Dx/2) / (D sin(x/2)), equal to (-1)^{k(D-1)} at x = 2*pi*k.
double periodic_sinc(double x, int D);

/// Frequency response magnitude^2 of the D/A interpolation filter: a
/// sample-level raised cosine in the frequency domain, normalized to
/// |P(0)|^2 = 1, cutting off at |f·Ts| = (1+rolloff)/2.
struct InterpolationFilter {
    double rolloff = 0.1;
    double gain2(double f_times_ts) const;
};

struct SpectrumGrid {
    RVec frequencies;  // Hz, strictly increasing
    RVec psd;          // same length
    double sample_rate = 1.0;
};

/// Uniform grid with `points_per_spacing` samples per subcarrier spacing
/// 1/(K*Ts), spanning [-span_subcarriers, +span_subcarriers] spacings around
/// DC. Such grids are commensurate with the subcarrier raster, which enables
/// the FFT evaluation path.
RVec uniform_grid(int subcarriers, double sample_rate, int points_per_spacing, double span_subcarriers);

/// Analytic PSD of the transmit signal on the given frequency grid.
/// Dispatches internally: commensurate uniform grids are evaluated through
/// zero-padded FFT tables, anything else per point by direct DTFT.
SpectrumGrid psd(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                 const std::vector<int>& subsymbols, int cp_len, double sample_rate,
                 const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy = 1.0);

/// Reference paths, exposed for equivalence testing: per-point direct DTFT of
/// the windowed pulses, and the cp-free closed form via the frequency-domain
/// prototype and periodic sinc (requires cp_len == 0).
SpectrumGrid psd_direct(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                        const std::vector<int>& subsymbols, int cp_len, double sample_rate,
                        const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy = 1.0);
SpectrumGrid psd_sinc_form(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                           const std::vector<int>& subsymbols, double sample_rate,
                           const InterpolationFilter& interp, const RVec& grid_hz,
                           double symbol_energy = 1.0);

/// Frequency bands for the leakage ratio; disjoint unions of intervals in Hz.
struct BandSpec {
    std::vector<std::pair<double, double>> in_band;
    std::vector<std::pair<double, double>> out_band;
};

/// O = (|B_I|/|B_O|) * (integral_{B_O} S / integral_{B_I} S), in dB.
/// Trapezoidal integration with linear interpolation at band edges.
double oob_leakage_db(const SpectrumGrid& spectrum, const BandSpec& bands);

/// Fixed leakage comparison used by the reproduction runs: GFDM with K=128,
/// M=15, L=16, guard subsymbol 0 and subcarriers 50-78 off, against OFDM with
/// K=1920, M=1 and 1386 used subcarriers (equal block size and spectral
/// efficiency). In-band spans +-49.5 subcarrier spacings; `guard_carriers`
/// subcarriers separate it from the out-of-band region, which extends to the
/// interpolation-filter edge.
struct OobTableRow {
    std::string system;
    std::string filter;
    double oob_db;
};

std::vector<OobTableRow> oob_comparison_table(int guard_carriers, double rc_rolloff = 0.5,
                                              double interp_rolloff = 0.1);

// --- PAPR -----------------------------------------------------------------

/// Per-block peak-to-average power ratio (linear).
double papr(const CVec& block);

/// Empirical CCDF of PAPR values (dB in, fraction out).
RVec papr_ccdf(const std::vector<double>& papr_db, const RVec& thresholds_db);

// --- Arithmetic complexity table -------------------------------------------

enum class TransceiverImpl {
    Ofdm,
    Direct,
    FreqDomain,
    FreqConvolution,
    BlockCirculant,
    BlockCirculantPow2,
    ZakDomain,
    LuDecomposition,
    Form1,
    Form2,
};

enum class TransceiverStage { Transmitter, ZfReceiver, MmseReceiver };

/// Complex-multiplication count to move K*M symbols through the given
/// implementation stage under a multipath channel (log base 2). Returns
/// nullopt where the implementation does not apply. L_T and L_R are the
/// frequency-domain filter occupancies in subcarriers.
std::optional<double> complexity_cm(TransceiverImpl impl, TransceiverStage stage, int K, int M, int L_T = 2,
                                    int L_R = 16);

TransceiverImpl transceiver_impl_from_name(std::string_view name);
std::string_view transceiver_impl_name(TransceiverImpl impl);

}  // namespace gfdm

#endif
