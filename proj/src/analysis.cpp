#include "gfdm/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gfdm/fft.hpp"
#include "gfdm/filters.hpp"
#include "gfdm/kernels.hpp"
#include "gfdm/rng.hpp"

namespace gfdm {

// --- Closed-form receiver MSE ----------------------------------------------

double zf_awgn_mse(const CharacteristicMatrix& G, double n0) { return receiver_energy(G) * n0; }

double zf_awgn_mse_min(double xi_g, double n0) { return n0 / xi_g; }

double zf_static_mse(const CharacteristicMatrix& G, const ChannelRealization& ch, double n0) {
    const int K = G.K(), M = G.M(), D = G.D();
    if (ch.block_size() != D) throw std::invalid_argument("zf_static_mse: channel block size mismatch");
    detail::require_invertible(G, Tolerance{});
    double acc = 0.0;
    for (int l = 0; l < M; ++l) {
        double alpha = 0.0;
        for (int r = 0; r < K; ++r) {
            double c2 = std::norm(ch.freq_response[l + r * M]);
            if (c2 <= 0.0) throw std::invalid_argument("zf_static_mse: channel null at bin " +
                                                       std::to_string(l + r * M));
            alpha += 1.0 / c2;
        }
        for (int k = 0; k < K; ++k) acc += alpha / std::norm(G.entries(k, l));
    }
    return n0 * acc / (static_cast<double>(K) * D);
}

double zf_static_mse_min(const GfdmParams& params, double xi_g, const ChannelRealization& ch, double n0) {
    const int K = params.subcarriers, M = params.subsymbols;
    double sum_sqrt = 0.0;
    for (int l = 0; l < M; ++l) {
        double alpha = 0.0;
        for (int r = 0; r < K; ++r) {
            double c2 = std::norm(ch.freq_response[l + r * M]);
            if (c2 <= 0.0) throw std::invalid_argument("zf_static_mse_min: channel null at bin " +
                                                       std::to_string(l + r * M));
            alpha += 1.0 / c2;
        }
        sum_sqrt += std::sqrt(alpha);
    }
    return sum_sqrt * sum_sqrt * n0 / (static_cast<double>(K) * M * M * xi_g);
}

double zf_statistical_mse(const CharacteristicMatrix& G, double beta, double n0) {
    return beta * receiver_energy(G) * n0;
}

double zf_statistical_mse_min(double xi_g, double beta, double n0) { return beta * n0 / xi_g; }

double mmse_awgn_mse(const CharacteristicMatrix& G, double gamma, double symbol_energy) {
    if (gamma <= 0.0) throw std::invalid_argument("mmse_awgn_mse: gamma must be positive");
    const int D = G.D();
    double n0 = symbol_energy / gamma;
    double acc = 0.0;
    for (int m = 0; m < G.M(); ++m)
        for (int k = 0; k < G.K(); ++k) acc += (n0 / D) / (std::norm(G.entries(k, m)) + 1.0 / gamma);
    return acc;
}

double mmse_awgn_mse_min(double xi_g, double gamma, double symbol_energy) {
    return symbol_energy / (gamma * xi_g + 1.0);
}

McEstimate mmse_fading_mse_reference(const PowerDelayProfile& pdp, double gamma, double xi_g, long trials,
                                     std::uint64_t seed, double symbol_energy) {
    if (trials < 1) throw std::invalid_argument("mmse_fading_mse_reference: trials must be >= 1");
    double sum = 0.0, sum_sq = 0.0;
    for (long t = 0; t < trials; ++t) {
        CounterRng rng(seed, static_cast<std::uint64_t>(t));
        cplx c0(0.0, 0.0);
        for (int n = 0; n < pdp.variances.size(); ++n) {
            if (pdp.variances[n] > 0.0) c0 += rng.next_cgauss(pdp.variances[n]);
        }
        double v = symbol_energy / (gamma * xi_g * std::norm(c0) + 1.0);
        sum += v;
        sum_sq += v * v;
    }
    double mean = sum / trials;
    double var = std::max(0.0, sum_sq / trials - mean * mean);
    double se = trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0;
    return McEstimate{mean, se};
}

// --- Spectrum ----------------------------------------------------------------

double periodic_sinc(double x, int D) {
    double k = std::round(x / (2.0 * M_PI));
    double r = x - 2.0 * M_PI * k;
    long kl = static_cast<long>(k);
    double sign = (kl * static_cast<long>(D - 1)) % 2 == 0 ? 1.0 : -1.0;
    if (std::abs(r) < 1e-12) return sign;
    return sign * std::sin(0.5 * D * r) / (D * std::sin(0.5 * r));
}

double InterpolationFilter::gain2(double f_times_ts) const {
    double f = std::abs(f_times_ts);
    double lo = 0.5 * (1.0 - rolloff);
    double hi = 0.5 * (1.0 + rolloff);
    if (f <= lo) return 1.0;
    if (f >= hi || rolloff <= 0.0) return 0.0;
    double p = 0.5 * (1.0 + std::cos(M_PI / rolloff * (f - lo)));
    return p * p;
}

namespace {

// Windowed circular shifts of the prototype: gm[n] = g[(n - m*K - L) mod D]
// for n = 0..D+L-1.
std::vector<CVec> windowed_pulses(const PrototypeFilter& g, const std::vector<int>& subsymbols,
                                  int cp_len) {
    const int K = g.params.subcarriers, D = g.params.block_size();
    const int Dp = D + cp_len;
    std::vector<CVec> out;
    out.reserve(subsymbols.size());
    for (int m : subsymbols) {
        CVec gm(Dp);
        for (int n = 0; n < Dp; ++n) {
            int idx = (n - m * K - cp_len) % D;
            if (idx < 0) idx += D;
            gm[n] = g.taps[idx];
        }
        out.push_back(std::move(gm));
    }
    return out;
}

void check_psd_args(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                    const std::vector<int>& subsymbols, int cp_len, double sample_rate) {
    if (subcarriers.empty() || subsymbols.empty()) {
        throw std::invalid_argument("psd: active subcarrier and subsymbol sets must be nonempty");
    }
    const int K = g.params.subcarriers, M = g.params.subsymbols;
    for (int k : subcarriers)
        if (k < 0 || k >= K) throw std::invalid_argument("psd: subcarrier index out of range");
    for (int m : subsymbols)
        if (m < 0 || m >= M) throw std::invalid_argument("psd: subsymbol index out of range");
    if (cp_len < 0 || cp_len > g.params.block_size()) throw std::invalid_argument("psd: cp length out of range");
    if (sample_rate <= 0.0) throw std::invalid_argument("psd: sample rate must be positive");
}

struct MasterGrid {
    int denom = 0;            // Q: master points per sample-rate interval
    std::vector<long> index;  // per grid point, round(f*Ts*Q)
};

// A grid is FFT-friendly when all frequencies sit on a common raster i/(Q*Ts)
// with K | Q and Q large enough to hold the windowed pulse.
std::optional<MasterGrid> detect_master_grid(const RVec& grid_hz, double sample_rate, int K, int min_len) {
    const int n = static_cast<int>(grid_hz.size());
    if (n < 2) return std::nullopt;
    double ts = 1.0 / sample_rate;
    double step = (grid_hz[1] - grid_hz[0]) * ts;
    if (step <= 0.0) return std::nullopt;
    double q_real = 1.0 / step;
    double q_round = std::round(q_real);
    if (q_round < 1.0 || q_round > double(1 << 22)) return std::nullopt;
    if (std::abs(q_real - q_round) > 1e-6 * q_real) return std::nullopt;
    long q = static_cast<long>(q_round);
    // Pad to satisfy the divisibility and length requirements.
    long Q = q;
    while (Q % K != 0 || Q < min_len) {
        Q += q;
        if (Q > (1L << 22)) return std::nullopt;
    }
    if (Q % q != 0) return std::nullopt;
    long mult = Q / q;
    MasterGrid mg;
    mg.denom = static_cast<int>(Q);
    mg.index.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = grid_hz[i] * ts * static_cast<double>(q);
        double xr = std::round(x);
        if (std::abs(x - xr) > 1e-6) return std::nullopt;
        mg.index[i] = static_cast<long>(xr) * mult;
    }
    return mg;
}

SpectrumGrid assemble(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                      const std::vector<int>& subsymbols, int cp_len, double sample_rate,
                      const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy,
                      const MasterGrid* master) {
    const int K = g.params.subcarriers, D = g.params.block_size();
    const int Dp = D + cp_len;
    const double ts = 1.0 / sample_rate;
    std::vector<CVec> pulses = windowed_pulses(g, subsymbols, cp_len);
    const int n = static_cast<int>(grid_hz.size());
    RVec out(n);

    if (master) {
        const int Q = master->denom;
        // |G_m|^2 tables on the master raster, pre-summed over subsymbols.
        RVec table = RVec::Zero(Q);
        CVec padded(Q);
        RVec mags(Q);
        for (const CVec& gm : pulses) {
            padded.setZero();
            padded.head(Dp) = gm;
            fft::dft_unnormalized(padded.data(), Q);
            kernels::abs2(mags.data(), padded.data(), Q);
            table += mags;
        }
        const long offs = Q / K;
        for (int i = 0; i < n; ++i) {
            long base = master->index[i] % Q;
            if (base < 0) base += Q;
            double acc = 0.0;
            for (int k : subcarriers) {
                long j = (base - offs * k) % Q;
                if (j < 0) j += Q;
                acc += table[j];
            }
            out[i] = acc;
        }
    } else {
        for (int i = 0; i < n; ++i) {
            double acc = 0.0;
            for (int k : subcarriers) {
                double omega = 2.0 * M_PI * (grid_hz[i] * ts - static_cast<double>(k) / K);
                cplx rot(std::cos(-omega), std::sin(-omega));
                for (const CVec& gm : pulses) {
                    cplx sum(0.0, 0.0), w(1.0, 0.0);
                    for (int nn = 0; nn < Dp; ++nn) {
                        sum += gm[nn] * w;
                        w *= rot;
                    }
                    acc += std::norm(sum);
                }
            }
            out[i] = acc;
        }
    }

    for (int i = 0; i < n; ++i) {
        out[i] *= symbol_energy * interp.gain2(grid_hz[i] * ts) / (Dp * ts);
    }
    return SpectrumGrid{grid_hz, std::move(out), sample_rate};
}

}  // namespace

RVec uniform_grid(int subcarriers, double sample_rate, int points_per_spacing, double span_subcarriers) {
    if (points_per_spacing < 1) throw std::invalid_argument("uniform_grid: need at least one point per spacing");
    long half = static_cast<long>(std::round(span_subcarriers * points_per_spacing));
    double step = sample_rate / (static_cast<double>(subcarriers) * points_per_spacing);
    RVec f(2 * half + 1);
    for (long i = -half; i <= half; ++i) f[i + half] = static_cast<double>(i) * step;
    return f;
}

SpectrumGrid psd(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                 const std::vector<int>& subsymbols, int cp_len, double sample_rate,
                 const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy) {
    check_psd_args(g, subcarriers, subsymbols, cp_len, sample_rate);
    auto master = detect_master_grid(grid_hz, sample_rate, g.params.subcarriers,
                                     g.params.block_size() + cp_len);
    return assemble(g, subcarriers, subsymbols, cp_len, sample_rate, interp, grid_hz, symbol_energy,
                    master ? &*master : nullptr);
}

SpectrumGrid psd_direct(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                        const std::vector<int>& subsymbols, int cp_len, double sample_rate,
                        const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy) {
    check_psd_args(g, subcarriers, subsymbols, cp_len, sample_rate);
    return assemble(g, subcarriers, subsymbols, cp_len, sample_rate, interp, grid_hz, symbol_energy,
                    nullptr);
}

SpectrumGrid psd_sinc_form(const PrototypeFilter& g, const std::vector<int>& subcarriers,
                           const std::vector<int>& subsymbols, double sample_rate,
                           const InterpolationFilter& interp, const RVec& grid_hz, double symbol_energy) {
    check_psd_args(g, subcarriers, subsymbols, 0, sample_rate);
    const int K = g.params.subcarriers, M = g.params.subsymbols, D = g.params.block_size();
    const double ts = 1.0 / sample_rate;
    CVec g_f = freq_from_char(char_from_time(g));
    const int n = static_cast<int>(grid_hz.size());
    RVec out(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int k : subcarriers) {
            double omega = 2.0 * M_PI * (grid_hz[i] * ts - static_cast<double>(k) / K);
            for (int m : subsymbols) {
                cplx sum(0.0, 0.0);
                for (int l = 0; l < D; ++l) {
                    double wl = omega - 2.0 * M_PI * l / D;
                    double phase_m = -2.0 * M_PI * static_cast<double>(l) * m / M;
                    double phase_w = -wl * 0.5 * (D - 1);
                    sum += g_f[l] * periodic_sinc(wl, D) *
                           cplx(std::cos(phase_m + phase_w), std::sin(phase_m + phase_w));
                }
                acc += std::norm(sum);
            }
        }
        out[i] = acc * symbol_energy * interp.gain2(grid_hz[i] * ts) / (D * ts);
    }
    return SpectrumGrid{grid_hz, std::move(out), sample_rate};
}

namespace {

double integrate_band(const SpectrumGrid& s, double a, double b) {
    const RVec& f = s.frequencies;
    const RVec& p = s.psd;
    const int n = static_cast<int>(f.size());
    if (a >= b) return 0.0;
    if (a < f[0] - 1e-12 || b > f[n - 1] + 1e-12) {
        throw std::invalid_argument("oob_leakage: band [" + std::to_string(a) + ", " + std::to_string(b) +
                                    "] not covered by the spectrum grid");
    }
    auto value_at = [&](double x, int hint) {
        int i = hint;
        while (i + 1 < n && f[i + 1] < x) ++i;
        if (i + 1 >= n) return p[n - 1];
        double t = (x - f[i]) / (f[i + 1] - f[i]);
        return (1.0 - t) * p[i] + t * p[i + 1];
    };
    // locate first grid point >= a
    int lo = 0;
    while (lo < n && f[lo] < a) ++lo;
    int hi = n - 1;
    while (hi >= 0 && f[hi] > b) --hi;
    double acc = 0.0;
    if (lo > hi) {  // band falls between two grid points
        double pa = value_at(a, std::max(0, lo - 1));
        double pb = value_at(b, std::max(0, lo - 1));
        return 0.5 * (pa + pb) * (b - a);
    }
    if (f[lo] > a) {
        double pa = value_at(a, std::max(0, lo - 1));
        acc += 0.5 * (pa + p[lo]) * (f[lo] - a);
    }
    for (int i = lo; i < hi; ++i) acc += 0.5 * (p[i] + p[i + 1]) * (f[i + 1] - f[i]);
    if (f[hi] < b) {
        double pb = value_at(b, hi);
        acc += 0.5 * (p[hi] + pb) * (b - f[hi]);
    }
    return acc;
}

}  // namespace

double oob_leakage_db(const SpectrumGrid& spectrum, const BandSpec& bands) {
    double in_energy = 0.0, out_energy = 0.0, in_len = 0.0, out_len = 0.0;
    for (auto [a, b] : bands.in_band) {
        in_energy += integrate_band(spectrum, a, b);
        in_len += b - a;
    }
    for (auto [a, b] : bands.out_band) {
        out_energy += integrate_band(spectrum, a, b);
        out_len += b - a;
    }
    if (in_len <= 0.0 || out_len <= 0.0) throw std::invalid_argument("oob_leakage: empty band");
    if (in_energy <= 0.0) throw std::invalid_argument("oob_leakage: zero in-band energy");
    double ratio = (in_len / out_len) * (out_energy / in_energy);
    return 10.0 * std::log10(ratio);
}

std::vector<OobTableRow> oob_comparison_table(int guard_carriers, double rc_rolloff,
                                              double interp_rolloff) {
    const int K = 128, M = 15, L = 16;
    const double fs = 1.92e6, ts = 1.0 / fs;
    const double sub = fs / 128.0;  // GFDM subcarrier spacing

    BandSpec bands;
    bands.in_band = {{-49.5 * sub, 49.5 * sub}};
    double edge = 64.0 * (1.0 + interp_rolloff) * sub;
    bands.out_band = {{-edge, -(49.5 + guard_carriers) * sub}, {(49.5 + guard_carriers) * sub, edge}};

    // 240 master points per GFDM subcarrier spacing = 16 per OFDM spacing;
    // all band edges land exactly on this raster.
    RVec grid = uniform_grid(K, fs, 240, 0.5 * (1.0 + interp_rolloff) * K);
    InterpolationFilter interp{interp_rolloff};
    (void)ts;

    std::vector<int> kset;
    for (int k = 0; k < K; ++k)
        if (k < 50 || k > 78) kset.push_back(k);
    std::vector<int> mset;
    for (int m = 1; m < M; ++m) mset.push_back(m);

    std::vector<OobTableRow> rows;
    {
        GfdmParams ofdm(1920, 1);
        PrototypeFilter g = time_from_char(make_filter({FilterKind::Rectangular}, ofdm));
        std::vector<int> used;
        for (int k = 0; k <= 692; ++k) used.push_back(k);
        for (int k = 1920 - 693; k < 1920; ++k) used.push_back(k);
        SpectrumGrid s = psd(g, used, {0}, L, fs, interp, grid);
        rows.push_back({"ofdm", "rect", oob_leakage_db(s, bands)});
    }
    GfdmParams gfdm(K, M);
    for (FilterKind kind : {FilterKind::Dirichlet, FilterKind::ModifiedDirichlet, FilterKind::RaisedCosine}) {
        FilterSpec spec;
        spec.kind = kind;
        spec.rolloff = rc_rolloff;
        PrototypeFilter g = time_from_char(make_filter(spec, gfdm));
        SpectrumGrid s = psd(g, kset, mset, L, fs, interp, grid);
        const char* name = kind == FilterKind::Dirichlet ? "dirichlet"
                           : kind == FilterKind::ModifiedDirichlet ? "modified_dirichlet"
                                                                   : "rc";
        rows.push_back({"gfdm", name, oob_leakage_db(s, bands)});
    }
    return rows;
}

// --- PAPR ----------------------------------------------------------------

double papr(const CVec& block) {
    if (block.size() == 0) throw std::invalid_argument("papr: empty block");
    double peak = 0.0;
    for (int i = 0; i < block.size(); ++i) peak = std::max(peak, std::norm(block[i]));
    double mean = kernels::sum_abs2(block.data(), block.size()) / block.size();
    if (mean <= 0.0) throw std::invalid_argument("papr: zero-power block");
    return peak / mean;
}

RVec papr_ccdf(const std::vector<double>& papr_db, const RVec& thresholds_db) {
    if (papr_db.empty()) throw std::invalid_argument("papr_ccdf: no blocks");
    RVec out(thresholds_db.size());
    for (int t = 0; t < thresholds_db.size(); ++t) {
        long count = 0;
        for (double v : papr_db)
            if (v > thresholds_db[t]) ++count;
        out[t] = static_cast<double>(count) / papr_db.size();
    }
    return out;
}

// --- Arithmetic complexity table -------------------------------------------

std::optional<double> complexity_cm(TransceiverImpl impl, TransceiverStage stage, int K, int M, int L_T,
                                    int L_R) {
    if (K < 1 || M < 1) throw std::invalid_argument("complexity_cm: K and M must be positive");
    const double D = static_cast<double>(K) * M;
    const double lgK = std::log2(static_cast<double>(K));
    const double lgM = std::log2(static_cast<double>(M));
    const double lgD = lgK + lgM;
    const double equalizer = D * (lgD + 1.0);  // one-tap frequency-domain equalization

    switch (impl) {
        case TransceiverImpl::Ofdm:
            switch (stage) {
                case TransceiverStage::Transmitter: return 0.5 * D * lgD;
                case TransceiverStage::ZfReceiver: return 0.5 * D * lgD + D;
                case TransceiverStage::MmseReceiver: return D * (0.5 * lgD + 1.0);
            }
            break;
        case TransceiverImpl::Direct:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * D;
                case TransceiverStage::ZfReceiver: return D * D + equalizer;
                case TransceiverStage::MmseReceiver: return (7.0 / 3.0) * D * D * D + 2.0 * D * D;
            }
            break;
        case TransceiverImpl::FreqDomain:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * (0.5 * (lgK + 2.0 * lgM) + L_T);
                case TransceiverStage::ZfReceiver: return D * (0.5 * (lgK + 2.0 * lgM) + L_R) + D;
                case TransceiverStage::MmseReceiver: return std::nullopt;
            }
            break;
        case TransceiverImpl::FreqConvolution:
        case TransceiverImpl::BlockCirculant:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * (0.5 * lgK + M);
                case TransceiverStage::ZfReceiver: return D * (0.5 * lgK + M) + equalizer;
                case TransceiverStage::MmseReceiver: return std::nullopt;
            }
            break;
        case TransceiverImpl::BlockCirculantPow2:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * (0.5 * (lgK + 2.0 * lgM) + 1.0);
                case TransceiverStage::ZfReceiver: return D * (0.5 * (lgK + 2.0 * lgM) + 1.0) + equalizer;
                case TransceiverStage::MmseReceiver: return std::nullopt;
            }
            break;
        case TransceiverImpl::ZakDomain:
            if (stage == TransceiverStage::MmseReceiver) return D * (lgM + 6.0 * K + 12.0 * M + 4.0);
            return std::nullopt;
        case TransceiverImpl::LuDecomposition:
            if (stage == TransceiverStage::MmseReceiver)
                return D * (0.5 * lgD + 20.0 * static_cast<double>(M) * M + 22.0 * M);
            return std::nullopt;
        case TransceiverImpl::Form1:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * (0.5 * (lgK + 2.0 * lgM) + 1.0);
                case TransceiverStage::ZfReceiver: return D * (0.5 * (lgK + 2.0 * lgM) + 1.0) + equalizer;
                case TransceiverStage::MmseReceiver: return D * (0.5 * (3.0 * lgK + 4.0 * lgM) + 4.0);
            }
            break;
        case TransceiverImpl::Form2:
            switch (stage) {
                case TransceiverStage::Transmitter: return D * (0.5 * (3.0 * lgK + 2.0 * lgM) + 1.0);
                case TransceiverStage::ZfReceiver: return D * (0.5 * (3.0 * lgK + 2.0 * lgM) + 1.0) + D;
                case TransceiverStage::MmseReceiver: return D * (0.5 * (3.0 * lgK + 2.0 * lgM) + 4.0);
            }
            break;
    }
    throw std::invalid_argument("complexity_cm: unknown implementation/stage");
}

TransceiverImpl transceiver_impl_from_name(std::string_view name) {
    if (name == "ofdm") return TransceiverImpl::Ofdm;
    if (name == "direct") return TransceiverImpl::Direct;
    if (name == "freq_domain") return TransceiverImpl::FreqDomain;
    if (name == "freq_conv") return TransceiverImpl::FreqConvolution;
    if (name == "block_circ") return TransceiverImpl::BlockCirculant;
    if (name == "block_circ_pow2") return TransceiverImpl::BlockCirculantPow2;
    if (name == "zak") return TransceiverImpl::ZakDomain;
    if (name == "lu") return TransceiverImpl::LuDecomposition;
    if (name == "form1") return TransceiverImpl::Form1;
    if (name == "form2") return TransceiverImpl::Form2;
    throw std::invalid_argument("unknown transceiver implementation '" + std::string(name) + "'");
}

std::string_view transceiver_impl_name(TransceiverImpl impl) {
    switch (impl) {
        case TransceiverImpl::Ofdm: return "ofdm";
        case TransceiverImpl::Direct: return "direct";
        case TransceiverImpl::FreqDomain: return "freq_domain";
        case TransceiverImpl::FreqConvolution: return "freq_conv";
        case TransceiverImpl::BlockCirculant: return "block_circ";
        case TransceiverImpl::BlockCirculantPow2: return "block_circ_pow2";
        case TransceiverImpl::ZakDomain: return "zak";
        case TransceiverImpl::LuDecomposition: return "lu";
        case TransceiverImpl::Form1: return "form1";
        case TransceiverImpl::Form2: return "form2";
    }
    throw std::invalid_argument("complexity_cm: unknown implementation");
}

}  // namespace gfdm
