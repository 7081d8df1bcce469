#include "gfdm/modem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gfdm/fft.hpp"
#include "gfdm/kernels.hpp"

namespace gfdm {

namespace {

bool is_full_set(const std::vector<int>& set, int n) {
    if (static_cast<int>(set.size()) != n) return false;
    for (int i = 0; i < n; ++i)
        if (set[i] != i) return false;
    return true;
}

void require_channel_nonzero(const CVec& chan_freq, const Tolerance& tol) {
    double zero_eps = tol.zero_eps(chan_freq.cwiseAbs().maxCoeff());
    for (int l = 0; l < chan_freq.size(); ++l) {
        if (std::abs(chan_freq[l]) <= zero_eps) {
            throw std::invalid_argument("channel null at frequency bin " + std::to_string(l));
        }
    }
}

void require_block(const CVec& y, int D, const char* what) {
    if (y.size() != D) {
        throw std::invalid_argument(std::string(what) + ": block length " + std::to_string(y.size()) +
                                    " does not match D=" + std::to_string(D));
    }
}

// Gbar reciprocal (1/entry, no conjugation); zero entries map to zero when
// pseudo is set, otherwise throw.
CMat reciprocal(const CMat& m, const Tolerance& tol, bool pseudo, const char* what) {
    double zero_eps = tol.zero_eps(m.size() ? m.cwiseAbs().maxCoeff() : 0.0);
    CMat out(m.rows(), m.cols());
    for (int c = 0; c < m.cols(); ++c) {
        for (int r = 0; r < m.rows(); ++r) {
            cplx v = m(r, c);
            if (std::abs(v) <= zero_eps) {
                if (!pseudo) {
                    throw std::invalid_argument(std::string(what) + ": zero entry at (k=" +
                                                std::to_string(r) + ", m=" + std::to_string(c) + ")");
                }
                out(r, c) = cplx(0.0, 0.0);
            } else {
                out(r, c) = 1.0 / v;
            }
        }
    }
    return out;
}

// Shared tail of the factorized receiver:
//   (W_M^H x W_K) diag(vect(z_inv)) (I_M x W_K^H) diag(perm(w_inv)) Pi^T W_D y
CVec form2_receive(const CVec& y, const CMat& w_inv, const CMat& z_inv, int K, int M) {
    const int D = K * M;
    CVec v = y;
    fft::dft(v.data(), D);
    CMat buf(K, M);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) buf(k, m) = v[k * M + m];  // Pi^T
    kernels::cmul(buf.data(), buf.data(), w_inv.data(), D);
    fft::idft_cols(buf.data(), K, M);
    kernels::cmul(buf.data(), buf.data(), z_inv.data(), D);
    fft::dft_cols(buf.data(), K, M);
    fft::idft_rows(buf.data(), K, M);
    return Eigen::Map<const CVec>(buf.data(), D);
}

// Per-bin channel coefficients arranged as w(k, m) = C_{kM+m}.
CMat channel_grid(const CVec& chan_freq, int K, int M) {
    CMat w(K, M);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) w(k, m) = chan_freq[k * M + m];
    return w;
}

// sigma_k = (scale/D) * [W_K sum_l diag(t_l) W_K^H r_l]_k with t_l the
// circular autocorrelation of column l of Gbar^{o-1}; r holds one real value
// per frequency bin.
RVec variance_machinery(const CharacteristicMatrix& G, const RVec& r_bins, double scale) {
    const int K = G.K(), M = G.M(), D = G.D();
    CMat hbar = phase_shift(G).entries.cwiseInverse();
    CVec acc = CVec::Zero(K);
    CVec hcol(K), rl(K), t(K);
    for (int l = 0; l < M; ++l) {
        hcol = hbar.col(l);
        fft::dft(hcol.data(), K);
        for (int q = 0; q < K; ++q) t[q] = std::norm(hcol[q]);
        fft::idft(t.data(), K);
        t *= std::sqrt(static_cast<double>(K));  // t[i] = sum_p conj(h[p]) h[p+i]
        for (int k = 0; k < K; ++k) rl[k] = cplx(r_bins[k * M + l], 0.0);
        fft::idft(rl.data(), K);
        acc += t.cwiseProduct(rl);
    }
    fft::dft(acc.data(), K);
    return (scale / D) * acc.real();
}

RMat replicate_cols(const RVec& col, int M) {
    RMat out(col.size(), M);
    for (int m = 0; m < M; ++m) out.col(m) = col;
    return out;
}

bool flat_magnitude(const CVec& v, double ratio_tol) {
    RVec mag = v.cwiseAbs();
    double lo = mag.minCoeff(), hi = mag.maxCoeff();
    return lo > 0.0 && hi <= lo * (1.0 + ratio_tol);
}

}  // namespace

GfdmFrame GfdmFrame::full(const GfdmParams& params, CVec data, int cp_len) {
    GfdmFrame f;
    f.params = params;
    f.data = std::move(data);
    f.active_subcarriers.resize(params.subcarriers);
    f.active_subsymbols.resize(params.subsymbols);
    for (int k = 0; k < params.subcarriers; ++k) f.active_subcarriers[k] = k;
    for (int m = 0; m < params.subsymbols; ++m) f.active_subsymbols[m] = m;
    f.cp_len = cp_len;
    f.validate();
    return f;
}

bool GfdmFrame::full_allocation() const {
    return is_full_set(active_subcarriers, params.subcarriers) &&
           is_full_set(active_subsymbols, params.subsymbols);
}

void GfdmFrame::validate() const {
    const int K = params.subcarriers, M = params.subsymbols, D = params.block_size();
    if (data.size() != D) throw std::invalid_argument("GfdmFrame: data length != D");
    if (cp_len < 0 || cp_len > D) throw std::invalid_argument("GfdmFrame: cp length out of range");
    std::vector<bool> kon(K, false), mon(M, false);
    for (int k : active_subcarriers) {
        if (k < 0 || k >= K) throw std::invalid_argument("GfdmFrame: subcarrier index out of range");
        kon[k] = true;
    }
    for (int m : active_subsymbols) {
        if (m < 0 || m >= M) throw std::invalid_argument("GfdmFrame: subsymbol index out of range");
        mon[m] = true;
    }
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            if (!(kon[k] && mon[m]) && data[k + m * K] != cplx(0.0, 0.0)) {
                throw std::invalid_argument("GfdmFrame: nonzero symbol outside the active sets at (k=" +
                                            std::to_string(k) + ", m=" + std::to_string(m) + ")");
            }
        }
    }
}

CVec tx_direct(const GfdmFrame& frame, const CharacteristicMatrix& G) {
    frame.validate();
    DenseGfdmMatrix A = build_dense(time_from_char(G));
    return A.entries * frame.data;
}

CVec tx_form1(const GfdmFrame& frame, const CharacteristicMatrix& G) {
    frame.validate();
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(frame.data, D, "tx_form1");
    CMat buf = Eigen::Map<const CMat>(frame.data.data(), K, M);
    fft::idft_cols(buf.data(), K, M);
    fft::dft_rows(buf.data(), K, M);
    kernels::cmul(buf.data(), buf.data(), G.entries.data(), D);
    fft::idft_rows(buf.data(), K, M);
    return Eigen::Map<const CVec>(buf.data(), D);
}

CVec tx_form2(const GfdmFrame& frame, const CharacteristicMatrix& G) {
    frame.validate();
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(frame.data, D, "tx_form2");
    CMat gbar = phase_shift(G).entries;
    CMat buf = Eigen::Map<const CMat>(frame.data.data(), K, M);
    fft::idft_cols(buf.data(), K, M);
    fft::dft_rows(buf.data(), K, M);
    kernels::cmul(buf.data(), buf.data(), gbar.data(), D);
    fft::dft_cols(buf.data(), K, M);
    CVec x(D);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) x[k * M + m] = buf(k, m);  // Pi
    fft::idft(x.data(), D);
    return x;
}

CVec tx_freq_domain(const GfdmFrame& frame, const CVec& g_f, std::optional<int> sparsity) {
    frame.validate();
    const int K = frame.params.subcarriers, M = frame.params.subsymbols, D = frame.params.block_size();
    require_block(g_f, D, "tx_freq_domain");
    if (sparsity) {
        double zero_eps = 1e-12 * g_f.cwiseAbs().maxCoeff();
        int nonzeros = 0;
        for (int l = 0; l < D; ++l)
            if (std::abs(g_f[l]) > zero_eps) ++nonzeros;
        if (nonzeros > *sparsity * M) {
            throw std::invalid_argument("tx_freq_domain: g_f has " + std::to_string(nonzeros) +
                                        " nonzero bins, exceeding L_T*M=" + std::to_string(*sparsity * M));
        }
    }
    CVec acc = CVec::Zero(D);
    CVec dk(M), tiled(D), windowed(D);
    for (int k : frame.active_subcarriers) {
        for (int m = 0; m < M; ++m) dk[m] = frame.data[k + m * K];
        fft::dft(dk.data(), M);
        for (int r = 0; r < K; ++r) tiled.segment(r * M, M) = dk;
        kernels::cmul(windowed.data(), tiled.data(), g_f.data(), D);
        // circular shift by k*M bins, accumulated in two contiguous runs
        const int s = (k * M) % D;
        kernels::caxpy(acc.data() + s, cplx(1.0, 0.0), windowed.data(), D - s);
        if (s > 0) kernels::caxpy(acc.data(), cplx(1.0, 0.0), windowed.data() + (D - s), s);
    }
    fft::idft(acc.data(), D);
    return acc / std::sqrt(static_cast<double>(K));
}

CVec add_cp(const CVec& x, int cp_len) {
    const int D = static_cast<int>(x.size());
    if (cp_len < 0 || cp_len > D) throw std::invalid_argument("add_cp: prefix length out of range");
    CVec out(D + cp_len);
    out.head(cp_len) = x.tail(cp_len);
    out.tail(D) = x;
    return out;
}

CVec remove_cp(const CVec& y, int cp_len) {
    const int total = static_cast<int>(y.size());
    if (cp_len < 0 || cp_len > total) throw std::invalid_argument("remove_cp: prefix length out of range");
    return y.tail(total - cp_len);
}

RxReport rx_zf_form1(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq,
                     const Tolerance& tol, bool pseudo) {
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(y, D, "rx_zf_form1");
    require_block(chan_freq, D, "rx_zf_form1 channel");
    require_channel_nonzero(chan_freq, tol);
    CMat g_inv = reciprocal(G.entries, tol, pseudo, "rx_zf_form1 singular characteristic matrix");

    CVec v = y;
    fft::dft(v.data(), D);
    kernels::cdiv(v.data(), v.data(), chan_freq.data(), D);
    fft::idft(v.data(), D);
    CMat buf = Eigen::Map<const CMat>(v.data(), K, M);
    fft::dft_rows(buf.data(), K, M);
    kernels::cmul(buf.data(), buf.data(), g_inv.data(), D);
    fft::dft_cols(buf.data(), K, M);
    fft::idft_rows(buf.data(), K, M);
    return RxReport{Eigen::Map<const CVec>(buf.data(), D), std::nullopt};
}

RxReport rx_zf_form2(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq,
                     const Tolerance& tol, bool pseudo) {
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(y, D, "rx_zf_form2");
    require_block(chan_freq, D, "rx_zf_form2 channel");
    require_channel_nonzero(chan_freq, tol);
    CMat gbar = phase_shift(G).entries;
    CMat z_inv = reciprocal(gbar, tol, pseudo, "rx_zf_form2 singular characteristic matrix");
    CMat w_inv = channel_grid(chan_freq, K, M).cwiseInverse();
    return RxReport{form2_receive(y, w_inv, z_inv, K, M), std::nullopt};
}

CVec rx_zf_freq(const CVec& y, const CVec& h_f, const CVec& chan_freq, const GfdmParams& params,
                const std::vector<int>& subcarriers, const Tolerance& tol) {
    const int K = params.subcarriers, M = params.subsymbols, D = params.block_size();
    require_block(y, D, "rx_zf_freq");
    require_block(h_f, D, "rx_zf_freq filter");
    require_channel_nonzero(chan_freq, tol);

    CVec v = y;
    fft::dft(v.data(), D);
    kernels::cdiv(v.data(), v.data(), chan_freq.data(), D);

    CVec out = CVec::Zero(D);
    CVec shifted(D), windowed(D), folded(M);
    CVec h_conj = h_f.conjugate();
    for (int k : subcarriers) {
        const int s = (k * M) % D;
        // (P^{(k)})^T rotates up by k*M bins
        shifted.head(D - s) = v.segment(s, D - s);
        if (s > 0) shifted.tail(s) = v.head(s);
        kernels::cmul(windowed.data(), shifted.data(), h_conj.data(), D);
        folded.setZero();
        for (int r = 0; r < K; ++r) folded += windowed.segment(r * M, M);
        fft::idft(folded.data(), M);
        folded /= std::sqrt(static_cast<double>(K));
        for (int m = 0; m < M; ++m) out[k + m * K] = folded[m];
    }
    return out;
}

RxReport rx_mmse_dense(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                       double symbol_energy) {
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(y, D, "rx_mmse_dense");
    require_block(chan_freq, D, "rx_mmse_dense channel");
    if (gamma <= 0.0) throw std::invalid_argument("rx_mmse_dense: gamma must be positive");

    // T = C*A computed by filtering the columns of A in the frequency domain.
    CMat T = build_dense(time_from_char(G)).entries;
    for (int c = 0; c < D; ++c) {
        fft::dft(T.col(c).data(), D);
        kernels::cmul(T.col(c).data(), T.col(c).data(), chan_freq.data(), D);
        fft::idft(T.col(c).data(), D);
    }
    CMat gram = T * T.adjoint();
    gram.diagonal().array() += cplx(1.0 / gamma, 0.0);
    Eigen::LDLT<CMat> solver(gram);

    CVec estimates = T.adjoint() * solver.solve(y);

    // R_e = Es*(I - T^H (T T^H + I/gamma)^{-1} T)
    CMat X = solver.solve(T);
    RMat variances(K, M);
    for (int c = 0; c < D; ++c) {
        double corr = (T.col(c).adjoint() * X.col(c)).value().real();
        variances(c % K, c / K) = symbol_energy * (1.0 - corr);
    }
    return RxReport{std::move(estimates), std::move(variances)};
}

LowcompWitness mmse_lowcomp_exists(const CharacteristicMatrix& G, const CVec& chan_freq, double ratio_tol) {
    const int K = G.K(), M = G.M();
    require_block(chan_freq, G.D(), "mmse_lowcomp_exists channel");
    CMat gbar = phase_shift(G).entries;
    CMat cgrid = channel_grid(chan_freq, K, M);
    LowcompWitness w;
    w.exists = true;
    w.per_subsymbol.resize(M, LowcompCondition::None);
    for (int m = 0; m < M; ++m) {
        if (flat_magnitude(gbar.col(m), ratio_tol)) {
            w.per_subsymbol[m] = LowcompCondition::ConstantFilter;  // ties prefer the filter condition
        } else if (flat_magnitude(cgrid.col(m), ratio_tol)) {
            w.per_subsymbol[m] = LowcompCondition::ConstantChannel;
        } else {
            w.per_subsymbol[m] = LowcompCondition::None;
            w.exists = false;
        }
    }
    return w;
}

namespace {

// Error variances for the factorized receivers where a closed form exists:
// flat-magnitude channel, or constant-magnitude characteristic matrix.
std::optional<RMat> lowcomp_error_variances(const CharacteristicMatrix& G, const CVec& chan_freq,
                                            double gamma, double symbol_energy) {
    const int D = G.D(), M = G.M();
    const double n0 = symbol_energy / gamma;
    if (flat_magnitude(chan_freq, 1e-9)) {
        double c2 = std::norm(chan_freq[0]);
        double sum = 0.0;
        for (int m = 0; m < M; ++m)
            for (int k = 0; k < G.K(); ++k) sum += (n0 / D) / (c2 * std::norm(G.entries(k, m)) + 1.0 / gamma);
        return RMat::Constant(G.K(), M, sum);
    }
    if (is_cmcm(G, Tolerance{1e-9, 1e-12})) {
        double xi_g = energy(G);
        RVec r(D);
        for (int l = 0; l < D; ++l) r[l] = xi_g / (xi_g * std::norm(chan_freq[l]) + 1.0 / gamma);
        return replicate_cols(variance_machinery(G, r, n0), M);
    }
    return std::nullopt;
}

}  // namespace

RxReport rx_mmse_lowcomp(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                         double symbol_energy) {
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(y, D, "rx_mmse_lowcomp");
    if (gamma <= 0.0) throw std::invalid_argument("rx_mmse_lowcomp: gamma must be positive");
    LowcompWitness witness = mmse_lowcomp_exists(G, chan_freq);
    if (!witness.exists) {
        throw std::invalid_argument(
            "rx_mmse_lowcomp: neither the filter nor the channel magnitude condition holds for some "
            "subsymbol; use rx_ammse");
    }
    CMat gbar = phase_shift(G).entries;
    CMat cgrid = channel_grid(chan_freq, K, M);
    CMat w(K, M), z(K, M);
    for (int m = 0; m < M; ++m) {
        if (witness.per_subsymbol[m] == LowcompCondition::ConstantFilter) {
            double g2 = std::norm(gbar(0, m));
            for (int k = 0; k < K; ++k) {
                w(k, m) = cgrid(k, m) + 1.0 / (gamma * g2 * std::conj(cgrid(k, m)));
                z(k, m) = gbar(k, m);
            }
        } else {
            double c2 = std::norm(cgrid(0, m));
            for (int k = 0; k < K; ++k) {
                w(k, m) = cgrid(k, m);
                z(k, m) = gbar(k, m) + 1.0 / (gamma * c2 * std::conj(gbar(k, m)));
            }
        }
    }
    RxReport report;
    report.estimates = form2_receive(y, w.cwiseInverse(), z.cwiseInverse(), K, M);
    report.error_variances = lowcomp_error_variances(G, chan_freq, gamma, symbol_energy);
    return report;
}

AmmseFactors ammse_factors(const CharacteristicMatrix& G, const CVec& chan_freq, double gamma) {
    const int K = G.K(), M = G.M();
    require_block(chan_freq, G.D(), "ammse_factors channel");
    if (gamma <= 0.0) throw std::invalid_argument("ammse_factors: gamma must be positive");
    CMat gbar = phase_shift(G).entries;
    CMat cgrid = channel_grid(chan_freq, K, M);

    AmmseFactors f;
    f.w.resize(K, M);
    f.z.resize(K, M);
    f.residual.resize(M);
    for (int m = 0; m < M; ++m) {
        CVec u = cgrid.col(m);
        CVec v = gbar.col(m);
        CVec ut = u.conjugate().cwiseInverse() / gamma;  // gamma^{-1} / conj(C)
        CVec vt = v.conjugate().cwiseInverse();          // 1 / conj(Gbar)
        if (K == 1) {
            f.w(0, m) = u[0] * v[0] + ut[0] * vt[0];
            f.z(0, m) = cplx(1.0, 0.0);
            f.residual[m] = 0.0;
            continue;
        }
        CMat P(K, 2), Q(K, 2);
        P.col(0) = u;
        P.col(1) = ut;
        Q.col(0) = v.conjugate();
        Q.col(1) = vt.conjugate();
        Eigen::HouseholderQR<CMat> qr_p(P), qr_q(Q);
        CMat up = qr_p.householderQ() * CMat::Identity(K, 2);
        CMat uq = qr_q.householderQ() * CMat::Identity(K, 2);
        Eigen::Matrix2cd rp = qr_p.matrixQR().topRows(2).triangularView<Eigen::Upper>();
        Eigen::Matrix2cd rq = qr_q.matrixQR().topRows(2).triangularView<Eigen::Upper>();
        Eigen::Matrix2cd core = rp * rq.adjoint();
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(core, Eigen::ComputeFullU | Eigen::ComputeFullV);
        double s1 = svd.singularValues()(0);
        f.residual[m] = svd.singularValues()(1);
        f.w.col(m) = s1 * (up * svd.matrixU().col(0));
        f.z.col(m) = (uq * svd.matrixV().col(0)).conjugate();
    }
    return f;
}

RxReport rx_ammse(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                  double symbol_energy) {
    const int K = G.K(), M = G.M(), D = G.D();
    require_block(y, D, "rx_ammse");
    AmmseFactors f = ammse_factors(G, chan_freq, gamma);
    double wz_floor = 1e-300;
    if (f.w.cwiseAbs().minCoeff() < wz_floor || f.z.cwiseAbs().minCoeff() < wz_floor) {
        throw std::runtime_error("rx_ammse: degenerate rank-1 taps");
    }
    RxReport report;
    report.estimates = form2_receive(y, f.w.cwiseInverse(), f.z.cwiseInverse(), K, M);
    report.error_variances = lowcomp_error_variances(G, chan_freq, gamma, symbol_energy);
    return report;
}

RMat error_variances_zf(const CharacteristicMatrix& G, const CVec& chan_freq, double n0,
                        const Tolerance& tol) {
    const int D = G.D();
    require_block(chan_freq, D, "error_variances_zf channel");
    require_channel_nonzero(chan_freq, tol);
    detail::require_invertible(G, tol);
    RVec r(D);
    for (int l = 0; l < D; ++l) r[l] = 1.0 / std::norm(chan_freq[l]);
    return replicate_cols(variance_machinery(G, r, n0), G.M());
}

RMat error_variances_mmse(const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                          double symbol_energy, const Tolerance& tol) {
    const int D = G.D();
    require_block(chan_freq, D, "error_variances_mmse channel");
    detail::require_invertible(G, tol);
    if (gamma <= 0.0) throw std::invalid_argument("error_variances_mmse: gamma must be positive");
    RVec r(D);
    for (int l = 0; l < D; ++l) {
        double c2 = std::norm(chan_freq[l]);
        r[l] = c2 / (c2 + 1.0 / gamma);
    }
    RVec folded = variance_machinery(G, r, symbol_energy);
    return replicate_cols(RVec(symbol_energy - folded.array()), G.M());
}

}  // namespace gfdm
