#include "gfdm/char_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gfdm/fft.hpp"

namespace gfdm {

namespace {

void check_dims(const GfdmParams& p, const CMat& e, const char* what) {
    if (e.rows() != p.subcarriers || e.cols() != p.subsymbols) {
        throw std::invalid_argument(std::string(what) + ": entries are " + std::to_string(e.rows()) +
                                    "x" + std::to_string(e.cols()) + ", expected " +
                                    std::to_string(p.subcarriers) + "x" + std::to_string(p.subsymbols));
    }
    if (!e.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite entries");
}

}  // namespace

CharacteristicMatrix::CharacteristicMatrix(const GfdmParams& p, CMat e) : params(p), entries(std::move(e)) {
    check_dims(params, entries, "CharacteristicMatrix");
}

PrototypeFilter::PrototypeFilter(const GfdmParams& p, CVec t) : params(p), taps(std::move(t)) {
    if (taps.size() != params.block_size()) {
        throw std::invalid_argument("PrototypeFilter: length " + std::to_string(taps.size()) +
                                    " does not match D=" + std::to_string(params.block_size()));
    }
    if (!taps.allFinite()) throw std::invalid_argument("PrototypeFilter: non-finite taps");
}

CharacteristicMatrix char_from_time(const PrototypeFilter& g) {
    const int K = g.params.subcarriers, M = g.params.subsymbols, D = K * M;
    // reshape(g, K, M) shares the vect layout: column m holds g[mK .. mK+K-1].
    CMat G = Eigen::Map<const CMat>(g.taps.data(), K, M);
    fft::dft_rows(G.data(), K, M);
    G *= std::sqrt(static_cast<double>(D));
    return CharacteristicMatrix(g.params, std::move(G));
}

PrototypeFilter time_from_char(const CharacteristicMatrix& G) {
    const int K = G.K(), M = G.M(), D = G.D();
    CMat buf = G.entries;
    fft::idft_rows(buf.data(), K, M);
    buf /= std::sqrt(static_cast<double>(D));
    return PrototypeFilter(G.params, Eigen::Map<const CVec>(buf.data(), D));
}

CharacteristicMatrix phase_shift(const CharacteristicMatrix& G) {
    const int K = G.K(), M = G.M(), D = G.D();
    CMat out(K, M);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            double phi = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(m) / D;
            out(k, m) = G.entries(k, m) * cplx(std::cos(phi), std::sin(phi));
        }
    }
    return CharacteristicMatrix(G.params, std::move(out));
}

CharacteristicMatrix phase_unshift(const CharacteristicMatrix& Gbar) {
    const int K = Gbar.K(), M = Gbar.M(), D = Gbar.D();
    CMat out(K, M);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            double phi = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(m) / D;
            out(k, m) = Gbar.entries(k, m) * cplx(std::cos(phi), std::sin(phi));
        }
    }
    return CharacteristicMatrix(Gbar.params, std::move(out));
}

CVec freq_from_char(const CharacteristicMatrix& G) {
    const int K = G.K(), M = G.M(), D = G.D();
    CMat buf = phase_shift(G).entries;
    fft::dft_cols(buf.data(), K, M);  // W_K applied per column (W_K symmetric)
    // g_f[k*M + m] = buf(k, m): transpose-flatten via the Pi map.
    CVec g_f(D);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) g_f[k * M + m] = buf(k, m);
    return g_f;
}

CharacteristicMatrix char_from_freq(const CVec& g_f, const GfdmParams& params) {
    const int K = params.subcarriers, M = params.subsymbols, D = K * M;
    if (g_f.size() != D) {
        throw std::invalid_argument("char_from_freq: length " + std::to_string(g_f.size()) +
                                    " does not match D=" + std::to_string(D));
    }
    CMat buf(K, M);
    for (int m = 0; m < M; ++m)
        for (int k = 0; k < K; ++k) buf(k, m) = g_f[k * M + m];
    fft::idft_cols(buf.data(), K, M);
    return phase_unshift(CharacteristicMatrix(params, std::move(buf)));
}

double energy(const CharacteristicMatrix& G) { return G.entries.squaredNorm() / G.D(); }

bool is_unitary(const CharacteristicMatrix& G, const Tolerance& tol) {
    return ((G.entries.cwiseAbs().array() - 1.0).abs() <= tol.rel_eps).all();
}

bool is_cmcm(const CharacteristicMatrix& G, const Tolerance& tol) {
    RMat mag = G.entries.cwiseAbs();
    double lo = mag.minCoeff(), hi = mag.maxCoeff();
    if (lo <= 0.0) return false;
    return (hi - lo) <= tol.rel_eps * hi;
}

bool is_invertible(const CharacteristicMatrix& G, const Tolerance& tol) {
    double zero_eps = tol.zero_eps(detail::max_abs_entry(G.entries));
    return G.entries.cwiseAbs().minCoeff() > zero_eps;
}

CharacteristicMatrix inverse_char(const CharacteristicMatrix& G, const Tolerance& tol) {
    detail::require_invertible(G, tol);
    return CharacteristicMatrix(G.params, G.entries.conjugate().cwiseInverse());
}

CharacteristicMatrix pseudo_inverse_char(const CharacteristicMatrix& G, const Tolerance& tol) {
    double zero_eps = tol.zero_eps(detail::max_abs_entry(G.entries));
    CMat out(G.K(), G.M());
    for (int m = 0; m < G.M(); ++m) {
        for (int k = 0; k < G.K(); ++k) {
            cplx v = G.entries(k, m);
            out(k, m) = (std::abs(v) > zero_eps) ? 1.0 / std::conj(v) : cplx(0.0, 0.0);
        }
    }
    return CharacteristicMatrix(G.params, std::move(out));
}

double receiver_energy(const CharacteristicMatrix& G, const Tolerance& tol) {
    detail::require_invertible(G, tol);
    double acc = 0.0;
    for (int m = 0; m < G.M(); ++m)
        for (int k = 0; k < G.K(); ++k) acc += 1.0 / std::norm(G.entries(k, m));
    return acc / G.D();
}

std::vector<int> pi_permutation(const GfdmParams& params) {
    const int K = params.subcarriers, M = params.subsymbols;
    std::vector<int> map(static_cast<std::size_t>(K) * M);
    for (int k = 0; k < K; ++k)
        for (int m = 0; m < M; ++m) map[static_cast<std::size_t>(k) * M + m] = k + m * K;
    return map;
}

namespace detail {

double max_abs_entry(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_invertible(const CharacteristicMatrix& G, const Tolerance& tol) {
    double zero_eps = tol.zero_eps(max_abs_entry(G.entries));
    for (int m = 0; m < G.M(); ++m) {
        for (int k = 0; k < G.K(); ++k) {
            if (std::abs(G.entries(k, m)) <= zero_eps) {
                throw std::invalid_argument("singular characteristic matrix: zero entry at (k=" +
                                            std::to_string(k) + ", m=" + std::to_string(m) + ")");
            }
        }
    }
}

}  // namespace detail

}  // namespace gfdm
