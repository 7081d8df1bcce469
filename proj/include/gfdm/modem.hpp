#ifndef GFDM_MODEM_HPP
#define GFDM_MODEM_HPP

#include <optional>
#include <vector>

#include "gfdm/channel.hpp"
#include "gfdm/char_matrix.hpp"
#include "gfdm/dense.hpp"

namespace gfdm {

/// One block of D data symbols (index k + m*K) with the active subcarrier and
/// subsymbol sets and the cyclic-prefix length. Symbols outside the active
/// sets must be zero.
struct GfdmFrame {
    GfdmParams params;
    CVec data;                            // length D
    std::vector<int> active_subcarriers;  // subset of 0..K-1, sorted
    std::vector<int> active_subsymbols;   // subset of 0..M-1, sorted
    int cp_len = 0;

    static GfdmFrame full(const GfdmParams& params, CVec data, int cp_len = 0);
    bool full_allocation() const;
    void validate() const;
};

/// Demodulation result: symbol estimates plus per-(k,m) error variances when
/// the receiver can compute them.
struct RxReport {
    CVec estimates;                      // length D
    std::optional<RMat> error_variances; // K x M
};

// --- Transmitters ------------------------------------------------------

/// x = A d via the dense modulation matrix; O(D^2) oracle path.
CVec tx_direct(const GfdmFrame& frame, const CharacteristicMatrix& G);

/// Fast path built from M-point and K-point transforms around an elementwise
/// product with G; O(D log D).
CVec tx_form1(const GfdmFrame& frame, const CharacteristicMatrix& G);

/// Alternative fast path using the phase-shifted matrix, the transpose
/// permutation and one D-point inverse transform.
CVec tx_form2(const GfdmFrame& frame, const CharacteristicMatrix& G);

/// Frequency-domain transmitter: per active subcarrier, repeat the M-point
/// spectrum, window by g_f, circularly shift by k*M bins and accumulate.
/// When `sparsity` is given, g_f must have at most sparsity*M nonzero bins.
CVec tx_freq_domain(const GfdmFrame& frame, const CVec& g_f, std::optional<int> sparsity = std::nullopt);

/// Cyclic prefix handling; L <= block length.
CVec add_cp(const CVec& x, int cp_len);
CVec remove_cp(const CVec& y, int cp_len);

// --- Receivers ----------------------------------------------------------

/// Zero-forcing receivers, d_hat = A^{-1} C^{-1} y. Form 1 uses two D-point
/// transforms, Form 2 one. With `pseudo` the Hadamard pseudo-inverse of the
/// characteristic matrix is used instead of failing on singular G.
RxReport rx_zf_form1(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq,
                     const Tolerance& tol = {}, bool pseudo = false);
RxReport rx_zf_form2(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq,
                     const Tolerance& tol = {}, bool pseudo = false);

/// Per-subcarrier frequency-domain ZF receiver; h_f is the frequency-domain
/// prototype of the receive matrix, h_f = freq_from_char(inverse_char(G)).
/// Returns the concatenated estimates over the given subcarrier set.
CVec rx_zf_freq(const CVec& y, const CVec& h_f, const CVec& chan_freq, const GfdmParams& params,
                const std::vector<int>& subcarriers, const Tolerance& tol = {});

/// Dense linear MMSE receiver, O(D^3); also the oracle for the fast paths.
/// Well-posed for any G (including singular) and gamma > 0.
RxReport rx_mmse_dense(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                       double symbol_energy = 1.0);

/// Witness for the existence of the single-tap factorized MMSE receiver: for
/// every m, either the magnitudes |Gbar[:,m]| are constant (ConstantFilter)
/// or the channel magnitudes |C_{kM+m}| over k are constant (ConstantChannel).
enum class LowcompCondition { ConstantFilter, ConstantChannel, None };

struct LowcompWitness {
    bool exists = false;
    std::vector<LowcompCondition> per_subsymbol;
};

/// Condition spread test uses max/min magnitude ratio <= 1 + ratio_tol.
LowcompWitness mmse_lowcomp_exists(const CharacteristicMatrix& G, const CVec& chan_freq,
                                   double ratio_tol = 1e-9);

/// Factorized MMSE receiver, O(D log D); requires mmse_lowcomp_exists.
RxReport rx_mmse_lowcomp(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                         double symbol_energy = 1.0);

/// Rank-1 factors for the approximated MMSE receiver. For each subsymbol m,
/// the K x K rank-<=2 coupling matrix F_m = u v^T + gamma^{-1} u~ v~^T is
/// replaced by its best rank-1 approximation (via the SVD of the underlying
/// 2x2 core). residual[m] is the discarded second singular value.
struct AmmseFactors {
    CMat w;         // K x M equalizer-side taps
    CMat z;         // K x M filter-side taps
    RVec residual;  // length M
};

AmmseFactors ammse_factors(const CharacteristicMatrix& G, const CVec& chan_freq, double gamma);

/// Approximated MMSE receiver running the factorized structure on the rank-1
/// taps; exact whenever mmse_lowcomp_exists holds.
RxReport rx_ammse(const CVec& y, const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                  double symbol_energy = 1.0);

// --- Error variances ----------------------------------------------------

/// Per-(k,m) ZF error variances (constant in m), O(KM log K).
RMat error_variances_zf(const CharacteristicMatrix& G, const CVec& chan_freq, double n0,
                        const Tolerance& tol = {});

/// Per-(k,m) MMSE error variances (constant in m), O(KM log K). Matches the
/// diagonal of Es*(I - Phi^H Dc^H (Dc Dc^H + I/gamma)^{-1} Dc Phi) with
/// Phi = W_D A^{-H} for any invertible G.
RMat error_variances_mmse(const CharacteristicMatrix& G, const CVec& chan_freq, double gamma,
                          double symbol_energy = 1.0, const Tolerance& tol = {});

}  // namespace gfdm

#endif
