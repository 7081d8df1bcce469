#ifndef GFDM_CHAR_MATRIX_HPP
#define GFDM_CHAR_MATRIX_HPP

#include <vector>

#include "gfdm/types.hpp"

namespace gfdm {

/// K-by-M characteristic matrix of a GFDM modulation matrix. Row index k is
/// the subcarrier-phase index, column index m the subsymbol-frequency index.
/// The matrix, the time-domain prototype filter and the frequency-domain
/// prototype filter are in one-to-one correspondence; the conversions below
/// move between the three representations.
struct CharacteristicMatrix {
    GfdmParams params;
    CMat entries;  // K x M

    CharacteristicMatrix() = default;
    CharacteristicMatrix(const GfdmParams& p, CMat e);

    int K() const { return params.subcarriers; }
    int M() const { return params.subsymbols; }
    int D() const { return params.block_size(); }
};

/// Length-D time-domain prototype filter.
struct PrototypeFilter {
    GfdmParams params;
    CVec taps;  // length D

    PrototypeFilter() = default;
    PrototypeFilter(const GfdmParams& p, CVec t);
};

/// G = sqrt(D) * reshape(g, K, M) * W_M
CharacteristicMatrix char_from_time(const PrototypeFilter& g);

/// g = vect(G * W_M^H) / sqrt(D)
PrototypeFilter time_from_char(const CharacteristicMatrix& G);

/// g_f = vect(Gbar^T * W_K) = sqrt(D) * W_D * g
CVec freq_from_char(const CharacteristicMatrix& G);

/// Inverse of freq_from_char.
CharacteristicMatrix char_from_freq(const CVec& g_f, const GfdmParams& params);

/// Gbar[k][m] = G[k][m] * e^{-j2*pi*k*m/D}, and its inverse.
CharacteristicMatrix phase_shift(const CharacteristicMatrix& G);
CharacteristicMatrix phase_unshift(const CharacteristicMatrix& Gbar);

/// xi_G = ||G||_F^2 / D (equals ||g||^2).
double energy(const CharacteristicMatrix& G);

/// The modulation matrix is unitary iff every |G[k][m]| equals 1.
bool is_unitary(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// Constant-magnitude check (unitary up to a scale factor).
bool is_cmcm(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// The modulation matrix is invertible iff G has no zero entries.
bool is_invertible(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// Characteristic matrix H of A^{-H}: H[k][m] = 1 / conj(G[k][m]).
/// Throws on singular G, naming the zero entry.
CharacteristicMatrix inverse_char(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// Hadamard pseudo-inverse: entries below the zero threshold map to 0. Through
/// the unitary factorization this realizes the Moore-Penrose pseudo-inverse of
/// the modulation matrix.
CharacteristicMatrix pseudo_inverse_char(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// xi_H = sum_{k,m} 1 / (D * |G[k][m]|^2); every row of A^{-1} has this
/// squared norm. Throws on singular G.
double receiver_energy(const CharacteristicMatrix& G, const Tolerance& tol = {});

/// Gather map realizing vect(X^T) = Pi * vect(X) for K-by-M X:
/// out[i] = in[map[i]] with map[k*M + m] = k + m*K.
std::vector<int> pi_permutation(const GfdmParams& params);

namespace detail {
/// max |entry| over G (0 for empty).
double max_abs_entry(const CMat& m);
/// Throws std::invalid_argument listing the first offending entry when G has
/// a zero entry at tolerance tol.
void require_invertible(const CharacteristicMatrix& G, const Tolerance& tol);
}  // namespace detail

}  // namespace gfdm

#endif
