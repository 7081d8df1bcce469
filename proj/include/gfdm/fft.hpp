#ifndef GFDM_FFT_HPP
#define GFDM_FFT_HPP

#include "gfdm/types.hpp"

namespace gfdm::fft {

/// Unitary DFT conventions throughout: forward applies W_p with
/// [W_p]_{m,n} = e^{-j2*pi*mn/p}/sqrt(p); inverse applies W_p^H. The FFTW
/// backend output is rescaled by 1/sqrt(p). Plans are cached per transform
/// geometry behind a lock; execution is thread-safe.

/// In-place unitary forward/inverse transform of a length-n vector.
void dft(cplx* x, int n);
void idft(cplx* x, int n);

/// Unnormalized forward transform (plain sum, no 1/sqrt scaling); used where
/// a raw DFT such as a channel frequency response is required.
void dft_unnormalized(cplx* x, int n);

/// Column/row transforms of a K-by-M column-major buffer (index k + m*K).
/// Columns are length-K transforms, rows length-M.
void dft_cols(cplx* buf, int K, int M);
void idft_cols(cplx* buf, int K, int M);
void dft_rows(cplx* buf, int K, int M);
void idft_rows(cplx* buf, int K, int M);

inline void dft(CVec& x) { dft(x.data(), static_cast<int>(x.size())); }
inline void idft(CVec& x) { idft(x.data(), static_cast<int>(x.size())); }

}  // namespace gfdm::fft

#endif
