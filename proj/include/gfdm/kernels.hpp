#ifndef GFDM_KERNELS_HPP
#define GFDM_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace gfdm::kernels {

using cplx = std::complex<double>;

/// Elementwise complex vector kernels used in the transceiver inner loops.
/// A scalar reference implementation always exists; an AVX2 variant is
/// selected at runtime when the CPU supports it. All variants compute the
/// same values (the AVX2 paths may differ in the last ulp through FMA
/// contraction); equivalence is covered by tests.

enum class Backend { Auto, Scalar, Avx2 };

/// Force a specific backend (tests); Auto restores runtime detection.
void set_backend(Backend b);
const char* active_backend_name();
bool avx2_supported();

/// dst[i] = a[i] * b[i]
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
/// dst[i] = a[i] * conj(b[i])
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
/// dst[i] = a[i] / b[i]
void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
/// dst[i] = s * a[i]
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n);
/// dst[i] += alpha * x[i]
void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n);
/// dst[i] = |a[i]|^2
void abs2(double* dst, const cplx* a, std::size_t n);
/// sum over i of |a[i]|^2
double sum_abs2(const cplx* a, std::size_t n);
/// acc[i] += |a[i] - b[i]|^2
void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n);

}  // namespace gfdm::kernels

#endif
