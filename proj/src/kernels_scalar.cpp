#include "gfdm/kernels_impl.hpp"

// Reference kernels. Kept free of explicit vectorization so they stay the
// ground truth the SIMD variants are checked against.

namespace gfdm::kernels::scalar {

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * std::conj(b[i]);
}

void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        // a*conj(b)/|b|^2, matching the vector variant (std::complex division
        // uses a scaled algorithm that would differ in the last ulps).
        double br = b[i].real(), bi = b[i].imag();
        double den = br * br + bi * bi;
        double ar = a[i].real(), ai = a[i].imag();
        dst[i] = cplx((ar * br + ai * bi) / den, (ai * br - ar * bi) / den);
    }
}

void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = s * a[i];
}

void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += alpha * x[i];
}

void abs2(double* dst, const cplx* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double sum_abs2(const cplx* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return acc;
}

void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double dr = a[i].real() - b[i].real();
        double di = a[i].imag() - b[i].imag();
        acc[i] += dr * dr + di * di;
    }
}

}  // namespace gfdm::kernels::scalar
