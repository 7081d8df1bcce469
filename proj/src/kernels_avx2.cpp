#include "gfdm/kernels_impl.hpp"

#ifdef GFDM_WITH_AVX2

#include <immintrin.h>

// AVX2/FMA kernels. One __m256d holds two interleaved complex doubles
// [re0 im0 re1 im1]; remainders fall through to the scalar tail.

namespace gfdm::kernels::avx2 {

namespace {

// [ar ai] * [br bi] -> [ar*br - ai*bi, ai*br + ar*bi]
inline __m256d mul_cc(__m256d va, __m256d vb) {
    __m256d b_re = _mm256_movedup_pd(vb);         // [br br]
    __m256d b_im = _mm256_permute_pd(vb, 0xF);    // [bi bi]
    __m256d a_sw = _mm256_permute_pd(va, 0x5);    // [ai ar]
    __m256d t = _mm256_mul_pd(a_sw, b_im);        // [ai*bi ar*bi]
    return _mm256_fmaddsub_pd(va, b_re, t);
}

// [ar ai] * conj([br bi]) -> [ar*br + ai*bi, ai*br - ar*bi]
inline __m256d mul_cc_conj(__m256d va, __m256d vb) {
    __m256d b_re = _mm256_movedup_pd(vb);
    __m256d b_im = _mm256_permute_pd(vb, 0xF);
    __m256d a_sw = _mm256_permute_pd(va, 0x5);
    __m256d t = _mm256_mul_pd(a_sw, b_im);
    return _mm256_fmsubadd_pd(va, b_re, t);
}

inline __m256d abs2_dup(__m256d vb) {
    __m256d sq = _mm256_mul_pd(vb, vb);
    return _mm256_hadd_pd(sq, sq);  // [|b0|^2 |b0|^2 |b1|^2 |b1|^2]
}

}  // namespace

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(d + 2 * i, mul_cc(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        _mm256_storeu_pd(d + 2 * i, mul_cc_conj(va, vb));
    }
    for (; i < n; ++i) dst[i] = a[i] * std::conj(b[i]);
}

void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        __m256d vb = _mm256_loadu_pd(pb + 2 * i);
        __m256d num = mul_cc_conj(va, vb);
        _mm256_storeu_pd(d + 2 * i, _mm256_div_pd(num, abs2_dup(vb)));
    }
    for (; i < n; ++i) {
        double br = b[i].real(), bi = b[i].imag();
        double den = br * br + bi * bi;
        double ar = a[i].real(), ai = a[i].imag();
        dst[i] = cplx((ar * br + ai * bi) / den, (ai * br - ar * bi) / den);
    }
}

void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* pa = reinterpret_cast<const double*>(a);
    alignas(32) double sbuf[4] = {s.real(), s.imag(), s.real(), s.imag()};
    __m256d vs = _mm256_load_pd(sbuf);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        _mm256_storeu_pd(d + 2 * i, mul_cc(va, vs));
    }
    for (; i < n; ++i) dst[i] = s * a[i];
}

void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n) {
    std::size_t i = 0;
    auto* d = reinterpret_cast<double*>(dst);
    const auto* px = reinterpret_cast<const double*>(x);
    alignas(32) double sbuf[4] = {alpha.real(), alpha.imag(), alpha.real(), alpha.imag()};
    __m256d vs = _mm256_load_pd(sbuf);
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(px + 2 * i);
        __m256d vd = _mm256_loadu_pd(d + 2 * i);
        _mm256_storeu_pd(d + 2 * i, _mm256_add_pd(vd, mul_cc(vx, vs)));
    }
    for (; i < n; ++i) dst[i] += alpha * x[i];
}

void abs2(double* dst, const cplx* a, std::size_t n) {
    std::size_t i = 0;
    const auto* pa = reinterpret_cast<const double*>(a);
    for (; i + 4 <= n; i += 4) {
        __m256d v0 = _mm256_loadu_pd(pa + 2 * i);      // c0 c1
        __m256d v1 = _mm256_loadu_pd(pa + 2 * i + 4);  // c2 c3
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        // h = [|c0| |c2| |c1| |c3|] -> reorder to [|c0| |c1| |c2| |c3|]
        _mm256_storeu_pd(dst + i, _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0)));
    }
    for (; i < n; ++i) dst[i] = a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
}

double sum_abs2(const cplx* a, std::size_t n) {
    std::size_t i = 0;
    const auto* pa = reinterpret_cast<const double*>(a);
    __m256d acc = _mm256_setzero_pd();
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(pa + 2 * i);
        acc = _mm256_fmadd_pd(va, va, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) total += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    return total;
}

void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n) {
    std::size_t i = 0;
    const auto* pa = reinterpret_cast<const double*>(a);
    const auto* pb = reinterpret_cast<const double*>(b);
    for (; i + 4 <= n; i += 4) {
        __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i), _mm256_loadu_pd(pb + 2 * i));
        __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(pa + 2 * i + 4), _mm256_loadu_pd(pb + 2 * i + 4));
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(d0, d0), _mm256_mul_pd(d1, d1));
        __m256d v = _mm256_permute4x64_pd(h, _MM_SHUFFLE(3, 1, 2, 0));
        _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), v));
    }
    for (; i < n; ++i) {
        double dr = a[i].real() - b[i].real();
        double di = a[i].imag() - b[i].imag();
        acc[i] += dr * dr + di * di;
    }
}

}  // namespace gfdm::kernels::avx2

#endif  // GFDM_WITH_AVX2
