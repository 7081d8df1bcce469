#ifndef GFDM_KERNELS_IMPL_HPP
#define GFDM_KERNELS_IMPL_HPP

// Internal declarations of the per-backend kernel entry points; the public
// dispatching API lives in kernels.hpp.

#include "gfdm/kernels.hpp"

namespace gfdm::kernels::scalar {
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n);
void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n);
void abs2(double* dst, const cplx* a, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n);
}  // namespace gfdm::kernels::scalar

#ifdef GFDM_WITH_AVX2
namespace gfdm::kernels::avx2 {
void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n);
void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n);
void abs2(double* dst, const cplx* a, std::size_t n);
double sum_abs2(const cplx* a, std::size_t n);
void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n);
}  // namespace gfdm::kernels::avx2
#endif

#endif
