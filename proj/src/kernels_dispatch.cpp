#include <atomic>
#include <stdexcept>

#include "gfdm/kernels_impl.hpp"

namespace gfdm::kernels {

namespace {

struct Table {
    void (*cmul)(cplx*, const cplx*, const cplx*, std::size_t);
    void (*cmul_conj)(cplx*, const cplx*, const cplx*, std::size_t);
    void (*cdiv)(cplx*, const cplx*, const cplx*, std::size_t);
    void (*cscale)(cplx*, const cplx*, cplx, std::size_t);
    void (*caxpy)(cplx*, cplx, const cplx*, std::size_t);
    void (*abs2)(double*, const cplx*, std::size_t);
    double (*sum_abs2)(const cplx*, std::size_t);
    void (*acc_abs2_diff)(double*, const cplx*, const cplx*, std::size_t);
    const char* name;
};

constexpr Table kScalar = {scalar::cmul,  scalar::cmul_conj, scalar::cdiv,          scalar::cscale,
                           scalar::caxpy, scalar::abs2,      scalar::sum_abs2,      scalar::acc_abs2_diff,
                           "scalar"};

#ifdef GFDM_WITH_AVX2
constexpr Table kAvx2 = {avx2::cmul,  avx2::cmul_conj, avx2::cdiv,          avx2::cscale,
                         avx2::caxpy, avx2::abs2,      avx2::sum_abs2,      avx2::acc_abs2_diff,
                         "avx2"};
#endif

bool detect_avx2() {
#ifdef GFDM_WITH_AVX2
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* auto_table() {
#ifdef GFDM_WITH_AVX2
    static const Table* t = detect_avx2() ? &kAvx2 : &kScalar;
    return t;
#else
    return &kScalar;
#endif
}

std::atomic<const Table*> g_active{nullptr};

const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (!t) {
        t = auto_table();
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

}  // namespace

bool avx2_supported() { return detect_avx2(); }

void set_backend(Backend b) {
    switch (b) {
        case Backend::Scalar:
            g_active.store(&kScalar, std::memory_order_release);
            break;
        case Backend::Avx2:
#ifdef GFDM_WITH_AVX2
            if (detect_avx2()) {
                g_active.store(&kAvx2, std::memory_order_release);
                break;
            }
#endif
            throw std::runtime_error("kernels: AVX2 backend not available on this CPU/build");
        case Backend::Auto:
            g_active.store(auto_table(), std::memory_order_release);
            break;
    }
}

const char* active_backend_name() { return active().name; }

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) { active().cmul(dst, a, b, n); }
void cmul_conj(cplx* dst, const cplx* a, const cplx* b, std::size_t n) { active().cmul_conj(dst, a, b, n); }
void cdiv(cplx* dst, const cplx* a, const cplx* b, std::size_t n) { active().cdiv(dst, a, b, n); }
void cscale(cplx* dst, const cplx* a, cplx s, std::size_t n) { active().cscale(dst, a, s, n); }
void caxpy(cplx* dst, cplx alpha, const cplx* x, std::size_t n) { active().caxpy(dst, alpha, x, n); }
void abs2(double* dst, const cplx* a, std::size_t n) { active().abs2(dst, a, n); }
double sum_abs2(const cplx* a, std::size_t n) { return active().sum_abs2(a, n); }
void acc_abs2_diff(double* acc, const cplx* a, const cplx* b, std::size_t n) {
    active().acc_abs2_diff(acc, a, b, n);
}

}  // namespace gfdm::kernels
