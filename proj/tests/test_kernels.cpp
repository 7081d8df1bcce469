#include <doctest.h>

#include "gfdm/kernels.hpp"
#include "gfdm/rng.hpp"
#include "test_support.hpp"

using namespace gfdm;

namespace {

struct BackendGuard {
    ~BackendGuard() { kernels::set_backend(kernels::Backend::Auto); }
};

// Run `fn` under both backends and compare the outputs.
template <typename Fn>
void for_both_backends(Fn&& fn) {
    BackendGuard guard;
    kernels::set_backend(kernels::Backend::Scalar);
    auto scalar = fn();
    if (!kernels::avx2_supported()) return;
    kernels::set_backend(kernels::Backend::Avx2);
    auto vec = fn();
    REQUIRE(scalar.size() == vec.size());
    for (size_t i = 0; i < scalar.size(); ++i) {
        CHECK(std::abs(scalar[i] - vec[i]) <= 1e-14 * (1.0 + std::abs(scalar[i])));
    }
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar and simd variants agree on all sizes") {
    CounterRng rng(2024, 7);
    // odd lengths exercise the vector tails
    for (int n : {1, 2, 3, 4, 7, 8, 33, 256, 1021}) {
        CVec a = testsup::random_cvec(n, rng);
        CVec b = testsup::random_cvec(n, rng);

        for_both_backends([&] {
            CVec dst(n);
            kernels::cmul(dst.data(), a.data(), b.data(), n);
            return std::vector<cplx>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            CVec dst(n);
            kernels::cmul_conj(dst.data(), a.data(), b.data(), n);
            return std::vector<cplx>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            CVec dst(n);
            kernels::cdiv(dst.data(), a.data(), b.data(), n);
            return std::vector<cplx>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            CVec dst(n);
            kernels::cscale(dst.data(), a.data(), cplx(0.3, -1.7), n);
            return std::vector<cplx>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            CVec dst = b;
            kernels::caxpy(dst.data(), cplx(-0.9, 0.4), a.data(), n);
            return std::vector<cplx>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            RVec dst(n);
            kernels::abs2(dst.data(), a.data(), n);
            return std::vector<double>(dst.data(), dst.data() + n);
        });
        for_both_backends([&] {
            return std::vector<double>{kernels::sum_abs2(a.data(), n)};
        });
        for_both_backends([&] {
            RVec acc = RVec::Constant(n, 0.25);
            kernels::acc_abs2_diff(acc.data(), a.data(), b.data(), n);
            return std::vector<double>(acc.data(), acc.data() + n);
        });
    }
}

TEST_CASE("kernel values match the definitions") {
    CVec a(2), b(2);
    a << cplx(1.0, 2.0), cplx(-0.5, 0.0);
    b << cplx(3.0, -1.0), cplx(0.0, 2.0);

    CVec dst(2);
    kernels::cmul(dst.data(), a.data(), b.data(), 2);
    CHECK(std::abs(dst[0] - cplx(5.0, 5.0)) < 1e-15);
    CHECK(std::abs(dst[1] - cplx(0.0, -1.0)) < 1e-15);

    kernels::cmul_conj(dst.data(), a.data(), b.data(), 2);
    CHECK(std::abs(dst[0] - cplx(1.0, 7.0)) < 1e-15);

    kernels::cdiv(dst.data(), a.data(), b.data(), 2);
    CHECK(std::abs(dst[0] * b[0] - a[0]) < 1e-15);
    CHECK(std::abs(dst[1] * b[1] - a[1]) < 1e-15);

    CHECK(kernels::sum_abs2(a.data(), 2) == doctest::Approx(5.25).epsilon(1e-14));
}

}  // TEST_SUITE
