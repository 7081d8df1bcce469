#include <doctest.h>

#include <Eigen/SVD>

#include "gfdm/filters.hpp"
#include "gfdm/modem.hpp"
#include "test_support.hpp"

using namespace gfdm;
using testsup::rel_err;

namespace {

CMat dense_modulation(const CharacteristicMatrix& G) { return build_dense(time_from_char(G)).entries; }

// y = C A d + q with C the dense circulant; independent of the fft paths.
CVec dense_transmit(const CharacteristicMatrix& G, const ChannelRealization& ch, const CVec& d) {
    return testsup::circulant(ch.taps, G.D()) * (dense_modulation(G) * d);
}

CVec dense_zf(const CharacteristicMatrix& G, const ChannelRealization& ch, const CVec& y) {
    const int D = G.D();
    CMat CA = testsup::circulant(ch.taps, D) * dense_modulation(G);
    return CA.inverse() * y;
}

// Exact linear MMSE demodulation matrix from the general form.
CMat dense_mmse_matrix(const CharacteristicMatrix& G, const ChannelRealization& ch, double gamma) {
    const int D = G.D();
    CMat CA = testsup::circulant(ch.taps, D) * dense_modulation(G);
    CMat gram = CA * CA.adjoint() + (1.0 / gamma) * CMat::Identity(D, D);
    return CA.adjoint() * gram.inverse();
}

// K x K coupling block for subsymbol m, straight from the definitions.
CMat coupling_block(const CharacteristicMatrix& G, const CVec& chan_freq, double gamma, int m) {
    const int K = G.K(), M = G.M();
    CMat gbar = phase_shift(G).entries;
    CVec u(K), ut(K), v(K), vt(K);
    for (int k = 0; k < K; ++k) {
        u[k] = chan_freq[k * M + m];
        ut[k] = 1.0 / std::conj(u[k]);
        v[k] = gbar(k, m);
        vt[k] = 1.0 / std::conj(v[k]);
    }
    return u * v.transpose() + (1.0 / gamma) * (ut * vt.transpose());
}

ChannelRealization awgn_channel(int D) { return ChannelRealization::from_taps(CVec::Ones(1), D); }

}  // namespace

TEST_SUITE("modem_rx") {

TEST_CASE("zero-forcing receivers invert the channel and modulation exactly") {
    CounterRng rng(51, 0);
    // full size grid, several draws each: fast paths against the dense oracle
    for (int K : {2, 3, 4, 8}) {
        for (int M : {1, 2, 3, 4, 5}) {
            for (int rep = 0; rep < 5; ++rep) {
                const int D = K * M;
                CharacteristicMatrix G = testsup::random_char(K, M, rng);
                ChannelRealization ch = testsup::random_channel(D, std::min(4, D), rng);
                CVec d = testsup::random_cvec(D, rng);
                CVec y = dense_transmit(G, ch, d);
                for (int i = 0; i < D; ++i) y[i] += rng.next_cgauss(0.05);

                CVec want = dense_zf(G, ch, y);
                RxReport r2 = rx_zf_form2(y, G, ch.freq_response);
                RxReport r1 = rx_zf_form1(y, G, ch.freq_response);
                CHECK(rel_err(r2.estimates, want) < 1e-8);
                CHECK(rel_err(r1.estimates, want) < 1e-8);
                CHECK(rel_err(r1.estimates, r2.estimates) < 1e-10);

                CVec noiseless = dense_transmit(G, ch, d);
                CHECK(rel_err(rx_zf_form2(noiseless, G, ch.freq_response).estimates, d) < 1e-8);

                CVec h_f = freq_from_char(inverse_char(G));
                std::vector<int> all_k(K);
                for (int k = 0; k < K; ++k) all_k[k] = k;
                CVec rf = rx_zf_freq(y, h_f, ch.freq_response, G.params, all_k);
                CHECK(rel_err(rf, r2.estimates) < 1e-8);
            }
        }
    }
}

TEST_CASE("awgn form-1 path reduces to the plain inverse") {
    CounterRng rng(52, 0);
    CharacteristicMatrix G = testsup::random_char(8, 4, rng);
    const int D = G.D();
    CVec y = testsup::random_cvec(D, rng);
    RxReport r = rx_zf_form1(y, G, CVec::Ones(D));
    CHECK(rel_err(r.estimates, CVec(dense_modulation(G).inverse() * y)) < 1e-9);
}

TEST_CASE("matched filtering equals zero forcing for a unitary modulation") {
    CounterRng rng(53, 0);
    CharacteristicMatrix U = testsup::random_unitary_char(4, 3, rng);
    const int D = U.D();
    CVec y = testsup::random_cvec(D, rng);
    CVec h_f = freq_from_char(inverse_char(U));
    std::vector<int> all_k = {0, 1, 2, 3};
    CVec got = rx_zf_freq(y, h_f, CVec::Ones(D), U.params, all_k);
    CHECK(rel_err(got, CVec(dense_modulation(U).adjoint() * y)) < 1e-9);
}

TEST_CASE("zf pseudo-inverse fallback matches the dense pseudo-inverse") {
    CounterRng rng(54, 0);
    CharacteristicMatrix G = make_filter({FilterKind::RaisedCosine, 0.7}, GfdmParams(8, 4));
    const int D = G.D();
    ChannelRealization ch = testsup::random_channel(D, 4, rng);
    CVec y = testsup::random_cvec(D, rng);

    CHECK_THROWS_AS(rx_zf_form2(y, G, ch.freq_response), std::invalid_argument);

    CMat A = dense_modulation(G);
    Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    CMat pd = CMat::Zero(D, D);
    for (int i = 0; i < D; ++i) {
        double s = svd.singularValues()(i);
        if (s > 1e-10 * svd.singularValues()(0)) pd(i, i) = 1.0 / s;
    }
    CMat pinv = svd.matrixV() * pd * svd.matrixU().adjoint();
    CVec ceq = y;
    {
        CMat Cinv = testsup::circulant(ch.taps, D).inverse();
        ceq = Cinv * y;
    }
    RxReport r = rx_zf_form2(y, G, ch.freq_response, Tolerance{}, true);
    CHECK(rel_err(r.estimates, CVec(pinv * ceq)) < 1e-8);
}

TEST_CASE("dense mmse receiver: limits and equivalent forms") {
    CounterRng rng(55, 0);
    CharacteristicMatrix G = testsup::random_char(4, 3, rng);
    const int D = G.D();
    ChannelRealization ch = testsup::random_channel(D, 3, rng);
    CVec d = testsup::random_cvec(D, rng);
    CVec y = dense_transmit(G, ch, d);

    // near-infinite SNR approaches zero forcing
    RxReport hi = rx_mmse_dense(y, G, ch.freq_response, 1e12);
    CHECK(rel_err(hi.estimates, dense_zf(G, ch, y)) < 1e-4);

    // [CA + (1/gamma)(CA)^{-H}]^{-1} agrees with the general form
    double gamma = 7.5;
    CMat CA = testsup::circulant(ch.taps, D) * dense_modulation(G);
    CMat alt = (CA + (1.0 / gamma) * CA.inverse().adjoint()).inverse();
    CHECK(rel_err(CMat(dense_mmse_matrix(G, ch, gamma)), alt) < 1e-9);

    RxReport r = rx_mmse_dense(y, G, ch.freq_response, gamma);
    CHECK(rel_err(r.estimates, CVec(alt * y)) < 1e-8);
}

TEST_CASE("dense mmse over awgn with a unitary modulation is a scaled matched filter") {
    CounterRng rng(56, 0);
    CharacteristicMatrix U = testsup::random_unitary_char(4, 2, rng);
    const int D = U.D();
    CVec y = testsup::random_cvec(D, rng);
    double gamma = 4.0;
    RxReport r = rx_mmse_dense(y, U, CVec::Ones(D), gamma);
    CVec want = (1.0 / (1.0 + 1.0 / gamma)) * (dense_modulation(U).adjoint() * y);
    CHECK(rel_err(r.estimates, want) < 1e-9);
}

TEST_CASE("factorized-receiver existence conditions") {
    CounterRng rng(57, 0);
    const int K = 8, M = 4, D = 32;

    CharacteristicMatrix U = testsup::random_unitary_char(K, M, rng);
    ChannelRealization ch = testsup::random_channel(D, 4, rng);
    LowcompWitness w1 = mmse_lowcomp_exists(U, ch.freq_response);
    CHECK(w1.exists);
    for (auto c : w1.per_subsymbol) CHECK(c == LowcompCondition::ConstantFilter);

    CharacteristicMatrix G = testsup::random_char(K, M, rng);
    LowcompWitness w2 = mmse_lowcomp_exists(G, CVec::Ones(D));
    CHECK(w2.exists);
    for (auto c : w2.per_subsymbol) CHECK(c == LowcompCondition::ConstantChannel);

    // distinct bin magnitudes + non-flat filter magnitudes: no factorization
    CharacteristicMatrix rc = make_filter({FilterKind::RaisedCosine, 0.7}, GfdmParams(K, 5));
    CVec cf(40);
    for (int l = 0; l < 40; ++l) cf[l] = cplx(1.0 + 0.02 * l, 0.0);
    LowcompWitness w3 = mmse_lowcomp_exists(rc, cf);
    CHECK_FALSE(w3.exists);
}

TEST_CASE("factorized mmse equals the dense receiver whenever it exists") {
    CounterRng rng(58, 0);
    // unitary modulation, random multipath
    for (double gamma : {1.0, 10.0, 100.0}) {
        CharacteristicMatrix U = testsup::random_unitary_char(8, 4, rng);
        ChannelRealization ch = testsup::random_channel(32, 4, rng);
        CVec d = testsup::random_cvec(32, rng);
        CounterRng noise_rng(580, static_cast<std::uint64_t>(gamma));
        CVec y = dense_transmit(U, ch, d);
        for (int i = 0; i < 32; ++i) y[i] += noise_rng.next_cgauss(1.0 / gamma);
        RxReport fast = rx_mmse_lowcomp(y, U, ch.freq_response, gamma);
        RxReport dense = rx_mmse_dense(y, U, ch.freq_response, gamma);
        CHECK(rel_err(fast.estimates, dense.estimates) < 1e-8);
    }
    // flat channel, random nonsingular modulation
    {
        CharacteristicMatrix G = testsup::random_char(8, 5, rng);
        CVec y = testsup::random_cvec(40, rng);
        RxReport fast = rx_mmse_lowcomp(y, G, CVec::Ones(40), 10.0);
        RxReport dense = rx_mmse_dense(y, G, awgn_channel(40).freq_response, 10.0);
        CHECK(rel_err(fast.estimates, dense.estimates) < 1e-8);
    }
    // flat channel, nonsingular raised-cosine filter
    {
        CharacteristicMatrix rc = make_filter({FilterKind::RaisedCosine, 0.7}, GfdmParams(8, 5));
        CVec y = testsup::random_cvec(40, rng);
        RxReport fast = rx_mmse_lowcomp(y, rc, CVec::Ones(40), 10.0);
        RxReport dense = rx_mmse_dense(y, rc, awgn_channel(40).freq_response, 10.0);
        CHECK(rel_err(fast.estimates, dense.estimates) < 1e-8);
    }
    // high SNR approaches zero forcing
    {
        CharacteristicMatrix U = testsup::random_unitary_char(8, 4, rng);
        ChannelRealization ch = testsup::random_channel(32, 4, rng);
        CVec y = testsup::random_cvec(32, rng);
        RxReport fast = rx_mmse_lowcomp(y, U, ch.freq_response, 1e10);
        CHECK(rel_err(fast.estimates, rx_zf_form2(y, U, ch.freq_response).estimates) < 1e-4);
    }
    // refuses when the conditions fail
    {
        CharacteristicMatrix rc = make_filter({FilterKind::RaisedCosine, 0.7}, GfdmParams(8, 5));
        CVec cf(40);
        for (int l = 0; l < 40; ++l) cf[l] = cplx(1.0 + 0.02 * l, 0.0);
        CVec y = testsup::random_cvec(40, rng);
        CHECK_THROWS_AS(rx_mmse_lowcomp(y, rc, cf, 10.0), std::invalid_argument);
    }
}

TEST_CASE("rank-1 residual equals the second singular value of the coupling block") {
    CounterRng rng(59, 0);
    CharacteristicMatrix G = make_filter({FilterKind::RootRaisedCosine, 1.0}, GfdmParams(8, 5));
    ChannelRealization ch = testsup::random_channel(40, 5, rng);
    double gamma = 5.0;
    AmmseFactors f = ammse_factors(G, ch.freq_response, gamma);
    for (int m = 0; m < G.M(); ++m) {
        CMat Fm = coupling_block(G, ch.freq_response, gamma, m);
        Eigen::JacobiSVD<CMat> svd(Fm);
        CMat approx = f.w.col(m) * f.z.col(m).transpose();
        CHECK(std::abs((Fm - approx).norm() - svd.singularValues()(1)) < 1e-10);
        CHECK(std::abs(f.residual[m] - svd.singularValues()(1)) < 1e-10);
    }
}

TEST_CASE("approximated mmse is exact when the factorization exists") {
    CounterRng rng(60, 0);
    CharacteristicMatrix U = testsup::random_unitary_char(8, 4, rng);
    ChannelRealization ch = testsup::random_channel(32, 4, rng);
    CVec y = testsup::random_cvec(32, rng);
    for (double gamma : {1.0, 10.0}) {
        RxReport am = rx_ammse(y, U, ch.freq_response, gamma);
        RxReport dense = rx_mmse_dense(y, U, ch.freq_response, gamma);
        CHECK(rel_err(am.estimates, dense.estimates) < 1e-8);
        AmmseFactors f = ammse_factors(U, ch.freq_response, gamma);
        CHECK(f.residual.maxCoeff() < 1e-12);
    }
}

TEST_CASE("no exact factorization exists when both conditions fail") {
    CounterRng rng(61, 0);
    for (int i = 0; i < 5; ++i) {
        CharacteristicMatrix G = testsup::random_char(4, 3, rng);  // non-flat magnitudes a.s.
        CVec cf(12);
        for (int l = 0; l < 12; ++l) cf[l] = cplx(0.5 + 0.1 * l, 0.1) * std::exp(cplx(0, rng.next_double()));
        LowcompWitness w = mmse_lowcomp_exists(G, cf);
        CHECK_FALSE(w.exists);
        AmmseFactors f = ammse_factors(G, cf, 3.0);
        CHECK(f.residual.maxCoeff() > 1e-12);
    }
}

TEST_CASE("zf error variances match the dense error autocorrelation") {
    CounterRng rng(62, 0);
    for (int M : {4, 5}) {
        const int K = 8, D = K * M;
        CharacteristicMatrix G = testsup::random_char(K, M, rng);
        ChannelRealization ch = testsup::random_channel(D, 4, rng);
        double n0 = 0.3;

        // R_e = N0 (W A^{-H})^H Dc^{-1} Dc^{-H} (W A^{-H})
        CMat phi = testsup::dft_matrix(D) * dense_modulation(G).inverse().adjoint();
        CMat dcinv = CMat::Zero(D, D);
        for (int l = 0; l < D; ++l) dcinv(l, l) = 1.0 / ch.freq_response[l];
        CMat re = n0 * (phi.adjoint() * dcinv * dcinv.adjoint() * phi);

        RMat got = error_variances_zf(G, ch.freq_response, n0);
        for (int i = 0; i < D; ++i) {
            CHECK(std::abs(got(i % K, i / K) - re(i, i).real()) < 1e-8);
        }
        // constant in m
        for (int k = 0; k < K; ++k)
            for (int m = 1; m < M; ++m) CHECK(got(k, m) == doctest::Approx(got(k, 0)).epsilon(1e-12));
    }
}

TEST_CASE("zf error variances over awgn collapse to the receiver energy") {
    CounterRng rng(63, 0);
    CharacteristicMatrix U = testsup::random_unitary_char(8, 4, rng);
    double n0 = 0.4;
    RMat v = error_variances_zf(U, CVec::Ones(32), n0);
    for (int k = 0; k < 8; ++k)
        for (int m = 0; m < 4; ++m) CHECK(v(k, m) == doctest::Approx(n0).epsilon(1e-10));
}

TEST_CASE("mmse error variances match the dense Wiener autocorrelation") {
    CounterRng rng(64, 0);
    for (int M : {4, 5}) {
        const int K = 8, D = K * M;
        CharacteristicMatrix G = testsup::random_char(K, M, rng);
        ChannelRealization ch = testsup::random_channel(D, 4, rng);
        double gamma = 8.0, es = 1.0;

        // Es (I - Phi^H Dc^H (Dc Dc^H + I/gamma)^{-1} Dc Phi), Phi = W A^{-H}
        CMat phi = testsup::dft_matrix(D) * dense_modulation(G).inverse().adjoint();
        CMat dc = CMat::Zero(D, D);
        for (int l = 0; l < D; ++l) dc(l, l) = ch.freq_response[l];
        CMat mid = dc.adjoint() * (dc * dc.adjoint() + (1.0 / gamma) * CMat::Identity(D, D)).inverse() * dc;
        CMat re = es * (CMat::Identity(D, D) - phi.adjoint() * mid * phi);

        RMat got = error_variances_mmse(G, ch.freq_response, gamma, es);
        for (int i = 0; i < D; ++i) CHECK(std::abs(got(i % K, i / K) - re(i, i).real()) < 1e-8);
    }
}

TEST_CASE("lowcomp and dense reports agree on the error variances for cmcm filters") {
    CounterRng rng(65, 0);
    CharacteristicMatrix U = testsup::random_unitary_char(8, 4, rng);
    ChannelRealization ch = testsup::random_channel(32, 4, rng);
    double gamma = 6.0;
    CVec y = testsup::random_cvec(32, rng);
    RxReport fast = rx_mmse_lowcomp(y, U, ch.freq_response, gamma);
    RxReport dense = rx_mmse_dense(y, U, ch.freq_response, gamma);
    REQUIRE(fast.error_variances.has_value());
    REQUIRE(dense.error_variances.has_value());
    CHECK((*fast.error_variances - *dense.error_variances).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("mmse matrix is a first-order optimum of the empirical mse") {
    CounterRng rng(66, 0);
    const int K = 4, M = 3, D = 12;
    CharacteristicMatrix G = testsup::random_char(K, M, rng);
    ChannelRealization ch = testsup::random_channel(D, 3, rng);
    double gamma = 2.0;
    CMat B = dense_mmse_matrix(G, ch, gamma);
    CMat CA = testsup::circulant(ch.taps, D) * dense_modulation(G);

    // exact expected mse: (Es ||W CA - I||^2 + N0 ||W||^2) / D
    auto expected_mse = [&](const CMat& W) {
        return ((W * CA - CMat::Identity(D, D)).squaredNorm() + (1.0 / gamma) * W.squaredNorm()) / D;
    };

    const int blocks = 10000;
    std::vector<CVec> ds(blocks), ys(blocks);
    for (int b = 0; b < blocks; ++b) {
        CounterRng brng(660, b);
        ds[b] = testsup::random_cvec(D, brng);
        ys[b] = CA * ds[b];
        for (int i = 0; i < D; ++i) ys[b][i] += brng.next_cgauss(1.0 / gamma);
    }
    double exact_base = expected_mse(B);
    for (int trial = 0; trial < 10; ++trial) {
        CounterRng prng(661, trial);
        CMat delta(D, D);
        for (int c = 0; c < D; ++c)
            for (int r = 0; r < D; ++r) delta(r, c) = prng.next_cgauss(1.0);
        delta /= delta.norm();
        CMat W = B + 1e-3 * delta;
        CHECK(expected_mse(W) > exact_base);

        // empirical version with common random numbers: the per-block mse
        // difference must be nonnegative up to its own monte-carlo noise
        double sum = 0.0, sum_sq = 0.0;
        for (int b = 0; b < blocks; ++b) {
            double diff = ((W * ys[b] - ds[b]).squaredNorm() - (B * ys[b] - ds[b]).squaredNorm()) / D;
            sum += diff;
            sum_sq += diff * diff;
        }
        double mean = sum / blocks;
        double se = std::sqrt(std::max(0.0, sum_sq / blocks - mean * mean) / (blocks - 1));
        CHECK(mean >= -3.0 * se);
    }
}

}  // TEST_SUITE
