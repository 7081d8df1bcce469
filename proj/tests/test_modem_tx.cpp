#include <doctest.h>

#include "gfdm/filters.hpp"
#include "gfdm/modem.hpp"
#include "test_support.hpp"

using namespace gfdm;
using testsup::rel_err;

TEST_SUITE("modem_tx") {

TEST_CASE("impulse data selects the prototype filter column") {
    CounterRng rng(41, 0);
    CharacteristicMatrix G = testsup::random_char(4, 3, rng);
    CVec d = CVec::Zero(12);
    d[0] = 1.0;
    GfdmFrame frame = GfdmFrame::full(G.params, d);
    CVec g = time_from_char(G).taps;
    CHECK(rel_err(tx_direct(frame, G), g) < 1e-12);
    CHECK(rel_err(tx_form1(frame, G), g) < 1e-10);
    CHECK(rel_err(tx_form2(frame, G), g) < 1e-10);
}

TEST_CASE("rectangular M=1 transmitter is the inverse DFT") {
    const int K = 8;
    CharacteristicMatrix G = make_filter({FilterKind::Rectangular}, GfdmParams(K, 1));
    CounterRng rng(42, 0);
    CVec d = testsup::random_cvec(K, rng);
    GfdmFrame frame = GfdmFrame::full(G.params, d);
    CVec want = testsup::dft_matrix(K).adjoint() * d;
    CHECK(rel_err(tx_direct(frame, G), want) < 1e-12);
    CHECK(rel_err(tx_form1(frame, G), want) < 1e-10);
}

TEST_CASE("all fast transmitters match the dense oracle") {
    CounterRng rng(43, 0);
    for (int K : {2, 3, 4, 8}) {
        for (int M : {1, 2, 3, 4, 5}) {
            CharacteristicMatrix G = testsup::random_char(K, M, rng);
            CVec d = testsup::random_cvec(K * M, rng);
            GfdmFrame frame = GfdmFrame::full(G.params, d);
            CVec want = tx_direct(frame, G);
            CHECK(rel_err(tx_form1(frame, G), want) < 1e-10);
            CHECK(rel_err(tx_form2(frame, G), want) < 1e-10);
            CHECK(rel_err(tx_freq_domain(frame, freq_from_char(G)), want) < 1e-10);
        }
    }
}

TEST_CASE("transmitters are linear in data and filter") {
    CounterRng rng(44, 0);
    CharacteristicMatrix G = testsup::random_char(8, 5, rng);
    GfdmFrame zero = GfdmFrame::full(G.params, CVec::Zero(40));
    CHECK(tx_form1(zero, G).norm() < 1e-14);
    CHECK(tx_form2(zero, G).norm() < 1e-14);

    CVec d = testsup::random_cvec(40, rng);
    GfdmFrame frame = GfdmFrame::full(G.params, d);
    CharacteristicMatrix G2(G.params, CMat(cplx(2.0, -1.0) * G.entries));
    CHECK(rel_err(tx_form1(frame, G2), CVec(cplx(2.0, -1.0) * tx_form1(frame, G))) < 1e-12);
}

TEST_CASE("frequency-domain transmitter honors a subcarrier subset") {
    CounterRng rng(45, 0);
    const int K = 4, M = 3;
    CharacteristicMatrix G = testsup::random_char(K, M, rng);
    CVec d = testsup::random_cvec(K * M, rng);
    // keep only subcarrier 0
    for (int m = 0; m < M; ++m)
        for (int k = 1; k < K; ++k) d[k + m * K] = cplx(0.0, 0.0);
    GfdmFrame frame = GfdmFrame::full(G.params, d);
    frame.active_subcarriers = {0};
    frame.validate();
    CVec want = tx_direct(GfdmFrame::full(G.params, d), G);
    CHECK(rel_err(tx_freq_domain(frame, freq_from_char(G)), want) < 1e-10);
}

TEST_CASE("frequency-domain sparsity contract") {
    GfdmParams p(8, 5);
    CharacteristicMatrix G = make_filter({FilterKind::Dirichlet}, p);
    CVec g_f = freq_from_char(G);

    int nonzeros = 0;
    for (int l = 0; l < p.block_size(); ++l)
        if (std::abs(g_f[l]) > 1e-9) ++nonzeros;
    CHECK(nonzeros == p.subsymbols);  // rectangular support of width M bins

    CounterRng rng(46, 0);
    GfdmFrame frame = GfdmFrame::full(p, testsup::random_cvec(p.block_size(), rng));
    CHECK_NOTHROW(tx_freq_domain(frame, g_f, 1));  // M nonzeros <= 1*M

    CharacteristicMatrix Grc = make_filter({FilterKind::RaisedCosine, 0.7}, GfdmParams(8, 5));
    CHECK_THROWS_AS(tx_freq_domain(frame, freq_from_char(Grc), 1), std::invalid_argument);
}

TEST_CASE("frames reject nonzero symbols outside the active sets") {
    GfdmParams p(4, 3);
    CVec d = CVec::Ones(12);
    GfdmFrame frame = GfdmFrame::full(p, d);
    frame.active_subcarriers = {0, 1};
    CHECK_THROWS_AS(frame.validate(), std::invalid_argument);
}

}  // TEST_SUITE
