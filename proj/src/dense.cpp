#include "gfdm/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gfdm {

DenseGfdmMatrix build_dense(const PrototypeFilter& g, int max_block) {
    const int K = g.params.subcarriers, M = g.params.subsymbols, D = K * M;
    if (D > max_block) {
        throw std::invalid_argument("build_dense: D=" + std::to_string(D) + " exceeds dense limit " +
                                    std::to_string(max_block));
    }
    CMat A(D, D);
    for (int m = 0; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            const int col = k + m * K;
            for (int n = 0; n < D; ++n) {
                int idx = (n - m * K) % D;
                if (idx < 0) idx += D;
                double phi = 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(n) / K;
                A(n, col) = g.taps[idx] * cplx(std::cos(phi), std::sin(phi));
            }
        }
    }
    return DenseGfdmMatrix{g.params, std::move(A)};
}

}  // namespace gfdm
