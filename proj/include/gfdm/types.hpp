#ifndef GFDM_TYPES_HPP
#define GFDM_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gfdm {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;  // column-major; vect(X)[k + m*K] == X(k, m)
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// Block geometry: K subcarriers carrying M subsymbols each, D = K*M
/// samples per block.
struct GfdmParams {
    int subcarriers = 1;  // K
    int subsymbols = 1;   // M

    GfdmParams() = default;
    GfdmParams(int K, int M) : subcarriers(K), subsymbols(M) {
        if (K < 1 || M < 1) {
            throw std::invalid_argument("GfdmParams: K and M must be positive (got K=" +
                                        std::to_string(K) + ", M=" + std::to_string(M) + ")");
        }
    }

    int block_size() const { return subcarriers * subsymbols; }  // D

    bool operator==(const GfdmParams& o) const {
        return subcarriers == o.subcarriers && subsymbols == o.subsymbols;
    }
};

/// Numerical tolerances for the matrix predicates. zero_eps is relative:
/// an entry counts as zero when |entry| <= zero_eps_scale * max|entry|.
struct Tolerance {
    double rel_eps = 1e-10;
    double zero_eps_scale = 1e-12;

    double zero_eps(double max_magnitude) const { return zero_eps_scale * max_magnitude; }
};

}  // namespace gfdm

#endif
