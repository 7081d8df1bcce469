#include "gfdm/filters.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gfdm {

namespace {

double sinc(double x) {
    if (std::abs(x) < 1e-12) return 1.0;
    return std::sin(M_PI * x) / (M_PI * x);
}

// Raised-cosine impulse response at u = t/T (unit symbol period).
double rc_pulse(double u, double a) {
    if (a <= 0.0) return sinc(u);
    double den = 1.0 - 4.0 * a * a * u * u;
    if (std::abs(den) < 1e-9) {
        // removable singularity at u = +-1/(2a)
        return (M_PI / 4.0) * sinc(1.0 / (2.0 * a));
    }
    return sinc(u) * std::cos(M_PI * a * u) / den;
}

// Root-raised-cosine impulse response at u = t/T.
double rrc_pulse(double u, double a) {
    if (std::abs(u) < 1e-12) return 1.0 - a + 4.0 * a / M_PI;
    if (a <= 0.0) return sinc(u);
    double den = M_PI * u * (1.0 - 16.0 * a * a * u * u);
    if (std::abs(1.0 - 16.0 * a * a * u * u) < 1e-9) {
        // removable singularity at u = +-1/(4a)
        double c = M_PI / (4.0 * a);
        return (a / std::sqrt(2.0)) * ((1.0 + 2.0 / M_PI) * std::sin(c) + (1.0 - 2.0 / M_PI) * std::cos(c));
    }
    return (std::sin(M_PI * u * (1.0 - a)) + 4.0 * a * u * std::cos(M_PI * u * (1.0 + a))) / den;
}

// Frequency support of the (modified) Dirichlet pulse: bins
// {0..floor((M-1)/2)} and {D-ceil((M-1)/2)..D-1}.
void dirichlet_support(int M, int D, int* lo_count, int* hi_count) {
    *lo_count = (M - 1) / 2 + 1;
    *hi_count = (M - 1) - (M - 1) / 2;
    (void)D;
}

CharacteristicMatrix scaled_to_energy(CharacteristicMatrix G, double target) {
    double xi = energy(G);
    if (xi <= 0.0) throw std::invalid_argument("make_filter: zero-energy filter");
    G.entries *= std::sqrt(target / xi);
    return G;
}

}  // namespace

PrototypeFilter rc_time_taps(const GfdmParams& params, double rolloff, FilterKind kind) {
    if (rolloff < 0.0 || rolloff > 1.0) {
        throw std::invalid_argument("rc_time_taps: roll-off " + std::to_string(rolloff) +
                                    " outside [0, 1]");
    }
    if (kind != FilterKind::RaisedCosine && kind != FilterKind::RootRaisedCosine) {
        throw std::invalid_argument("rc_time_taps: kind must be RC or RRC");
    }
    const int K = params.subcarriers, D = params.block_size();
    // Offsets wrap to the symmetric window -floor(D/2)..ceil(D/2)-1 (for odd D
    // the floor keeps the support symmetric, which the even-symmetry
    // postcondition [g]_n = [g]_{D-n} requires).
    const int half = D / 2;
    CVec taps(D);
    for (int n = 0; n < D; ++n) {
        int wrapped = ((n + half) % D) - half;
        double u = static_cast<double>(wrapped) / K;
        double v = (kind == FilterKind::RaisedCosine) ? rc_pulse(u, rolloff) : rrc_pulse(u, rolloff);
        taps[n] = cplx(v, 0.0);
    }
    double norm = std::sqrt(taps.squaredNorm());
    if (norm <= 0.0) throw std::invalid_argument("rc_time_taps: zero-energy taps");
    taps /= norm;
    return PrototypeFilter(params, std::move(taps));
}

CharacteristicMatrix make_filter(const FilterSpec& spec, const GfdmParams& params,
                                 const ChannelRealization* csi) {
    const int K = params.subcarriers, M = params.subsymbols, D = params.block_size();
    if (spec.target_energy <= 0.0) throw std::invalid_argument("make_filter: target energy must be positive");

    switch (spec.kind) {
        case FilterKind::RaisedCosine:
        case FilterKind::RootRaisedCosine: {
            CharacteristicMatrix G = char_from_time(rc_time_taps(params, spec.rolloff, spec.kind));
            return scaled_to_energy(std::move(G), spec.target_energy);
        }
        case FilterKind::Dirichlet:
        case FilterKind::ModifiedDirichlet: {
            int lo, hi;
            dirichlet_support(M, D, &lo, &hi);
            CVec g_f = CVec::Zero(D);
            double amp = std::sqrt(static_cast<double>(K));
            for (int l = 0; l < lo; ++l) {
                if (spec.kind == FilterKind::Dirichlet) {
                    g_f[l] = amp;
                } else {
                    double phi = M_PI * static_cast<double>(l) / D;
                    g_f[l] = amp * cplx(std::cos(phi), std::sin(phi));
                }
            }
            for (int i = 0; i < hi; ++i) {
                int l = D - 1 - i;
                if (spec.kind == FilterKind::Dirichlet) {
                    g_f[l] = amp;
                } else {
                    double phi = M_PI * static_cast<double>(l - D) / D;
                    g_f[l] = amp * cplx(std::cos(phi), std::sin(phi));
                }
            }
            return scaled_to_energy(char_from_freq(g_f, params), spec.target_energy);
        }
        case FilterKind::Cmcm: {
            if (spec.phases.rows() != K || spec.phases.cols() != M) {
                throw std::invalid_argument("make_filter: CMCM phase matrix must be K x M");
            }
            CMat e(K, M);
            double amp = std::sqrt(spec.target_energy);
            for (int m = 0; m < M; ++m)
                for (int k = 0; k < K; ++k)
                    e(k, m) = amp * cplx(std::cos(spec.phases(k, m)), std::sin(spec.phases(k, m)));
            return CharacteristicMatrix(params, std::move(e));
        }
        case FilterKind::Rectangular: {
            if (M != 1) throw std::invalid_argument("make_filter: rectangular window requires M == 1");
            CMat e = CMat::Constant(K, 1, cplx(std::sqrt(spec.target_energy), 0.0));
            return CharacteristicMatrix(params, std::move(e));
        }
        case FilterKind::StaticOptimal: {
            if (!csi) throw std::invalid_argument("make_filter: StaticOptimal requires channel state");
            if (csi->block_size() != D) throw std::invalid_argument("make_filter: channel block size mismatch");
            if (spec.phases.rows() != K || spec.phases.cols() != M) {
                throw std::invalid_argument("make_filter: StaticOptimal phase matrix must be K x M");
            }
            RVec alpha = RVec::Zero(M);
            for (int l = 0; l < M; ++l) {
                for (int r = 0; r < K; ++r) {
                    double mag2 = std::norm(csi->freq_response[l + r * M]);
                    if (mag2 <= 0.0) {
                        throw std::invalid_argument("make_filter: channel null at bin " +
                                                    std::to_string(l + r * M));
                    }
                    alpha[l] += 1.0 / mag2;
                }
            }
            double sum_sqrt = alpha.cwiseSqrt().sum();
            double c = M * spec.target_energy / sum_sqrt;  // fixes xi_G
            CMat e(K, M);
            for (int m = 0; m < M; ++m) {
                double mag = std::sqrt(c * std::sqrt(alpha[m]));
                for (int k = 0; k < K; ++k)
                    e(k, m) = mag * cplx(std::cos(spec.phases(k, m)), std::sin(spec.phases(k, m)));
            }
            return CharacteristicMatrix(params, std::move(e));
        }
    }
    throw std::invalid_argument("make_filter: unknown filter kind");
}

RMat builtin_phase_set(std::string_view name) {
    if (name == "cmcm1_k8m4") {
        RMat p(8, 4);
        p << 0.75, 2.50, -1.09, -1.98,
            -2.95, 0.16, 1.29, 1.59,
            -2.10, 0.59, 3.12, -0.31,
            0.53, 3.04, 0.28, -1.11,
            1.58, 1.37, -3.02, -1.80,
            -3.11, 1.05, 0.47, -0.73,
            0.78, -1.88, 0.85, -2.24,
            1.57, -2.83, -0.56, 2.81;
        return p;
    }
    if (name == "cmcm2_k8m4") {
        RMat p(8, 4);
        p << -0.31, -3.11, 0.82, -1.04,
            -1.70, 2.53, -0.29, 0.71,
            -2.49, 2.19, -2.69, -1.55,
            -1.44, -0.77, -2.06, 0.19,
            0.23, -1.00, 0.31, 0.48,
            0.95, -1.50, 2.26, 0.09,
            0.21, -1.03, 0.76, 0.57,
            2.17, 1.79, -2.15, 1.88;
        return p;
    }
    if (name == "cmcm1_k8m5") {
        RMat p(8, 5);
        p << 0.62, -0.40, -1.36, -2.16, -1.94,
            -1.30, -2.65, 2.78, -2.95, 2.17,
            1.01, 0.07, 2.86, 2.92, -0.60,
            1.75, 2.09, 1.59, 0.48, -1.89,
            1.55, -1.83, -0.11, -3.01, -0.57,
            0.27, -1.21, -2.81, 0.37, -2.27,
            -1.48, 0.46, 2.58, 2.72, 0.44,
            1.23, -0.31, 1.19, 0.06, -0.35;
        return p;
    }
    if (name == "cmcm2_k8m5") {
        RMat p(8, 5);
        p << -2.89, -1.87, -2.40, -3.02, -1.22,
            0.73, 2.22, -2.79, 3.08, 3.04,
            0.90, -2.14, -1.51, -2.13, -1.69,
            -2.42, -2.99, -1.16, -0.08, -0.63,
            -1.94, -2.57, 2.22, 1.17, 2.89,
            1.33, 1.10, -2.51, -1.44, 1.36,
            -3.06, -3.05, -2.54, -3.09, 0.36,
            0.53, 0.22, 2.88, -2.08, 0.54;
        return p;
    }
    throw std::invalid_argument("builtin_phase_set: unknown name '" + std::string(name) + "'");
}

}  // namespace gfdm
