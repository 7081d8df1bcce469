#ifndef GFDM_FILTERS_HPP
#define GFDM_FILTERS_HPP

#include <string_view>

#include "gfdm/channel.hpp"
#include "gfdm/char_matrix.hpp"

namespace gfdm {

enum class FilterKind {
    RaisedCosine,
    RootRaisedCosine,
    Dirichlet,
    ModifiedDirichlet,
    Cmcm,
    Rectangular,
    StaticOptimal,
};

/// Prototype filter recipe. `rolloff` applies to the RC/RRC kinds; `phases`
/// (K x M, radians) applies to Cmcm and StaticOptimal; `target_energy` fixes
/// xi_G of the result.
struct FilterSpec {
    FilterKind kind = FilterKind::Dirichlet;
    double rolloff = 0.0;
    RMat phases;
    double target_energy = 1.0;
};

/// Build the characteristic matrix for a filter spec. StaticOptimal requires
/// channel state (all frequency bins nonzero): column magnitudes follow
/// |G[k][l]|^2 = c*sqrt(alpha_l) with alpha_l = sum_r 1/|C_{l+rM}|^2 and c
/// fixing the energy. Rectangular requires M == 1.
CharacteristicMatrix make_filter(const FilterSpec& spec, const GfdmParams& params,
                                 const ChannelRealization* csi = nullptr);

/// Unit-energy RC/RRC time taps sampled on signed positions
/// n~ = ((n + ceil(D/2)) mod D) - ceil(D/2) with symbol period K samples.
/// The result is real and even-symmetric: g[n] = g[D-n].
PrototypeFilter rc_time_taps(const GfdmParams& params, double rolloff, FilterKind kind);

/// Fixed K x M phase matrices used by the reproduction scenarios. Valid names:
/// cmcm1_k8m4, cmcm2_k8m4, cmcm1_k8m5, cmcm2_k8m5.
RMat builtin_phase_set(std::string_view name);

}  // namespace gfdm

#endif
