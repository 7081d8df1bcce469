#ifndef GFDM_QAM_HPP
#define GFDM_QAM_HPP

#include <cstdint>
#include <vector>

#include "gfdm/types.hpp"

namespace gfdm {

enum class Constellation { Qam4, Qam16 };

int bits_per_symbol(Constellation c);

/// Gray-mapped square QAM with unit average symbol energy.
CVec qam_map(const std::vector<std::uint8_t>& bits, Constellation c);
std::vector<std::uint8_t> qam_demap(const CVec& symbols, Constellation c);

/// Nearest constellation point (minimum-distance slicing).
CVec qam_slice(const CVec& estimates, Constellation c);

/// Index of the nearest constellation point; integer-safe symbol comparison.
Eigen::VectorXi qam_hard_indices(const CVec& estimates, Constellation c);

}  // namespace gfdm

#endif
