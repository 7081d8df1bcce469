#ifndef GFDM_DENSE_HPP
#define GFDM_DENSE_HPP

#include "gfdm/char_matrix.hpp"

namespace gfdm {

/// D-by-D modulation matrix built column by column from the prototype filter.
/// Retained as the brute-force oracle for the fast transform paths and for
/// small-block dense receivers; O(D^2) memory.
struct DenseGfdmMatrix {
    GfdmParams params;
    CMat entries;  // D x D
};

inline constexpr int kDefaultDenseLimit = 4096;

/// Column k + m*K holds the prototype circularly shifted by m*K samples and
/// modulated onto subcarrier k. Refuses D > max_block unless overridden.
DenseGfdmMatrix build_dense(const PrototypeFilter& g, int max_block = kDefaultDenseLimit);

}  // namespace gfdm

#endif
