#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpmult/grid.hpp"
#include "lpmult/symbol.hpp"

namespace lpmult {

/// Memory layout of a multiplier application along one block of d torus axes:
/// flat index = ((outer * block_size + block) * inner + inner_index) * components + c.
struct BlockLayout {
    std::size_t outer = 1;
    TorusGrid block;
    std::size_t inner = 1;
};

/// Fourier transform along the block axes, multiply every coefficient by the
/// symbol at its centered lattice frequency, transform back. The component
/// count changes from symbol.cols() to symbol.rows().
std::vector<cdouble> apply_block_multiplier(std::span<const cdouble> values, const BlockLayout& layout,
                                            const MultiplierSymbol& symbol);

/// Mean over the block axes, shaped [outer][inner][components].
std::vector<cdouble> block_mean(std::span<const cdouble> values, const BlockLayout& layout, int components);

/// Normalized DFT coefficients along all axes of a single-block function
/// (coefficient of e^{i(k, theta)}, frequencies at the same flat index as
/// TorusGrid::frequency_vector).
std::vector<cdouble> fourier_coefficients(const GridFunction& f);

} // namespace lpmult
