#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lpmult/grid.hpp"
#include "lpmult/rng.hpp"
#include "lpmult/spectral.hpp"
#include "lpmult/symbol.hpp"

namespace lpmult {

inline constexpr std::size_t kDefaultPointCap = std::size_t{1} << 24;

/// Samples on the product grid (T^d)^J, one TorusGrid per block of variables.
/// Block 0 varies slowest; value components are innermost.
class TensorGridFunction {
public:
    TensorGridFunction(int blocks, TorusGrid block_grid, int components, std::size_t point_cap = kDefaultPointCap);
    TensorGridFunction(int blocks, TorusGrid block_grid, int components, std::vector<cdouble> values,
                       std::size_t point_cap = kDefaultPointCap);

    static TensorGridFunction from_grid_function(const GridFunction& f);

    int blocks() const noexcept { return blocks_; }
    const TorusGrid& block_grid() const noexcept { return grid_; }
    int components() const noexcept { return components_; }
    std::size_t points() const noexcept { return points_; }

    std::span<const cdouble> values() const noexcept { return values_; }
    std::span<cdouble> values() noexcept { return values_; }
    cdouble& at(std::size_t point, int component = 0) { return values_[point * components_ + component]; }
    cdouble at(std::size_t point, int component = 0) const { return values_[point * components_ + component]; }

    /// Point index within block k of a flat product-grid point.
    std::size_t block_point(std::size_t flat, int block) const;
    BlockLayout layout(int block) const;

    /// Same function viewed on more blocks (constant in the new trailing blocks).
    TensorGridFunction extended(int blocks) const;

    TensorGridFunction& operator+=(const TensorGridFunction& other);

private:
    int blocks_;
    TorusGrid grid_;
    int components_;
    std::size_t points_;
    std::vector<cdouble> values_;
};

double lp_norm(const TensorGridFunction& f, double p);

/// L^2 size of the block-k zero Fourier mode, i.e. of the mean over block k.
double zero_mode_mass(const TensorGridFunction& f, int block);

/// Random trigonometric polynomial on the product grid: complex Gaussian
/// coefficients for every frequency with |j|_inf <= degree in each block.
TensorGridFunction random_tensor_polynomial(int blocks, const TorusGrid& block_grid, int degree, Rng& rng);

/// T^k: multiply every joint Fourier coefficient by M(j_k) of the chosen block
/// (0-based); other blocks untouched. Requires the block mean to vanish.
TensorGridFunction tensor_lift_apply(const TensorGridFunction& phi, const MultiplierSymbol& symbol, int block,
                                     double mean_tolerance = 1e-12);

/// Sum of summands of possibly different block counts, broadcast to the largest.
TensorGridFunction sum_broadcast(std::span<const TensorGridFunction> summands);

struct ShearCheck {
    double lhs = 0.0; ///< eta-average of ||sum_k f_k(theta_1 + N eta, ..., theta_k + N^k eta)||_p^p
    double rhs = 0.0; ///< ||sum_k f_k||_p^p
    bool aligned = true;
    std::size_t shifts = 0;
};

/// Both sides of the shear identity. Without explicit shifts the eta set is
/// the full aligned lattice (h / N) Z^d mod 2 pi, h the grid spacing. A shift
/// with N eta off the grid lattice is evaluated by spectral translation and
/// flagged as not aligned.
ShearCheck shear_norm_check(std::span<const TensorGridFunction> summands, int shear, double p,
                            std::span<const std::vector<double>> etas = {});

/// The transformed identity: T^k applied to each summand in its last block first.
ShearCheck shear_norm_check_transformed(std::span<const TensorGridFunction> summands, const MultiplierSymbol& symbol,
                                        int shear, double p0, std::span<const std::vector<double>> etas = {});

struct LiftedBoundCheck {
    double lhs = 0.0; ///< ||sum_k T^k Phi_k||_2
    double rhs = 0.0; ///< l2 operator norm of M times ||sum_k Phi_k||_2
    bool holds() const noexcept { return lhs <= rhs + 1e-10; }
};

/// p = p0 = 2 check of the lifted bound. Phi_k is a k-block function; T^k acts
/// on its last block.
LiftedBoundCheck theorem5_check_p2(std::span<const TensorGridFunction> phis, const MultiplierSymbol& symbol);

} // namespace lpmult
