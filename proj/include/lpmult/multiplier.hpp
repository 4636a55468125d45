#pragma once

#include "lpmult/exponents.hpp"
#include "lpmult/grid.hpp"
#include "lpmult/symbol.hpp"

namespace lpmult {

/// Discrete multiplier T f = sum_k M(k) f^(k) e^{i(k, theta)} over the
/// centered frequency range [-G/2, G/2)^d of the grid.
GridFunction apply_discrete_multiplier(const GridFunction& f, const MultiplierSymbol& symbol);

/// (mean over grid points of |f(theta)|^p)^{1/p}, normalized measure.
double lp_norm(const GridFunction& f, double p);

/// lp_norm(T f, p0) / lp_norm(f, p).
double operator_ratio(const GridFunction& f, const MultiplierSymbol& symbol, const ExponentConfig& exps);

/// Exact L^2 operator norm of the truncated discrete multiplier: the largest
/// pointwise symbol norm over [-G/2, G/2)^d.
double l2_operator_norm(const MultiplierSymbol& symbol, int points_per_axis);

namespace detail {
/// Shared p-norm kernel over a flat point-major array.
double mean_power_norm(std::span<const cdouble> values, int components, double p);
} // namespace detail

} // namespace lpmult
