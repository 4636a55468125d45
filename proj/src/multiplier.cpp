#include "lpmult/multiplier.hpp"

#include <cmath>

#include "lpmult/error.hpp"
#include "lpmult/spectral.hpp"

namespace lpmult {

GridFunction apply_discrete_multiplier(const GridFunction& f, const MultiplierSymbol& symbol)
{
    require(f.components() == symbol.cols(),
            "function has " + std::to_string(f.components()) + " components but symbol '" + symbol.name()
                + "' acts on C^" + std::to_string(symbol.cols()));
    auto out = apply_block_multiplier(f.values(), BlockLayout{1, f.grid(), 1}, symbol);
    return GridFunction(f.grid(), symbol.rows(), std::move(out));
}

namespace detail {

double mean_power_norm(std::span<const cdouble> values, int components, double p)
{
    require(p >= 1.0 && std::isfinite(p), "norm exponent must be finite and >= 1");
    const std::size_t points = values.size() / components;
    require(points > 0, "norm of an empty function");
    double sum = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        double sq = 0.0;
        for (int c = 0; c < components; ++c) {
            sq += std::norm(values[i * components + c]);
        }
        sum += p == 2.0 ? sq : std::pow(sq, 0.5 * p);
    }
    return std::pow(sum / static_cast<double>(points), 1.0 / p);
}

} // namespace detail

double lp_norm(const GridFunction& f, double p)
{
    return detail::mean_power_norm(f.values(), f.components(), p);
}

double operator_ratio(const GridFunction& f, const MultiplierSymbol& symbol, const ExponentConfig& exps)
{
    const double den = lp_norm(f, exps.p());
    require(den > 0.0, "operator ratio of the zero function");
    return lp_norm(apply_discrete_multiplier(f, symbol), exps.p0()) / den;
}

double l2_operator_norm(const MultiplierSymbol& symbol, int points_per_axis)
{
    const TorusGrid grid(symbol.dimension(), points_per_axis);
    double best = 0.0;
    for (std::size_t b = 0; b < grid.size(); ++b) {
        best = std::max(best, pointwise_norm(symbol.at_lattice(grid.frequency_vector(b))));
    }
    return best;
}

} // namespace lpmult
