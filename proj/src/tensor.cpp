#include "lpmult/tensor.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lpmult/error.hpp"
#include "lpmult/multiplier.hpp"

namespace lpmult {

namespace {

std::size_t checked_points(int blocks, const TorusGrid& grid, std::size_t cap)
{
    require(blocks >= 1, "tensor grid needs at least one block");
    std::size_t n = 1;
    for (int b = 0; b < blocks; ++b) {
        require(n <= cap / grid.size(), "tensor grid exceeds the point cap of " + std::to_string(cap));
        n *= grid.size();
    }
    return n;
}

std::size_t ipow(std::size_t base, int e)
{
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= base;
    }
    return r;
}

} // namespace

TensorGridFunction::TensorGridFunction(int blocks, TorusGrid block_grid, int components, std::size_t point_cap)
    : blocks_(blocks), grid_(block_grid), components_(components),
      points_(checked_points(blocks, block_grid, point_cap))
{
    require(components >= 1, "tensor function needs at least one component");
    values_.assign(points_ * components_, cdouble{});
}

TensorGridFunction::TensorGridFunction(int blocks, TorusGrid block_grid, int components, std::vector<cdouble> values,
                                       std::size_t point_cap)
    : blocks_(blocks), grid_(block_grid), components_(components),
      points_(checked_points(blocks, block_grid, point_cap)), values_(std::move(values))
{
    require(components >= 1, "tensor function needs at least one component");
    require(values_.size() == points_ * components_, "tensor value count does not match the product grid");
}

TensorGridFunction TensorGridFunction::from_grid_function(const GridFunction& f)
{
    return TensorGridFunction(1, f.grid(), f.components(), std::vector<cdouble>(f.values().begin(), f.values().end()));
}

std::size_t TensorGridFunction::block_point(std::size_t flat, int block) const
{
    const std::size_t b = grid_.size();
    return (flat / ipow(b, blocks_ - 1 - block)) % b;
}

BlockLayout TensorGridFunction::layout(int block) const
{
    require(block >= 0 && block < blocks_,
            "block index " + std::to_string(block) + " outside 0.." + std::to_string(blocks_ - 1));
    return BlockLayout{ipow(grid_.size(), block), grid_, ipow(grid_.size(), blocks_ - 1 - block)};
}

TensorGridFunction TensorGridFunction::extended(int blocks) const
{
    require(blocks >= blocks_, "cannot drop blocks by extension");
    TensorGridFunction out(blocks, grid_, components_);
    const std::size_t repeat = ipow(grid_.size(), blocks - blocks_);
    for (std::size_t i = 0; i < out.points_; ++i) {
        const std::size_t src = i / repeat;
        for (int c = 0; c < components_; ++c) {
            out.values_[i * components_ + c] = values_[src * components_ + c];
        }
    }
    return out;
}

TensorGridFunction& TensorGridFunction::operator+=(const TensorGridFunction& other)
{
    require(blocks_ == other.blocks_ && grid_ == other.grid_ && components_ == other.components_,
            "tensor function shape mismatch in sum");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

double lp_norm(const TensorGridFunction& f, double p)
{
    return detail::mean_power_norm(f.values(), f.components(), p);
}

double zero_mode_mass(const TensorGridFunction& f, int block)
{
    const auto mean = block_mean(f.values(), f.layout(block), f.components());
    double s = 0.0;
    for (const auto& v : mean) {
        s += std::norm(v);
    }
    return std::sqrt(s * f.components() / static_cast<double>(mean.size()));
}

TensorGridFunction random_tensor_polynomial(int blocks, const TorusGrid& block_grid, int degree, Rng& rng)
{
    require(degree >= 0, "polynomial degree must be non-negative");
    TensorGridFunction f(blocks, block_grid, 1);
    const int axes = blocks * block_grid.dimension();
    const int side = 2 * degree + 1;
    std::size_t terms = 1;
    for (int a = 0; a < axes; ++a) {
        terms *= static_cast<std::size_t>(side);
    }
    std::vector<cdouble> coeff(terms);
    for (auto& c : coeff) {
        const double re = rng.normal();
        const double im = rng.normal();
        c = {re, im};
    }
    std::vector<double> theta(axes);
    for (std::size_t i = 0; i < f.points(); ++i) {
        for (int b = 0; b < blocks; ++b) {
            const auto pt = block_grid.point(f.block_point(i, b));
            for (int a = 0; a < block_grid.dimension(); ++a) {
                theta[b * block_grid.dimension() + a] = pt[a];
            }
        }
        cdouble sum{};
        for (std::size_t t = 0; t < terms; ++t) {
            std::size_t rest = t;
            double phase = 0.0;
            for (int a = axes - 1; a >= 0; --a) {
                phase += (static_cast<int>(rest % side) - degree) * theta[a];
                rest /= side;
            }
            sum += coeff[t] * std::polar(1.0, phase);
        }
        f.at(i) = sum;
    }
    return f;
}

TensorGridFunction tensor_lift_apply(const TensorGridFunction& phi, const MultiplierSymbol& symbol, int block,
                                     double mean_tolerance)
{
    const BlockLayout layout = phi.layout(block);
    require(phi.components() == symbol.cols(), "tensor function components do not match the symbol input shape");
    const double mass = zero_mode_mass(phi, block);
    const double scale = std::max(1.0, lp_norm(phi, 2.0));
    require(mass <= mean_tolerance * scale, "function is not mean-zero in block " + std::to_string(block)
                                                + " (zero-mode mass " + std::to_string(mass) + ")");
    auto out = apply_block_multiplier(phi.values(), layout, symbol);
    return TensorGridFunction(phi.blocks(), phi.block_grid(), symbol.rows(), std::move(out));
}

TensorGridFunction sum_broadcast(std::span<const TensorGridFunction> summands)
{
    require(!summands.empty(), "empty list of summands");
    int blocks = 0;
    for (const auto& f : summands) {
        blocks = std::max(blocks, f.blocks());
    }
    TensorGridFunction total(blocks, summands[0].block_grid(), summands[0].components());
    for (const auto& f : summands) {
        total += f.extended(blocks);
    }
    return total;
}

namespace {

// f(theta_1 + s_1, ..., theta_J + s_J) with block b shifted by shear^{b+1} eta.
TensorGridFunction shifted(const TensorGridFunction& f, int shear, std::span<const double> eta, bool& aligned)
{
    const TorusGrid& grid = f.block_grid();
    const int d = grid.dimension();
    const int g = grid.points_per_axis();
    const double h = grid.spacing();

    std::vector<std::vector<double>> shift(f.blocks(), std::vector<double>(d));
    std::vector<std::vector<long long>> steps(f.blocks(), std::vector<long long>(d));
    bool exact = true;
    double factor = 1.0;
    for (int b = 0; b < f.blocks(); ++b) {
        factor *= shear;
        for (int a = 0; a < d; ++a) {
            const double s = std::fmod(factor * eta[a], 2.0 * std::numbers::pi);
            shift[b][a] = s;
            const double units = s / h;
            const double nearest = std::round(units);
            if (std::abs(units - nearest) > 1e-9) {
                exact = false;
            }
            steps[b][a] = static_cast<long long>(nearest);
        }
    }
    aligned = exact;

    if (exact) {
        TensorGridFunction out(f.blocks(), grid, f.components());
        const std::size_t bsize = grid.size();
        for (std::size_t i = 0; i < f.points(); ++i) {
            // Source point: every block index advanced by its step, mod G.
            std::size_t src = 0;
            for (int b = 0; b < f.blocks(); ++b) {
                auto idx = grid.indices(f.block_point(i, b));
                std::size_t flat = 0;
                for (int a = 0; a < d; ++a) {
                    const long long v = ((idx[a] + steps[b][a]) % g + g) % g;
                    flat = flat * g + static_cast<std::size_t>(v);
                }
                src = src * bsize + flat;
            }
            for (int c = 0; c < f.components(); ++c) {
                out.at(i, c) = f.at(src, c);
            }
        }
        return out;
    }

    std::vector<cdouble> values(f.values().begin(), f.values().end());
    for (int b = 0; b < f.blocks(); ++b) {
        const std::vector<double> t = shift[b];
        auto translate = MultiplierSymbol::scalar(
            "translation", d,
            [t](std::span<const double> k) {
                double phase = 0.0;
                for (std::size_t a = 0; a < k.size(); ++a) {
                    phase += k[a] * t[a];
                }
                return std::polar(1.0, phase);
            },
            MultiplierSymbol::Traits{false, true, 1.0});
        std::vector<cdouble> next;
        if (f.components() == 1) {
            next = apply_block_multiplier(values, f.layout(b), translate);
        } else {
            // Translate component-wise through a diagonal symbol.
            const int m = f.components();
            MultiplierSymbol diag("translation", d, m, m,
                                  [translate, m](std::span<const double> k) {
                                      return SymbolValue(translate(k)(0, 0) * SymbolValue::Identity(m, m));
                                  },
                                  MultiplierSymbol::Traits{false, true, 1.0});
            next = apply_block_multiplier(values, f.layout(b), diag);
        }
        values = std::move(next);
    }
    return TensorGridFunction(f.blocks(), grid, f.components(), std::move(values));
}

std::vector<std::vector<double>> aligned_shifts(const TorusGrid& grid, int shear)
{
    const int d = grid.dimension();
    const long long per_axis = static_cast<long long>(grid.points_per_axis()) * shear;
    const double unit = grid.spacing() / shear;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        total *= static_cast<std::size_t>(per_axis);
    }
    std::vector<std::vector<double>> etas(total, std::vector<double>(d));
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t rest = i;
        for (int a = d - 1; a >= 0; --a) {
            etas[i][a] = unit * static_cast<double>(rest % per_axis);
            rest /= per_axis;
        }
    }
    return etas;
}

} // namespace

ShearCheck shear_norm_check(std::span<const TensorGridFunction> summands, int shear, double p,
                            std::span<const std::vector<double>> etas)
{
    require(shear >= 1, "shear factor N must be a positive integer");
    require(p >= 1.0, "norm exponent must be >= 1");
    const TensorGridFunction total = sum_broadcast(summands);
    const int d = total.block_grid().dimension();

    std::vector<std::vector<double>> own;
    if (etas.empty()) {
        own = aligned_shifts(total.block_grid(), shear);
        etas = own;
    }

    ShearCheck result;
    result.rhs = std::pow(lp_norm(total, p), p);
    double acc = 0.0;
    for (const auto& eta : etas) {
        require(static_cast<int>(eta.size()) == d, "shift dimension does not match the grid");
        bool aligned = true;
        const TensorGridFunction moved = shifted(total, shear, eta, aligned);
        result.aligned = result.aligned && aligned;
        acc += std::pow(lp_norm(moved, p), p);
    }
    result.lhs = acc / static_cast<double>(etas.size());
    result.shifts = etas.size();
    return result;
}

ShearCheck shear_norm_check_transformed(std::span<const TensorGridFunction> summands, const MultiplierSymbol& symbol,
                                        int shear, double p0, std::span<const std::vector<double>> etas)
{
    std::vector<TensorGridFunction> lifted;
    lifted.reserve(summands.size());
    for (const auto& f : summands) {
        lifted.push_back(tensor_lift_apply(f, symbol, f.blocks() - 1));
    }
    return shear_norm_check(lifted, shear, p0, etas);
}

LiftedBoundCheck theorem5_check_p2(std::span<const TensorGridFunction> phis, const MultiplierSymbol& symbol)
{
    require(!phis.empty(), "no summands given");
    std::vector<TensorGridFunction> lifted;
    lifted.reserve(phis.size());
    for (const auto& f : phis) {
        lifted.push_back(tensor_lift_apply(f, symbol, f.blocks() - 1));
    }
    LiftedBoundCheck check;
    check.lhs = lp_norm(sum_broadcast(lifted), 2.0);
    check.rhs = l2_operator_norm(symbol, phis[0].block_grid().points_per_axis()) * lp_norm(sum_broadcast(phis), 2.0);
    return check;
}

} // namespace lpmult
