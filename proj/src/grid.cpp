#include "lpmult/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lpmult/error.hpp"

namespace lpmult {

TorusGrid::TorusGrid(int dimension, int points_per_axis) : dimension_(dimension), points_(points_per_axis), size_(1)
{
    require(dimension >= 1, "grid dimension must be positive");
    require(points_per_axis >= 2 && points_per_axis % 2 == 0,
            "points per axis must be even and >= 2, got " + std::to_string(points_per_axis));
    for (int a = 0; a < dimension; ++a) {
        size_ *= static_cast<std::size_t>(points_per_axis);
    }
}

double TorusGrid::spacing() const noexcept
{
    return 2.0 * std::numbers::pi / points_;
}

double TorusGrid::coordinate(int index) const noexcept
{
    return -std::numbers::pi + (index + 0.5) * spacing();
}

std::vector<int> TorusGrid::indices(std::size_t flat) const
{
    std::vector<int> idx(dimension_);
    for (int a = dimension_ - 1; a >= 0; --a) {
        idx[a] = static_cast<int>(flat % points_);
        flat /= points_;
    }
    return idx;
}

std::vector<double> TorusGrid::point(std::size_t flat) const
{
    const auto idx = indices(flat);
    std::vector<double> theta(dimension_);
    for (int a = 0; a < dimension_; ++a) {
        theta[a] = coordinate(idx[a]);
    }
    return theta;
}

std::vector<int> TorusGrid::frequency_vector(std::size_t flat) const
{
    auto idx = indices(flat);
    for (auto& i : idx) {
        i = frequency(i);
    }
    return idx;
}

GridFunction::GridFunction(TorusGrid grid, int components)
    : grid_(grid), components_(components), values_(grid.size() * components)
{
    require(components >= 1, "grid function needs at least one component");
}

GridFunction::GridFunction(TorusGrid grid, int components, std::vector<cdouble> values)
    : grid_(grid), components_(components), values_(std::move(values))
{
    require(components >= 1, "grid function needs at least one component");
    require(values_.size() == grid_.size() * components_, "grid function value count does not match grid");
    for (const auto& v : values_) {
        require(std::isfinite(v.real()) && std::isfinite(v.imag()), "grid function values must be finite");
    }
}

GridFunction GridFunction::sample(const TorusGrid& grid, const std::function<cdouble(std::span<const double>)>& f)
{
    GridFunction out(grid, 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values_[i] = f(grid.point(i));
    }
    return out;
}

GridFunction GridFunction::monomial(const TorusGrid& grid, std::span<const int> j)
{
    require(static_cast<int>(j.size()) == grid.dimension(), "monomial frequency dimension mismatch");
    return sample(grid, [&](std::span<const double> theta) {
        double phase = 0.0;
        for (std::size_t a = 0; a < theta.size(); ++a) {
            phase += j[a] * theta[a];
        }
        return std::polar(1.0, phase);
    });
}

GridFunction& GridFunction::operator+=(const GridFunction& other)
{
    require(grid_ == other.grid_ && components_ == other.components_, "grid function shape mismatch in sum");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

GridFunction& GridFunction::operator*=(cdouble scale)
{
    for (auto& v : values_) {
        v *= scale;
    }
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b)
{
    a += b;
    return a;
}

GridFunction operator*(cdouble s, GridFunction f)
{
    f *= s;
    return f;
}

} // namespace lpmult
