#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lpmult {

using cdouble = std::complex<double>;

/// Offset uniform grid on T^d = [-pi, pi)^d with G points per axis:
/// theta_i = -pi + (i + 1/2) * 2 pi / G. No sample sits on 0 or -pi.
class TorusGrid {
public:
    TorusGrid(int dimension, int points_per_axis);

    int dimension() const noexcept { return dimension_; }
    int points_per_axis() const noexcept { return points_; }
    std::size_t size() const noexcept { return size_; }
    double spacing() const noexcept;

    double coordinate(int index) const noexcept;
    /// Row-major unflattening, axis 0 slowest.
    std::vector<int> indices(std::size_t flat) const;
    std::vector<double> point(std::size_t flat) const;

    /// Centered lattice frequency of a DFT index: [-G/2, G/2).
    int frequency(int index) const noexcept { return index < points_ / 2 ? index : index - points_; }
    std::vector<int> frequency_vector(std::size_t flat) const;

    bool operator==(const TorusGrid&) const = default;

private:
    int dimension_;
    int points_;
    std::size_t size_;
};

/// Complex scalar or C^m-valued samples on a TorusGrid, point-major with the
/// value components innermost.
class GridFunction {
public:
    GridFunction(TorusGrid grid, int components);
    GridFunction(TorusGrid grid, int components, std::vector<cdouble> values);

    static GridFunction sample(const TorusGrid& grid, const std::function<cdouble(std::span<const double>)>& f);
    /// e^{i (j, theta)}
    static GridFunction monomial(const TorusGrid& grid, std::span<const int> j);

    const TorusGrid& grid() const noexcept { return grid_; }
    int components() const noexcept { return components_; }
    std::size_t points() const noexcept { return grid_.size(); }

    std::span<const cdouble> values() const noexcept { return values_; }
    std::span<cdouble> values() noexcept { return values_; }
    cdouble& at(std::size_t point, int component = 0) { return values_[point * components_ + component]; }
    cdouble at(std::size_t point, int component = 0) const { return values_[point * components_ + component]; }

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator*=(cdouble scale);

private:
    TorusGrid grid_;
    int components_;
    std::vector<cdouble> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator*(cdouble s, GridFunction f);

} // namespace lpmult
