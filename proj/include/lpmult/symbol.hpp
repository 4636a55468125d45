#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lpmult {

using cdouble = std::complex<double>;

/// Value of a symbol at one frequency: 1x1 (scalar), m x 1 (vector acting on a
/// scalar function) or rows x cols (matrix acting on C^cols-valued functions).
using SymbolValue = Eigen::MatrixXcd;

enum class SymbolShape { Scalar, Vector, Matrix };

const char* to_string(SymbolShape shape);

/// Largest singular value; reduces to the modulus for scalars and the
/// Euclidean length for column vectors.
double pointwise_norm(const SymbolValue& value);

/// Fourier multiplier symbol on R^d, evaluated on the integer lattice.
///
/// Homogeneous symbols are only ever asked for xi != 0; the value at the
/// origin is the zero of the shape. Total symbols (constants) receive the
/// origin as well.
class MultiplierSymbol {
public:
    using Evaluator = std::function<SymbolValue(std::span<const double>)>;

    struct Traits {
        bool even = false;
        bool total = false;
        double sup_bound = 1.0;
    };

    MultiplierSymbol(std::string name, int dimension, int rows, int cols, Evaluator evaluator, Traits traits);

    static MultiplierSymbol constant(int dimension, cdouble value);
    static MultiplierSymbol scalar(std::string name, int dimension, std::function<cdouble(std::span<const double>)> f,
                                   Traits traits);

    /// (m, tau)^T for scalar m, or [M; tau I] for a matrix symbol.
    static MultiplierSymbol stack_identity(const MultiplierSymbol& top, double tau);

    SymbolValue operator()(std::span<const double> xi) const;
    SymbolValue at_lattice(std::span<const int> k) const;

    const std::string& name() const noexcept { return name_; }
    int dimension() const noexcept { return dimension_; }
    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    SymbolShape shape() const noexcept;
    bool even() const noexcept { return traits_.even; }
    bool total() const noexcept { return traits_.total; }
    double sup_bound() const noexcept { return traits_.sup_bound; }

    SymbolValue zero() const { return SymbolValue::Zero(rows_, cols_); }

private:
    std::string name_;
    int dimension_;
    int rows_;
    int cols_;
    Evaluator evaluator_;
    Traits traits_;
};

} // namespace lpmult
