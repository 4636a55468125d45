#include "lpmult/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "lpmult/error.hpp"

namespace lpmult {

const char* to_string(SymbolShape shape)
{
    switch (shape) {
    case SymbolShape::Scalar:
        return "scalar";
    case SymbolShape::Vector:
        return "vector";
    case SymbolShape::Matrix:
        return "matrix";
    }
    return "unknown";
}

double pointwise_norm(const SymbolValue& value)
{
    if (value.cols() == 1) {
        return value.norm();
    }
    Eigen::JacobiSVD<SymbolValue> svd(value);
    return svd.singularValues()(0);
}

MultiplierSymbol::MultiplierSymbol(std::string name, int dimension, int rows, int cols, Evaluator evaluator,
                                   Traits traits)
    : name_(std::move(name)), dimension_(dimension), rows_(rows), cols_(cols), evaluator_(std::move(evaluator)),
      traits_(traits)
{
    require(dimension_ >= 1, "symbol dimension must be positive");
    require(rows_ >= 1 && cols_ >= 1, "symbol value shape must be non-empty");
    require(static_cast<bool>(evaluator_), "symbol evaluator is empty");
}

MultiplierSymbol MultiplierSymbol::constant(int dimension, cdouble value)
{
    auto f = [value](std::span<const double>) {
        SymbolValue v(1, 1);
        v(0, 0) = value;
        return v;
    };
    return {"constant", dimension, 1, 1, f, Traits{true, true, std::abs(value)}};
}

MultiplierSymbol MultiplierSymbol::scalar(std::string name, int dimension,
                                          std::function<cdouble(std::span<const double>)> f, Traits traits)
{
    auto wrapped = [f = std::move(f)](std::span<const double> xi) {
        SymbolValue v(1, 1);
        v(0, 0) = f(xi);
        return v;
    };
    return {std::move(name), dimension, 1, 1, wrapped, traits};
}

MultiplierSymbol MultiplierSymbol::stack_identity(const MultiplierSymbol& top, double tau)
{
    const int rows = top.rows();
    const int cols = top.cols();
    require(top.shape() != SymbolShape::Vector, "stack_identity expects a scalar or square matrix symbol");
    require(top.shape() == SymbolShape::Scalar || rows == cols, "stack_identity expects a square matrix symbol");
    auto f = [top, tau](std::span<const double> xi) {
        const SymbolValue m = top(xi);
        SymbolValue out(2 * m.rows(), m.cols());
        out.topRows(m.rows()) = m;
        out.bottomRows(m.rows()) = tau * SymbolValue::Identity(m.rows(), m.cols());
        return out;
    };
    Traits traits{top.even(), false, std::hypot(top.sup_bound(), tau)};
    return {top.name() + "+tau", top.dimension(), 2 * rows, cols, f, traits};
}

SymbolShape MultiplierSymbol::shape() const noexcept
{
    if (cols_ > 1) {
        return SymbolShape::Matrix;
    }
    return rows_ == 1 ? SymbolShape::Scalar : SymbolShape::Vector;
}

SymbolValue MultiplierSymbol::operator()(std::span<const double> xi) const
{
    require(static_cast<int>(xi.size()) == dimension_, "frequency dimension does not match symbol '" + name_ + "'");
    const bool origin = std::all_of(xi.begin(), xi.end(), [](double x) { return x == 0.0; });
    if (origin && !traits_.total) {
        return zero();
    }
    SymbolValue v = evaluator_(xi);
    if (v.rows() != rows_ || v.cols() != cols_) {
        throw ConfigError("symbol '" + name_ + "' returned a value of the wrong shape");
    }
    return v;
}

SymbolValue MultiplierSymbol::at_lattice(std::span<const int> k) const
{
    std::vector<double> xi(k.begin(), k.end());
    return (*this)(xi);
}

} // namespace lpmult
