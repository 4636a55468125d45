#include "lpmult/transference.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lpmult/error.hpp"

namespace lpmult {

void GaussianPairingConfig::validate() const
{
    require(dimension >= 1, "pairing dimension must be positive");
    require(static_cast<int>(j.size()) == dimension && static_cast<int>(k.size()) == dimension,
            "pairing frequencies must have the pairing dimension");
    require(std::isfinite(epsilon) && epsilon > 0.0, "epsilon must be positive");
    require(std::isfinite(p0) && p0 > 1.0, "p0 must exceed 1");
    require(radius > 0.0 && step > 0.0, "quadrature radius and step must be positive");
    const double cells = radius / step;
    require(std::abs(cells - std::round(cells)) <= 1e-9 * std::max(1.0, cells),
            "quadrature radius must be an integer multiple of the step");
    const double tail = std::exp(-std::numbers::pi * (p0 + q0()) * radius * radius);
    require(tail < 1e-12, "Gaussian tail " + std::to_string(tail) + " at the quadrature radius exceeds 1e-12");
}

cdouble gaussian_damped_pairing(const GaussianPairingConfig& cfg, const MultiplierSymbol& symbol)
{
    cfg.validate();
    const int d = cfg.dimension;
    require(symbol.dimension() == d, "symbol dimension does not match the pairing");

    Eigen::VectorXcd a = Eigen::VectorXcd::Ones(symbol.cols());
    Eigen::VectorXcd b = Eigen::VectorXcd::Ones(symbol.rows());
    if (!cfg.a.empty()) {
        require(static_cast<int>(cfg.a.size()) == symbol.cols(), "input vector length does not match the symbol");
        a = Eigen::Map<const Eigen::VectorXcd>(cfg.a.data(), symbol.cols());
    } else {
        require(symbol.cols() == 1, "matrix symbols need an explicit input vector");
    }
    if (!cfg.b.empty()) {
        require(static_cast<int>(cfg.b.size()) == symbol.rows(), "output vector length does not match the symbol");
        b = Eigen::Map<const Eigen::VectorXcd>(cfg.b.data(), symbol.rows());
    } else {
        require(symbol.rows() == 1, "vector-valued symbols need an explicit output vector");
    }

    // Spectra: (p0/eps)^{d/2} e^{-pi p0 |xi - j|^2 / eps} a and the same with q0, k, b.
    // Product Gaussian = e^{-pi (p0+q0) |xi - c|^2 / eps} e^{-pi |j - k|^2 / eps}
    // since p0 q0 / (p0 + q0) = 1; substitute xi = c + sqrt(eps) eta.
    const double p0 = cfg.p0;
    const double q0 = cfg.q0();
    const double root = std::sqrt(cfg.epsilon);
    std::vector<double> center(d);
    double jk2 = 0.0;
    for (int i = 0; i < d; ++i) {
        center[i] = (p0 * cfg.j[i] + q0 * cfg.k[i]) / (p0 + q0);
        jk2 += static_cast<double>((cfg.j[i] - cfg.k[i]) * (cfg.j[i] - cfg.k[i]));
    }
    const double offdiag = std::exp(-std::numbers::pi * jk2 / cfg.epsilon);

    const int cells = static_cast<int>(std::lround(cfg.radius / cfg.step));
    const int nodes = 2 * cells + 1;
    std::vector<double> node_weight(nodes);
    for (int t = 0; t < nodes; ++t) {
        const double eta = (t - cells) * cfg.step;
        const double edge = (t == 0 || t == nodes - 1) ? 0.5 : 1.0;
        node_weight[t] = edge * cfg.step * std::exp(-std::numbers::pi * (p0 + q0) * eta * eta);
    }

    std::size_t total = 1;
    for (int i = 0; i < d; ++i) {
        total *= static_cast<std::size_t>(nodes);
    }
    std::vector<double> xi(d);
    std::vector<int> idx(d);
    cdouble sum{};
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        double w = 1.0;
        bool origin = true;
        for (int i = d - 1; i >= 0; --i) {
            idx[i] = static_cast<int>(rest % nodes);
            rest /= nodes;
            w *= node_weight[idx[i]];
            xi[i] = center[i] + root * (idx[i] - cells) * cfg.step;
            origin = origin && xi[i] == 0.0;
        }
        if (origin && !symbol.total()) {
            continue;
        }
        const SymbolValue m = symbol(xi);
        sum += w * b.dot(m * a);
    }
    return std::pow(p0 * q0, 0.5 * d) * offdiag * sum;
}

double multiplier_deviation(const MultiplierSymbol& symbol, const std::vector<FrequencyTuple>& support, int shear)
{
    require(shear >= 1, "shear factor N must be a positive integer");
    const int d = symbol.dimension();
    double worst = 0.0;
    for (const auto& tuple : support) {
        require(!tuple.empty(), "empty frequency tuple in support");
        for (const auto& l : tuple) {
            require(static_cast<int>(l.size()) == d, "support frequency dimension does not match the symbol");
        }
        const auto& last = tuple.back();
        bool nonzero = false;
        for (int v : last) {
            nonzero = nonzero || v != 0;
        }
        require(nonzero, "last frequency of every support tuple must be nonzero");

        // Horner form: l_k + (l_{k-1} + (l_{k-2} + ...)/N)/N
        std::vector<double> xi(d, 0.0);
        for (std::size_t t = 0; t < tuple.size(); ++t) {
            for (int i = 0; i < d; ++i) {
                xi[i] = (t == 0 ? 0.0 : xi[i] / shear) + tuple[t][i];
            }
        }
        std::vector<double> base(last.begin(), last.end());
        const SymbolValue diff = symbol(xi) - symbol(base);
        worst = std::max(worst, pointwise_norm(diff));
    }
    return worst;
}

} // namespace lpmult
