#pragma once

#include <complex>
#include <vector>

#include "lpmult/symbol.hpp"

namespace lpmult {

/// Gaussian-damped pairing on R^d with unit-period characters e^{2 pi i (j, x)}.
struct GaussianPairingConfig {
    int dimension = 1;
    std::vector<int> j;
    std::vector<int> k;
    /// Input vector of P = e^{2 pi i (j,x)} a; length symbol.cols(). Empty means (1).
    std::vector<cdouble> a;
    /// Output vector of Q = e^{2 pi i (k,x)} b; length symbol.rows(). Empty means (1).
    std::vector<cdouble> b;
    double epsilon = 1.0;
    /// Half-width and step of the trapezoid grid, in units of sqrt(epsilon)
    /// around the joint Gaussian center; radius / step must be an integer.
    double radius = 4.0;
    double step = 0.05;
    double p0 = 2.0;

    double q0() const { return p0 / (p0 - 1.0); }
    void validate() const;
};

/// eps^{d/2} int (T_M(P L_{eps/p0}), Q L_{eps/q0}) dx with L_s(x) = e^{-pi s |x|^2}.
///
/// Evaluated on the frequency side, where both Gaussian spectra are closed
/// form and T_M is pointwise multiplication by M. Throws ConfigError if the
/// Gaussian tail beyond the radius exceeds 1e-12.
cdouble gaussian_damped_pairing(const GaussianPairingConfig& cfg, const MultiplierSymbol& symbol);

/// A support element: frequency tuple (l_1, ..., l_k), each in Z^d.
using FrequencyTuple = std::vector<std::vector<int>>;

/// max over the support of ||M(l_k + l_{k-1}/N + ... + l_1/N^{k-1}) - M(l_k)||.
double multiplier_deviation(const MultiplierSymbol& symbol, const std::vector<FrequencyTuple>& support, int shear);

} // namespace lpmult
