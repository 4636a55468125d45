#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "lpmult/catalog.hpp"
#include "lpmult/exponents.hpp"
#include "lpmult/martingale.hpp"
#include "lpmult/report.hpp"
#include "lpmult/symbol.hpp"
#include "lpmult/tensor.hpp"

namespace lpmult {

/// How the martingale ratio is converted into a multiplier bound when
/// delta+ != -delta-.
enum class Rescaling {
    Symmetric,     ///< ratio * (delta+ - delta-) / 2
    UnitaryFactor, ///< additionally divided by 1 + |delta+ + delta-| / (|delta+| + |delta-|)
};

struct WitnessSpec {
    WitnessSpec(ExponentConfig exps, MultiplierSymbol symbol, MartingaleDifferenceSequence sequence,
                TransformConfig config);

    ExponentConfig exps;
    /// First component m (1x1) or square matrix symbol M; tau comes from config.
    MultiplierSymbol symbol;
    MartingaleDifferenceSequence sequence;
    TransformConfig config;
    std::vector<int> n_plus{0, 1};
    std::vector<int> n_minus{1, 0};
    double delta_plus = 1.0;
    double delta_minus = -1.0;
    double delta_tolerance = 1e-12;
    /// U with M(n+-) = delta+- U; identity when absent.
    std::optional<Eigen::MatrixXcd> unitary;
    int grid = 2;
    std::size_t point_cap = kDefaultPointCap;
    Rescaling rescaling = Rescaling::Symmetric;
    double cross_check_tolerance = 1e-8;

    /// alpha_k = delta+ if beta_k = +1 else delta-.
    std::vector<double> alpha() const;
    /// 2 / (delta+ - delta-)
    double rescale() const { return 2.0 / (delta_plus - delta_minus); }
};

struct WitnessResult {
    TensorGridFunction phi_sum;
    TensorGridFunction transformed_sum;
    /// ||sum T^k Phi_k||_{p0} / ||sum Phi_k||_p through the FFT pipeline.
    double ratio = 0.0;
    /// Same quantity by enumeration with weights alpha.
    double martingale_ratio = 0.0;
    /// perturbed_ratio_exact with signs beta, converted per the rescaling mode.
    double rescaled_bound = 0.0;
    /// max ||M(n+-) - delta+- U||
    double delta_error = 0.0;
    /// sup-norm gap between sum T^k Phi_k and its predicted value.
    double eigen_residual = 0.0;
    /// delta_error * sum ||Phi_k||_{p0} / ||sum Phi_k||_p
    double slack = 0.0;
    /// Symbol exact on both directions and their grid aliases.
    bool exact = false;
    CertReport cert;
};

/// Sign witness for a scalar symbol:
/// Phi_k = psi_k(theta_k) d_k(psi_0(theta_0), ..., psi_{k-1}(theta_{k-1}))
/// on N+1 blocks, psi_0 = psi+, psi_k = psi+ or psi- by beta_k, lifted by
/// (m, tau)^T. Throws CrossCheckError when the symbol is exact on the
/// directions and the pipeline and enumeration ratios disagree.
WitnessResult build_witness(const WitnessSpec& spec);

/// Matrix version: M(n+-) = delta+- U, C^m-valued tables, lift [M; tau I].
WitnessResult build_matrix_witness(const WitnessSpec& spec);

/// psi(theta) = sign(sin((n, theta) - phase)) sampled on one block, with the
/// phase 0 for odd coordinate sums of n and half a grid step otherwise.
/// Throws ConfigError if a sample vanishes or the mean is not exactly zero.
std::vector<double> sign_block(const TorusGrid& grid, std::span<const int> n);

/// True when every odd multiple of n wraps, on the grid, to a nonzero
/// multiple of n (or to 0), so an even homogeneous symbol sees only M(n).
bool alias_free(std::span<const int> n, int points_per_axis);

struct DirectionMatch {
    std::vector<int> n;
    double error = 0.0;
};

/// Integer direction n != 0 with |n|_inf <= bound minimizing ||M(n) - target||;
/// ties go to the smaller |n|, then to the first in lexicographic order.
DirectionMatch find_direction(const MultiplierSymbol& symbol, const SymbolValue& target, int bound);

/// Default directions, values and unitary factor for a catalog family.
struct WitnessPlan {
    MultiplierSymbol symbol;
    std::vector<int> n_plus;
    std::vector<int> n_minus;
    double delta_plus = 1.0;
    double delta_minus = -1.0;
    std::optional<Eigen::MatrixXcd> unitary;
    bool matrix = false;
};

WitnessPlan plan_family_witness(const OperatorFamilyParam& param, int direction_bound = 8);

} // namespace lpmult
