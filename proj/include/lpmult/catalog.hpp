#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "lpmult/exponents.hpp"
#include "lpmult/grid.hpp"
#include "lpmult/symbol.hpp"

namespace lpmult {

enum class Family {
    Beurling,
    BeurlingReal,
    BeurlingImag,
    BeurlingMatrix,
    Rotated,
    Scaled,
    Fz,
    Riesz,
    Vector,
};

/// CLI / report tag: beurling, beurling-real, beurling-imag, beurling-matrix,
/// rotated, scaled, F, riesz, vector.
const char* to_string(Family family);
Family family_from_string(const std::string& tag);

struct OperatorFamilyParam {
    Family family = Family::Beurling;
    double theta = 0.0;      ///< rotated
    double c = 1.0;          ///< scaled
    cdouble z{0.0, 0.0};     ///< F(z)
    int riesz_index = 1;     ///< riesz(j), j in {1, 2}
    double tau = 0.0;        ///< perturbation weight of the lifted (m, tau)^T

    void validate() const;
};

// Planar symbols; xi must be a nonzero point of R^2.
double beurling_real(std::span<const double> xi);  ///< (xi2^2 - xi1^2) / |xi|^2
double beurling_imag(std::span<const double> xi);  ///< 2 xi1 xi2 / |xi|^2
cdouble beurling_value(std::span<const double> xi);
/// [[m_R, m_I], [-m_I, m_R]]
Eigen::Matrix2d beurling_matrix_value(std::span<const double> xi);
double rotated_value(double theta, std::span<const double> xi);
cdouble scaled_value(double c, std::span<const double> xi);
cdouble fz_value(cdouble z, std::span<const double> xi);
/// -i xi_j / |xi|, j = 1 or 2.
cdouble riesz_value(int j, std::span<const double> xi);

MultiplierSymbol beurling_symbol();
MultiplierSymbol beurling_real_symbol();
MultiplierSymbol beurling_imag_symbol();
MultiplierSymbol beurling_matrix_symbol();
MultiplierSymbol rotated_symbol(double theta);
MultiplierSymbol scaled_symbol(double c);
MultiplierSymbol fz_symbol(cdouble z);
MultiplierSymbol riesz_symbol(int j);
/// (m_R, tau)^T
MultiplierSymbol vector_symbol(double tau);

/// The operator symbol of a family (vector family: the stacked (m_R, tau)^T).
MultiplierSymbol family_symbol(const OperatorFamilyParam& param);

struct TargetConstants {
    double p = 2.0;
    double p0 = 2.0;
    double tau = 0.0;
    double c_tau = 0.0;  ///< sqrt((p*-1)^2 + tau^2)
    bool tau_admissible = true;
    double umd_cm = 1.0; ///< p* - 1
    Admissibility predicate = Admissibility::Def2;
    /// Target relies on the unproved sharp norm of the Beurling operator.
    bool external_assumption = false;
    /// Printed norm (or lower bound) for the family at these exponents.
    double target = 1.0;
};

/// With tau != 0 the target is sqrt((p*-1)^2 + tau^2) for the families with
/// extreme symbol values +-1. Throws ConfigError for p != p0, the riesz
/// family, c = 0, z neither real nor imaginary, and inadmissible tau.
TargetConstants target_constant(const OperatorFamilyParam& param, const ExponentConfig& exps,
                                Admissibility predicate = Admissibility::Def2);

/// L^p norms of T_m f via the complex symbol and of T_M (Re f, -Im f) via the
/// 2x2 matrix symbol, for a scalar function on a planar grid.
std::pair<double, double> complex_vs_matrix_path(const GridFunction& f, double p);

} // namespace lpmult
