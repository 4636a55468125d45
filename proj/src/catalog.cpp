#include "lpmult/catalog.hpp"

#include <cmath>
#include <numbers>

#include "lpmult/error.hpp"
#include "lpmult/multiplier.hpp"

namespace lpmult {

namespace {

struct TagEntry {
    Family family;
    const char* tag;
};

constexpr TagEntry kTags[] = {
    {Family::Beurling, "beurling"},   {Family::BeurlingReal, "beurling-real"},
    {Family::BeurlingImag, "beurling-imag"}, {Family::BeurlingMatrix, "beurling-matrix"},
    {Family::Rotated, "rotated"},     {Family::Scaled, "scaled"},
    {Family::Fz, "F"},                {Family::Riesz, "riesz"},
    {Family::Vector, "vector"},
};

double planar_norm2(std::span<const double> xi)
{
    require(xi.size() == 2, "planar symbol evaluated at a point of dimension " + std::to_string(xi.size()));
    const double r2 = xi[0] * xi[0] + xi[1] * xi[1];
    require(r2 > 0.0, "homogeneous symbol evaluated at the origin");
    return r2;
}

constexpr MultiplierSymbol::Traits kEven{true, false, 1.0};

} // namespace

const char* to_string(Family family)
{
    for (const auto& e : kTags) {
        if (e.family == family) {
            return e.tag;
        }
    }
    return "unknown";
}

Family family_from_string(const std::string& tag)
{
    for (const auto& e : kTags) {
        if (tag == e.tag) {
            return e.family;
        }
    }
    if (tag == "fz") {
        return Family::Fz;
    }
    throw ConfigError("unknown operator family '" + tag + "'");
}

void OperatorFamilyParam::validate() const
{
    require(std::isfinite(theta) && std::isfinite(c) && std::isfinite(z.real()) && std::isfinite(z.imag())
                && std::isfinite(tau),
            "family parameters must be finite");
    if (family == Family::Riesz) {
        require(riesz_index == 1 || riesz_index == 2, "riesz index must be 1 or 2");
    }
}

double beurling_real(std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    return (xi[1] * xi[1] - xi[0] * xi[0]) / r2;
}

double beurling_imag(std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    return 2.0 * xi[0] * xi[1] / r2;
}

cdouble beurling_value(std::span<const double> xi)
{
    return {beurling_real(xi), beurling_imag(xi)};
}

Eigen::Matrix2d beurling_matrix_value(std::span<const double> xi)
{
    const double mr = beurling_real(xi);
    const double mi = beurling_imag(xi);
    Eigen::Matrix2d m;
    m << mr, mi, -mi, mr;
    return m;
}

double rotated_value(double theta, std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    return ((xi[0] * xi[0] - xi[1] * xi[1]) * std::cos(theta) + 2.0 * xi[0] * xi[1] * std::sin(theta)) / r2;
}

cdouble scaled_value(double c, std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    return cdouble{c * (xi[0] * xi[0] - xi[1] * xi[1]), 2.0 * xi[0] * xi[1]} / r2;
}

cdouble fz_value(cdouble z, std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    return (cdouble{xi[0] * xi[0] - xi[1] * xi[1]} + 2.0 * z * xi[0] * xi[1]) / r2;
}

cdouble riesz_value(int j, std::span<const double> xi)
{
    const double r2 = planar_norm2(xi);
    require(j == 1 || j == 2, "riesz index must be 1 or 2");
    return cdouble{0.0, -xi[j - 1] / std::sqrt(r2)};
}

MultiplierSymbol beurling_symbol()
{
    return MultiplierSymbol::scalar("beurling", 2, [](std::span<const double> xi) { return beurling_value(xi); },
                                    kEven);
}

MultiplierSymbol beurling_real_symbol()
{
    return MultiplierSymbol::scalar("beurling-real", 2,
                                    [](std::span<const double> xi) { return cdouble{beurling_real(xi)}; }, kEven);
}

MultiplierSymbol beurling_imag_symbol()
{
    return MultiplierSymbol::scalar("beurling-imag", 2,
                                    [](std::span<const double> xi) { return cdouble{beurling_imag(xi)}; }, kEven);
}

MultiplierSymbol beurling_matrix_symbol()
{
    return MultiplierSymbol("beurling-matrix", 2, 2, 2,
                            [](std::span<const double> xi) {
                                return SymbolValue(beurling_matrix_value(xi).cast<cdouble>());
                            },
                            kEven);
}

MultiplierSymbol rotated_symbol(double theta)
{
    return MultiplierSymbol::scalar(
        "rotated", 2, [theta](std::span<const double> xi) { return cdouble{rotated_value(theta, xi)}; }, kEven);
}

MultiplierSymbol scaled_symbol(double c)
{
    return MultiplierSymbol::scalar("scaled", 2, [c](std::span<const double> xi) { return scaled_value(c, xi); },
                                    MultiplierSymbol::Traits{true, false, std::max(1.0, std::abs(c))});
}

MultiplierSymbol fz_symbol(cdouble z)
{
    // |(cos 2phi) + z sin 2phi| <= sqrt(1 + |z|^2)
    const double bound = std::sqrt(1.0 + std::norm(z));
    return MultiplierSymbol::scalar("F", 2, [z](std::span<const double> xi) { return fz_value(z, xi); },
                                    MultiplierSymbol::Traits{true, false, bound});
}

MultiplierSymbol riesz_symbol(int j)
{
    require(j == 1 || j == 2, "riesz index must be 1 or 2");
    return MultiplierSymbol::scalar("riesz", 2, [j](std::span<const double> xi) { return riesz_value(j, xi); },
                                    MultiplierSymbol::Traits{false, false, 1.0});
}

MultiplierSymbol vector_symbol(double tau)
{
    return MultiplierSymbol::stack_identity(beurling_real_symbol(), tau);
}

MultiplierSymbol family_symbol(const OperatorFamilyParam& param)
{
    param.validate();
    switch (param.family) {
    case Family::Beurling:
        return beurling_symbol();
    case Family::BeurlingReal:
        return beurling_real_symbol();
    case Family::BeurlingImag:
        return beurling_imag_symbol();
    case Family::BeurlingMatrix:
        return beurling_matrix_symbol();
    case Family::Rotated:
        return rotated_symbol(param.theta);
    case Family::Scaled:
        return scaled_symbol(param.c);
    case Family::Fz:
        return fz_symbol(param.z);
    case Family::Riesz:
        return riesz_symbol(param.riesz_index);
    case Family::Vector:
        return vector_symbol(param.tau);
    }
    throw ConfigError("unknown operator family");
}

TargetConstants target_constant(const OperatorFamilyParam& param, const ExponentConfig& exps,
                                Admissibility predicate)
{
    param.validate();
    require(exps.diagonal(), "target constants are only known for p = p0");
    const double base = exps.pstar() - 1.0;

    TargetConstants t;
    t.p = exps.p();
    t.p0 = exps.p0();
    t.tau = param.tau;
    t.predicate = predicate;
    t.umd_cm = base;
    t.tau_admissible = tau_admissible(exps.p(), t.tau, predicate);
    t.c_tau = perturbed_transform_constant(exps.p(), t.tau);

    switch (param.family) {
    case Family::Beurling:
    case Family::BeurlingReal:
    case Family::BeurlingImag:
    case Family::BeurlingMatrix:
    case Family::Rotated:
    case Family::Vector:
        require(t.tau_admissible, "tau = " + std::to_string(t.tau) + " is not admissible under the "
                                      + to_string(predicate) + " predicate at p = " + std::to_string(exps.p()));
        t.target = t.c_tau;
        break;
    case Family::Scaled: {
        require(param.tau == 0.0, "the scaled family has no perturbed target");
        const double c = std::abs(param.c);
        require(c > 0.0, "scaled family needs c != 0");
        t.target = c < 1.0 ? base : c * base;
        t.external_assumption = true;
        break;
    }
    case Family::Fz:
        require(param.tau == 0.0, "the F(z) family has no perturbed target");
        if (param.z.imag() == 0.0) {
            t.target = std::sqrt(1.0 + param.z.real() * param.z.real()) * base;
        } else {
            require(param.z.real() == 0.0, "F(z) target is only known for real or purely imaginary z");
            const double y = std::abs(param.z.imag());
            t.target = y < 1.0 ? base : y * base;
            t.external_assumption = true;
        }
        break;
    case Family::Riesz:
        throw ConfigError("no target constant for the riesz family");
    }
    return t;
}

std::pair<double, double> complex_vs_matrix_path(const GridFunction& f, double p)
{
    require(f.grid().dimension() == 2, "complex/matrix comparison needs a planar grid");
    require(f.components() == 1, "complex/matrix comparison needs a scalar function");

    const double complex_norm = lp_norm(apply_discrete_multiplier(f, beurling_symbol()), p);

    GridFunction pair(f.grid(), 2);
    for (std::size_t i = 0; i < f.points(); ++i) {
        pair.at(i, 0) = f.at(i).real();
        pair.at(i, 1) = -f.at(i).imag();
    }
    const double matrix_norm = lp_norm(apply_discrete_multiplier(pair, beurling_matrix_symbol()), p);
    return {complex_norm, matrix_norm};
}

} // namespace lpmult
