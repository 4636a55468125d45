#include "lpmult/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpmult/error.hpp"

namespace lpmult {

ExponentConfig::ExponentConfig(double p, double p0) : p_(p), p0_(p0)
{
    require(std::isfinite(p) && p > 1.0, "exponent p must be finite and > 1, got " + std::to_string(p));
    require(std::isfinite(p0) && p0 > 1.0, "exponent p0 must be finite and > 1, got " + std::to_string(p0));
}

double ExponentConfig::pstar() const noexcept
{
    return std::max(p_, q());
}

const char* to_string(Admissibility a)
{
    return a == Admissibility::Def2 ? "def2" : "cor7";
}

Admissibility admissibility_from_string(const char* name)
{
    const std::string s(name);
    if (s == "def2") {
        return Admissibility::Def2;
    }
    if (s == "cor7") {
        return Admissibility::Cor7;
    }
    throw ConfigError("unknown admissibility predicate '" + s + "' (expected def2 or cor7)");
}

bool tau_admissible(double p, double tau, Admissibility predicate)
{
    if (!std::isfinite(tau)) {
        return false;
    }
    if (p >= 2.0) {
        return true;
    }
    const double pstar_minus_one = 1.0 / (p - 1.0);
    switch (predicate) {
    case Admissibility::Def2:
        return tau * tau <= pstar_minus_one;
    case Admissibility::Cor7:
        return std::abs(tau) <= 0.5;
    }
    return false;
}

double perturbed_transform_constant(double p, double tau)
{
    const double s = ExponentConfig::symmetric(p).pstar() - 1.0;
    return std::sqrt(s * s + tau * tau);
}

} // namespace lpmult
