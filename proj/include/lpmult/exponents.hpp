#pragma once

namespace lpmult {

/// Source and target Lebesgue exponents of an operator L^p -> L^{p0}.
class ExponentConfig {
public:
    /// Throws ConfigError unless both exponents are finite and > 1.
    ExponentConfig(double p, double p0);

    static ExponentConfig symmetric(double p) { return {p, p}; }

    double p() const noexcept { return p_; }
    double p0() const noexcept { return p0_; }
    double q() const noexcept { return p_ / (p_ - 1.0); }
    double q0() const noexcept { return p0_ / (p0_ - 1.0); }
    /// max{p, p/(p-1)}
    double pstar() const noexcept;
    bool diagonal() const noexcept { return p_ == p0_; }

private:
    double p_;
    double p0_;
};

/// Which printed range of tau is taken as admissible for 1 < p < 2.
enum class Admissibility {
    Def2, ///< tau^2 <= p* - 1
    Cor7, ///< |tau| <= 1/2
};

const char* to_string(Admissibility a);
Admissibility admissibility_from_string(const char* name);

/// True when the closed form sqrt((p*-1)^2 + tau^2) is claimed for (p, p, tau).
bool tau_admissible(double p, double tau, Admissibility predicate);

/// sqrt((p*-1)^2 + tau^2); meaningful only at p = p0 with admissible tau.
double perturbed_transform_constant(double p, double tau);

} // namespace lpmult
