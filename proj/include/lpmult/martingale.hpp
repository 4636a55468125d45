#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "lpmult/exponents.hpp"

namespace lpmult {

using cdouble = std::complex<double>;

/// Largest depth accepted by exhaustive enumeration (2^{N+1} sign patterns).
inline constexpr int kDefaultEnumerationCap = 20;

/// Dyadic martingale differences d_k : {+-1}^k -> C^m, k = 1..N.
///
/// Table k holds 2^k entries of m components. The argument (r_0, ..., r_{k-1})
/// maps to the index whose most significant bit is r_0, bit value 0 for +1
/// and 1 for -1, so index 0 is the all-plus prefix.
class MartingaleDifferenceSequence {
public:
    MartingaleDifferenceSequence(int depth, int value_dim = 1);

    int depth() const noexcept { return depth_; }
    int value_dim() const noexcept { return value_dim_; }

    static std::size_t prefix_index(std::span<const int> signs);

    /// Components of d_k at the given prefix index.
    std::span<cdouble> entry(int k, std::size_t index);
    std::span<const cdouble> entry(int k, std::size_t index) const;
    std::span<cdouble> table(int k);
    std::span<const cdouble> table(int k) const;

    /// All tables back to back, k = 1..N.
    std::span<cdouble> flat() noexcept { return data_; }
    std::span<const cdouble> flat() const noexcept { return data_; }

    bool is_zero() const noexcept;

private:
    std::size_t offset(int k) const;

    int depth_;
    int value_dim_;
    std::vector<cdouble> data_;
};

/// Signs beta_1..beta_N and the perturbation weight tau.
struct TransformConfig {
    std::vector<int> beta;
    double tau = 0.0;

    void validate(int depth) const;
};

/// F_N(omega) = sum_k d_k(omega_0, ..., omega_{k-1}) omega_k for omega in {+-1}^{N+1}.
std::vector<cdouble> evaluate_sequence(const MartingaleDifferenceSequence& F, std::span<const int> omega);

/// ||(G_N, tau F_N)||_{p0} / ||F_N||_p with G_N = sum beta_k d_k r_k, by
/// enumeration of all 2^{N+1} sign patterns under uniform weight.
double perturbed_ratio_exact(const MartingaleDifferenceSequence& F, const TransformConfig& cfg,
                             const ExponentConfig& exps, int enumeration_cap = kDefaultEnumerationCap);

/// Same enumeration with real weights alpha_k in place of the signs beta_k.
double weighted_ratio_exact(const MartingaleDifferenceSequence& F, std::span<const double> alpha, double tau,
                            const ExponentConfig& exps, int enumeration_cap = kDefaultEnumerationCap);

/// Depth N+1 copy with d_{N+1} = 0.
MartingaleDifferenceSequence extend_with_zero(const MartingaleDifferenceSequence& F);

} // namespace lpmult
