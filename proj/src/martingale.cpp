#include "lpmult/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lpmult/error.hpp"

namespace lpmult {

MartingaleDifferenceSequence::MartingaleDifferenceSequence(int depth, int value_dim)
    : depth_(depth), value_dim_(value_dim)
{
    require(depth >= 1 && depth <= 30, "martingale depth must be in [1, 30]");
    require(value_dim >= 1, "martingale value dimension must be positive");
    data_.assign(((std::size_t{1} << (depth + 1)) - 2) * value_dim, cdouble{});
}

std::size_t MartingaleDifferenceSequence::prefix_index(std::span<const int> signs)
{
    std::size_t index = 0;
    for (int s : signs) {
        index = (index << 1) | (s < 0 ? 1u : 0u);
    }
    return index;
}

std::size_t MartingaleDifferenceSequence::offset(int k) const
{
    require(k >= 1 && k <= depth_, "table index " + std::to_string(k) + " outside 1.." + std::to_string(depth_));
    // Tables 1..k-1 hold 2 + 4 + ... + 2^{k-1} = 2^k - 2 entries.
    return ((std::size_t{1} << k) - 2) * value_dim_;
}

std::span<cdouble> MartingaleDifferenceSequence::entry(int k, std::size_t index)
{
    return std::span<cdouble>(data_).subspan(offset(k) + index * value_dim_, value_dim_);
}

std::span<const cdouble> MartingaleDifferenceSequence::entry(int k, std::size_t index) const
{
    return std::span<const cdouble>(data_).subspan(offset(k) + index * value_dim_, value_dim_);
}

std::span<cdouble> MartingaleDifferenceSequence::table(int k)
{
    return std::span<cdouble>(data_).subspan(offset(k), (std::size_t{1} << k) * value_dim_);
}

std::span<const cdouble> MartingaleDifferenceSequence::table(int k) const
{
    return std::span<const cdouble>(data_).subspan(offset(k), (std::size_t{1} << k) * value_dim_);
}

bool MartingaleDifferenceSequence::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](cdouble v) { return v == cdouble{}; });
}

void TransformConfig::validate(int depth) const
{
    require(static_cast<int>(beta.size()) == depth,
            "beta has " + std::to_string(beta.size()) + " entries, expected " + std::to_string(depth));
    for (int b : beta) {
        require(b == 1 || b == -1, "beta entries must be +1 or -1");
    }
    require(std::isfinite(tau), "tau must be finite");
}

std::vector<cdouble> evaluate_sequence(const MartingaleDifferenceSequence& F, std::span<const int> omega)
{
    const int n = F.depth();
    require(static_cast<int>(omega.size()) == n + 1,
            "sign pattern has length " + std::to_string(omega.size()) + ", expected " + std::to_string(n + 1));
    for (int w : omega) {
        require(w == 1 || w == -1, "sign pattern entries must be +1 or -1");
    }
    std::vector<cdouble> sum(F.value_dim());
    for (int k = 1; k <= n; ++k) {
        const auto d = F.entry(k, MartingaleDifferenceSequence::prefix_index(omega.first(k)));
        for (int c = 0; c < F.value_dim(); ++c) {
            sum[c] += d[c] * static_cast<double>(omega[k]);
        }
    }
    return sum;
}

double weighted_ratio_exact(const MartingaleDifferenceSequence& F, std::span<const double> alpha, double tau,
                            const ExponentConfig& exps, int enumeration_cap)
{
    const int n = F.depth();
    const int m = F.value_dim();
    require(n <= enumeration_cap, "depth " + std::to_string(n) + " exceeds the enumeration cap "
                                      + std::to_string(enumeration_cap));
    require(static_cast<int>(alpha.size()) == n, "weight vector length does not match depth");
    require(std::isfinite(tau), "tau must be finite");

    const std::size_t patterns = std::size_t{1} << (n + 1);
    const double p = exps.p();
    const double p0 = exps.p0();
    const double tau2 = tau * tau;
    std::vector<cdouble> f(m);
    std::vector<cdouble> g(m);
    double num = 0.0;
    double den = 0.0;
    // Pattern w: bit (N - j) holds omega_j, 1 meaning -1, so the d_k prefix is w >> (N + 1 - k).
    for (std::size_t w = 0; w < patterns; ++w) {
        std::fill(f.begin(), f.end(), cdouble{});
        std::fill(g.begin(), g.end(), cdouble{});
        for (int k = 1; k <= n; ++k) {
            const double s = ((w >> (n - k)) & 1u) ? -1.0 : 1.0;
            const auto d = F.entry(k, w >> (n + 1 - k));
            for (int c = 0; c < m; ++c) {
                const cdouble t = d[c] * s;
                f[c] += t;
                g[c] += alpha[k - 1] * t;
            }
        }
        double f2 = 0.0;
        double g2 = 0.0;
        for (int c = 0; c < m; ++c) {
            f2 += std::norm(f[c]);
            g2 += std::norm(g[c]);
        }
        den += std::pow(f2, 0.5 * p);
        num += std::pow(g2 + tau2 * f2, 0.5 * p0);
    }
    require(den > 0.0, "martingale ratio with a zero denominator");
    const double inv = 1.0 / static_cast<double>(patterns);
    return std::pow(num * inv, 1.0 / p0) / std::pow(den * inv, 1.0 / p);
}

double perturbed_ratio_exact(const MartingaleDifferenceSequence& F, const TransformConfig& cfg,
                             const ExponentConfig& exps, int enumeration_cap)
{
    cfg.validate(F.depth());
    const std::vector<double> alpha(cfg.beta.begin(), cfg.beta.end());
    return weighted_ratio_exact(F, alpha, cfg.tau, exps, enumeration_cap);
}

MartingaleDifferenceSequence extend_with_zero(const MartingaleDifferenceSequence& F)
{
    MartingaleDifferenceSequence out(F.depth() + 1, F.value_dim());
    std::copy(F.flat().begin(), F.flat().end(), out.flat().begin());
    return out;
}

} // namespace lpmult
