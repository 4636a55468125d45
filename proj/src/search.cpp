#include "lpmult/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <vector>

#include "lpmult/error.hpp"
#include "lpmult/rng.hpp"

namespace lpmult {

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

void SearchBudget::validate() const
{
    require(restarts > 0, "search budget needs at least one restart");
    require(iterations > 0, "search budget needs at least one iteration");
    require(max_seconds > 0.0, "search wall-clock cap must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

// Log-ratio objective over the flat table layout of MartingaleDifferenceSequence.
class RatioObjective {
public:
    RatioObjective(int depth, int value_dim, double tau, const ExponentConfig& exps)
        : depth_(depth), dim_(value_dim), patterns_(std::size_t{1} << (depth + 1)), tau2_(tau * tau),
          p_(exps.p()), p0_(exps.p0()), f_(patterns_ * value_dim), g_(patterns_ * value_dim), f2_(patterns_),
          a_(patterns_)
    {
    }

    std::size_t size() const { return ((std::size_t{1} << (depth_ + 1)) - 2) * dim_; }

    double value(std::span<const cdouble> x, std::span<const double> alpha) { return evaluate(x, alpha); }

    double value_and_gradient(std::span<const cdouble> x, std::span<const double> alpha, std::span<cdouble> grad)
    {
        const double ratio = evaluate(x, alpha);
        std::fill(grad.begin(), grad.end(), cdouble{});
        if (!(ratio > 0.0)) {
            return ratio;
        }
        const int n = depth_;
        for (std::size_t w = 0; w < patterns_; ++w) {
            const double ca = a_[w] > 0.0 ? std::pow(a_[w], 0.5 * p0_ - 1.0) / ea_ : 0.0;
            const double cb = f2_[w] > 0.0 ? std::pow(f2_[w], 0.5 * p_ - 1.0) / eb_ : 0.0;
            if (ca == 0.0 && cb == 0.0) {
                continue;
            }
            for (int k = 1; k <= n; ++k) {
                const double s = ((w >> (n - k)) & 1u) ? -1.0 : 1.0;
                const std::size_t base = table_offset(k) + (w >> (n + 1 - k)) * dim_;
                for (int c = 0; c < dim_; ++c) {
                    const cdouble fv = f_[w * dim_ + c];
                    const cdouble gv = g_[w * dim_ + c];
                    grad[base + c] += s * (ca * (alpha[k - 1] * gv + tau2_ * fv) - cb * fv);
                }
            }
        }
        const double inv = 1.0 / static_cast<double>(patterns_);
        for (auto& v : grad) {
            v *= inv;
        }
        return ratio;
    }

private:
    std::size_t table_offset(int k) const { return ((std::size_t{1} << k) - 2) * dim_; }

    double evaluate(std::span<const cdouble> x, std::span<const double> alpha)
    {
        const int n = depth_;
        double num = 0.0;
        double den = 0.0;
        for (std::size_t w = 0; w < patterns_; ++w) {
            cdouble* f = &f_[w * dim_];
            cdouble* g = &g_[w * dim_];
            std::fill(f, f + dim_, cdouble{});
            std::fill(g, g + dim_, cdouble{});
            for (int k = 1; k <= n; ++k) {
                const double s = ((w >> (n - k)) & 1u) ? -1.0 : 1.0;
                const std::size_t base = table_offset(k) + (w >> (n + 1 - k)) * dim_;
                for (int c = 0; c < dim_; ++c) {
                    const cdouble t = x[base + c] * s;
                    f[c] += t;
                    g[c] += alpha[k - 1] * t;
                }
            }
            double f2 = 0.0;
            double g2 = 0.0;
            for (int c = 0; c < dim_; ++c) {
                f2 += std::norm(f[c]);
                g2 += std::norm(g[c]);
            }
            f2_[w] = f2;
            a_[w] = g2 + tau2_ * f2;
            den += std::pow(f2, 0.5 * p_);
            num += std::pow(a_[w], 0.5 * p0_);
        }
        const double inv = 1.0 / static_cast<double>(patterns_);
        ea_ = num * inv;
        eb_ = den * inv;
        if (!(eb_ > 0.0)) {
            return 0.0;
        }
        return std::pow(ea_, 1.0 / p0_) / std::pow(eb_, 1.0 / p_);
    }

    int depth_;
    int dim_;
    std::size_t patterns_;
    double tau2_;
    double p_;
    double p0_;
    std::vector<cdouble> f_;
    std::vector<cdouble> g_;
    std::vector<double> f2_;
    std::vector<double> a_;
    double ea_ = 0.0;
    double eb_ = 0.0;
};

double norm_of(std::span<const cdouble> v)
{
    double s = 0.0;
    for (const auto& z : v) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

void normalize(std::span<cdouble> v)
{
    const double n = norm_of(v);
    if (n > 0.0) {
        for (auto& z : v) {
            z /= n;
        }
    }
}

struct Candidate {
    std::vector<cdouble> tables;
    std::vector<double> alpha;
    double ratio = 0.0;
};

bool lex_less(const std::vector<double>& a, const std::vector<double>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool better(double ratio, const std::vector<double>& alpha, const Candidate& best)
{
    if (best.alpha.empty()) {
        return true;
    }
    if (ratio > best.ratio + 1e-12) {
        return true;
    }
    return std::abs(ratio - best.ratio) <= 1e-12 && lex_less(alpha, best.alpha);
}

class DepthSearch {
public:
    DepthSearch(int depth, double tau, const ExponentConfig& exps, const SearchBudget& budget,
                const SearchOptions& options, Rng& rng, Clock::time_point deadline)
        : depth_(depth), objective_(depth, options.value_dim, tau, exps), budget_(budget), options_(options),
          rng_(rng), deadline_(deadline), grad_(objective_.size()), trial_(objective_.size())
    {
    }

    Candidate run(const Candidate* warm)
    {
        if (warm != nullptr) {
            // The zero-extended warm start is the floor for this depth, whatever the clock does.
            Candidate seed{warm->tables, warm->alpha, 0.0};
            seed.tables.resize(objective_.size());
            seed.alpha.push_back(-1.0);
            seed.ratio = objective_.value(seed.tables, seed.alpha);
            best_ = std::move(seed);
        }
        std::vector<std::vector<double>> betas;
        if (depth_ <= 4) {
            for (std::size_t code = 0; code < (std::size_t{1} << depth_); ++code) {
                std::vector<double> alpha(depth_);
                for (int k = 0; k < depth_; ++k) {
                    // Lexicographic order with -1 before +1.
                    alpha[k] = ((code >> (depth_ - 1 - k)) & 1u) ? 1.0 : -1.0;
                }
                betas.push_back(std::move(alpha));
            }
            for (const auto& alpha : betas) {
                if (warm != nullptr) {
                    attempt(warm->tables, alpha);
                }
                for (int r = 0; r < budget_.restarts; ++r) {
                    attempt(random_tables(), alpha);
                }
            }
        } else {
            if (warm != nullptr) {
                for (double last : {-1.0, 1.0}) {
                    auto alpha = warm->alpha;
                    alpha.push_back(last);
                    attempt(warm->tables, alpha);
                    attempt(random_tables(), alpha);
                }
            }
            for (int r = 0; r < budget_.restarts; ++r) {
                std::vector<double> alpha(depth_);
                for (auto& a : alpha) {
                    a = rng_.sign();
                }
                attempt(random_tables(), alpha);
            }
        }
        return best_;
    }

    bool truncated() const { return truncated_; }
    long ascents() const { return ascents_; }

private:
    std::vector<cdouble> random_tables()
    {
        std::vector<cdouble> x(objective_.size());
        for (auto& z : x) {
            const double re = rng_.normal();
            const double im = options_.real_only ? 0.0 : rng_.normal();
            z = {re, im};
        }
        return x;
    }

    void attempt(std::vector<cdouble> x, std::vector<double> alpha)
    {
        if (Clock::now() > deadline_) {
            truncated_ = true;
            return;
        }
        x.resize(objective_.size());
        if (norm_of(x) == 0.0) {
            x = random_tables();
        }
        normalize(x);
        double ratio = ascend(x, alpha);
        for (int round = 0; round <= depth_; ++round) {
            bool flipped = false;
            for (int k = 0; k < depth_; ++k) {
                alpha[k] = -alpha[k];
                const double r = objective_.value(x, alpha);
                if (r > ratio + 1e-12) {
                    ratio = r;
                    flipped = true;
                } else {
                    alpha[k] = -alpha[k];
                }
            }
            if (!flipped) {
                break;
            }
            ratio = ascend(x, alpha);
        }
        if (better(ratio, alpha, best_)) {
            best_ = Candidate{x, alpha, ratio};
        }
    }

    double ascend(std::vector<cdouble>& x, const std::vector<double>& alpha)
    {
        ++ascents_;
        double step = 0.25;
        double ratio = objective_.value_and_gradient(x, alpha, grad_);
        for (int it = 0; it < budget_.iterations; ++it) {
            if (options_.real_only) {
                for (auto& g : grad_) {
                    g = {g.real(), 0.0};
                }
            }
            const double gn = norm_of(grad_);
            if (!(gn > 1e-15)) {
                break;
            }
            bool accepted = false;
            while (step > 1e-12) {
                for (std::size_t i = 0; i < x.size(); ++i) {
                    trial_[i] = x[i] + (step / gn) * grad_[i];
                }
                normalize(trial_);
                const double r = objective_.value(trial_, alpha);
                if (r > ratio) {
                    accepted = true;
                    std::swap(x, trial_);
                    step = std::min(1.5 * step, 1.0);
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                break;
            }
            ratio = objective_.value_and_gradient(x, alpha, grad_);
        }
        return ratio;
    }

    int depth_;
    RatioObjective objective_;
    const SearchBudget& budget_;
    const SearchOptions& options_;
    Rng& rng_;
    Clock::time_point deadline_;
    std::vector<cdouble> grad_;
    std::vector<cdouble> trial_;
    Candidate best_;
    bool truncated_ = false;
    long ascents_ = 0;
};

MartingaleDifferenceSequence to_sequence(const std::vector<cdouble>& tables, int depth, int value_dim)
{
    MartingaleDifferenceSequence F(depth, value_dim);
    std::copy(tables.begin(), tables.end(), F.flat().begin());
    return F;
}

std::vector<int> to_beta(const std::vector<double>& alpha)
{
    std::vector<int> beta(alpha.size());
    std::transform(alpha.begin(), alpha.end(), beta.begin(), [](double a) { return a < 0.0 ? -1 : 1; });
    return beta;
}

} // namespace

SearchResult search_extremal(const ExponentConfig& exps, double tau, int depth, const SearchBudget& budget,
                             const SearchOptions& options)
{
    budget.validate();
    require(std::isfinite(tau), "tau must be finite");
    require(depth >= 1 && depth <= options.enumeration_cap,
            "search depth must be in [1, " + std::to_string(options.enumeration_cap) + "]");
    require(options.value_dim >= 1, "value dimension must be positive");

    if (exps.p() == 2.0 && exps.p0() == 2.0) {
        // Orthogonality of martingale differences fixes the ratio at sqrt(1 + tau^2).
        MartingaleDifferenceSequence F(depth, options.value_dim);
        F.entry(1, 0)[0] = 1.0;
        F.entry(1, 1)[0] = 1.0;
        TransformConfig cfg{std::vector<int>(depth, -1), tau};
        const double ratio = perturbed_ratio_exact(F, cfg, exps, options.enumeration_cap);
        return SearchResult{std::move(F), std::move(cfg), ratio, false, 0};
    }

    const auto cap = std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(budget.max_seconds));
    Rng rng(budget.seed);

    std::optional<Candidate> external;
    if (options.warm_start) {
        const auto& w = *options.warm_start;
        require(w.value_dim() == options.value_dim, "warm start value dimension mismatch");
        require(w.depth() <= depth, "warm start deeper than the requested depth");
        require(options.warm_config.has_value(), "warm start given without its sign vector");
        options.warm_config->validate(w.depth());
        Candidate c;
        c.tables.assign(w.flat().begin(), w.flat().end());
        c.alpha.assign(options.warm_config->beta.begin(), options.warm_config->beta.end());
        external = std::move(c);
    }

    std::optional<Candidate> carried;
    bool truncated = false;
    long ascents = 0;
    for (int n = 1; n <= depth; ++n) {
        const Candidate* warm = carried ? &*carried : nullptr;
        std::optional<Candidate> merged;
        if (external && static_cast<int>(external->alpha.size()) == n - 1) {
            // Prefer whichever of the chained and supplied depth n-1 starts is better.
            if (warm == nullptr) {
                warm = &*external;
            } else {
                RatioObjective probe(n - 1, options.value_dim, tau, exps);
                const double ext = probe.value(external->tables, external->alpha);
                if (ext > warm->ratio) {
                    merged = *external;
                    merged->ratio = ext;
                    warm = &*merged;
                }
            }
        }
        DepthSearch search(n, tau, exps, budget, options, rng, Clock::now() + cap);
        Candidate best = search.run(warm);
        truncated = truncated || search.truncated();
        ascents += search.ascents();
        if (best.alpha.empty()) {
            if (warm == nullptr) {
                throw ConfigError("search budget exhausted before any evaluation");
            }
            best = *warm;
            best.tables.resize(((std::size_t{1} << (n + 1)) - 2) * options.value_dim);
            best.alpha.push_back(-1.0);
        }
        if (n == depth && external && static_cast<int>(external->alpha.size()) == n) {
            RatioObjective probe(n, options.value_dim, tau, exps);
            const double ext = probe.value(external->tables, external->alpha);
            if (better(ext, external->alpha, best)) {
                best = *external;
                best.ratio = ext;
            }
        }
        carried = std::move(best);
    }

    MartingaleDifferenceSequence F = to_sequence(carried->tables, depth, options.value_dim);
    TransformConfig cfg{to_beta(carried->alpha), tau};
    const double ratio = perturbed_ratio_exact(F, cfg, exps, options.enumeration_cap);
    return SearchResult{std::move(F), std::move(cfg), ratio, truncated, ascents};
}

} // namespace lpmult
