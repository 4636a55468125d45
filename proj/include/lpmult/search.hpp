#pragma once

#include <cstdint>
#include <optional>

#include "lpmult/exponents.hpp"
#include "lpmult/martingale.hpp"

namespace lpmult {

struct SearchBudget {
    int restarts = 8;
    int iterations = 400;
    std::uint64_t seed = 1;
    /// Wall-clock cap per depth.
    double max_seconds = 60.0;

    void validate() const;
};

struct SearchOptions {
    int value_dim = 1;
    bool real_only = false;
    int enumeration_cap = kDefaultEnumerationCap;
    /// Extra warm start (any depth below the target); zero-extended before use.
    std::optional<MartingaleDifferenceSequence> warm_start;
    std::optional<TransformConfig> warm_config;
};

struct SearchResult {
    MartingaleDifferenceSequence sequence;
    TransformConfig config;
    double ratio = 0.0;
    /// Wall-clock cap reached before the budget was spent; the result then
    /// depends on timing.
    bool truncated = false;
    long ascents = 0;
};

/// Alternating maximization of the perturbed transform ratio at fixed depth.
///
/// Depths 1..N are searched in turn, each warm-started from the zero-extended
/// best of the previous depth, so results are non-decreasing in N. At each
/// depth the sign vectors are swept exhaustively for N <= 4 and sampled
/// otherwise; for each sign vector the tables are ascended along the
/// normalized gradient of the log-ratio with step halving, followed by greedy
/// single-sign flips. The returned ratio is re-evaluated by enumeration.
SearchResult search_extremal(const ExponentConfig& exps, double tau, int depth, const SearchBudget& budget,
                             const SearchOptions& options = {});

} // namespace lpmult
