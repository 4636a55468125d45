#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "lpmult/catalog.hpp"
#include "lpmult/search.hpp"

namespace lpmult {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Machine-readable certification / search report.
struct CertReport {
    std::string family = "custom";
    OperatorFamilyParam param;
    double p = 2.0;
    double p0 = 2.0;
    double tau = 0.0;
    int depth = 0;
    int grid = 0;
    double achieved_ratio = 0.0;
    double certified_lower_bound = 0.0;
    double target_constant = 0.0;
    double gap = 0.0;
    Admissibility predicate = Admissibility::Def2;
    bool external_assumption = false;
    std::uint64_t seed = 0;
    SearchBudget budget;
    double wall_time_s = 0.0;
    std::string timestamp;
    std::string version = kToolkitVersion;
    /// Command-specific diagnostics.
    nlohmann::json details = nlohmann::json::object();

    /// Copy target, gap and assumption flag from the catalog.
    void apply_target(const TargetConstants& t);
};

nlohmann::json to_json(const CertReport& report);

/// Current UTC time, ISO 8601 with seconds.
std::string utc_timestamp();

/// The report with the run-dependent fields (timestamp, wall time) removed.
nlohmann::json strip_volatile(nlohmann::json report);

} // namespace lpmult
