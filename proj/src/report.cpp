#include "lpmult/report.hpp"

#include <chrono>
#include <ctime>

namespace lpmult {

void CertReport::apply_target(const TargetConstants& t)
{
    target_constant = t.target;
    gap = t.target - certified_lower_bound;
    external_assumption = t.external_assumption;
    predicate = t.predicate;
}

nlohmann::json to_json(const CertReport& r)
{
    nlohmann::json params = {{"tau", r.tau}};
    if (r.family != "custom") {
        switch (r.param.family) {
        case Family::Rotated:
            params["theta"] = r.param.theta;
            break;
        case Family::Scaled:
            params["c"] = r.param.c;
            break;
        case Family::Fz:
            params["z_re"] = r.param.z.real();
            params["z_im"] = r.param.z.imag();
            break;
        case Family::Riesz:
            params["j"] = r.param.riesz_index;
            break;
        default:
            break;
        }
    }
    return {
        {"family", r.family},
        {"parameters", params},
        {"p", r.p},
        {"p0", r.p0},
        {"tau", r.tau},
        {"N", r.depth},
        {"G", r.grid},
        {"achieved_ratio", r.achieved_ratio},
        {"certified_lower_bound", r.certified_lower_bound},
        {"target_constant", r.target_constant},
        {"gap", r.gap},
        {"predicate", to_string(r.predicate)},
        {"external_assumption", r.external_assumption},
        {"seed", r.seed},
        {"budget",
         {{"restarts", r.budget.restarts},
          {"iterations", r.budget.iterations},
          {"max_seconds", r.budget.max_seconds}}},
        {"wall_time_s", r.wall_time_s},
        {"timestamp", r.timestamp},
        {"version", r.version},
        {"sign_convention", "m(xi) = (xi2^2 - xi1^2 + 2i xi1 xi2)/|xi|^2, m_R(1,0) = -1, m_R(0,1) = +1"},
        {"details", r.details},
    };
}

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json strip_volatile(nlohmann::json report)
{
    if (report.is_object()) {
        report.erase("timestamp");
        report.erase("wall_time_s");
        for (auto& [key, value] : report.items()) {
            value = strip_volatile(value);
        }
    } else if (report.is_array()) {
        for (auto& value : report) {
            value = strip_volatile(value);
        }
    }
    return report;
}

} // namespace lpmult
