#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lpmult/exponents.hpp"
#include "lpmult/grid.hpp"
#include "lpmult/martingale.hpp"

namespace lpmult {

// GridFunction: header {d, G, shape, m} plus values flattened point-major,
// components innermost. JSON stores [re, im] pairs; binary is
// "LPGF", u32 version, i32 d, i32 G, u32 shape (0 scalar, 1 vector), u32 m,
// then little-endian f64 pairs.
nlohmann::json grid_function_to_json(const GridFunction& f);
GridFunction grid_function_from_json(const nlohmann::json& j);
void write_grid_function_binary(std::ostream& out, const GridFunction& f);
GridFunction read_grid_function_binary(std::istream& in);

nlohmann::json tables_to_json(const MartingaleDifferenceSequence& F);
MartingaleDifferenceSequence tables_from_json(const nlohmann::json& tables, int value_dim);

/// Best-known extremizer for one (p, p0, tau, N, predicate).
struct MartingaleRecord {
    double p = 2.0;
    double p0 = 2.0;
    double tau = 0.0;
    Admissibility predicate = Admissibility::Def2;
    MartingaleDifferenceSequence sequence{1};
    std::vector<int> beta;
    double ratio = 0.0;
    std::uint64_t seed = 0;
    std::string timestamp;

    int depth() const { return sequence.depth(); }
    TransformConfig config() const { return {beta, tau}; }
    /// perturbed_ratio_exact of the stored instance.
    double reevaluate() const;
};

nlohmann::json to_json(const MartingaleRecord& r);
/// Accepts full store records and minimal instance files ({tables, beta}
/// with optional m, tau, p, p0).
MartingaleRecord martingale_record_from_json(const nlohmann::json& j);

std::string store_key(double p, double p0, double tau, int depth, Admissibility predicate);
std::string store_key(const MartingaleRecord& r);

/// JSON file of best-known records in a directory, updated by write-temp-rename.
class MartingaleStore {
public:
    /// Loads the store file if present; throws StoreError if it is corrupt.
    explicit MartingaleStore(std::filesystem::path directory);

    std::filesystem::path file() const { return directory_ / "martingale_store.json"; }
    std::optional<MartingaleRecord> find(const std::string& key) const;
    const std::map<std::string, MartingaleRecord>& records() const noexcept { return records_; }

    /// Re-verifies the ratio by enumeration and stores the record if there is
    /// no entry for its key or it beats the stored ratio by more than 1e-12.
    /// Returns whether the store changed.
    bool offer(MartingaleRecord record);

private:
    void save() const;

    std::filesystem::path directory_;
    std::map<std::string, MartingaleRecord> records_;
};

} // namespace lpmult
