#include "lpmult/serialization.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "lpmult/error.hpp"

namespace lpmult {

using nlohmann::json;

namespace {

json complex_pair(cdouble v)
{
    return json::array({v.real(), v.imag()});
}

cdouble pair_value(const json& j)
{
    require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
            "complex numbers are stored as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
void put(std::ostream& out, T value)
{
    static_assert(std::is_trivially_copyable_v<T>);
    unsigned char bytes[sizeof(T)];
    std::memcpy(bytes, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes, bytes + sizeof(T));
    }
    out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get(std::istream& in)
{
    unsigned char bytes[sizeof(T)];
    in.read(reinterpret_cast<char*>(bytes), sizeof(T));
    require(static_cast<bool>(in), "truncated binary grid function");
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes, bytes + sizeof(T));
    }
    T value;
    std::memcpy(&value, bytes, sizeof(T));
    return value;
}

constexpr char kMagic[4] = {'L', 'P', 'G', 'F'};

} // namespace

json grid_function_to_json(const GridFunction& f)
{
    json values = json::array();
    for (const auto& v : f.values()) {
        values.push_back(complex_pair(v));
    }
    return {{"d", f.grid().dimension()},
            {"G", f.grid().points_per_axis()},
            {"shape", f.components() == 1 ? "scalar" : "vector"},
            {"m", f.components()},
            {"values", values}};
}

GridFunction grid_function_from_json(const json& j)
{
    try {
        const TorusGrid grid(j.at("d").get<int>(), j.at("G").get<int>());
        const int m = j.at("m").get<int>();
        std::vector<cdouble> values;
        values.reserve(j.at("values").size());
        for (const auto& v : j.at("values")) {
            values.push_back(pair_value(v));
        }
        return GridFunction(grid, m, std::move(values));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed grid function: ") + e.what());
    }
}

void write_grid_function_binary(std::ostream& out, const GridFunction& f)
{
    out.write(kMagic, 4);
    put<std::uint32_t>(out, 1);
    put<std::int32_t>(out, f.grid().dimension());
    put<std::int32_t>(out, f.grid().points_per_axis());
    put<std::uint32_t>(out, f.components() == 1 ? 0 : 1);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.components()));
    for (const auto& v : f.values()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

GridFunction read_grid_function_binary(std::istream& in)
{
    char magic[4];
    in.read(magic, 4);
    require(static_cast<bool>(in) && std::memcmp(magic, kMagic, 4) == 0, "not a binary grid function");
    require(get<std::uint32_t>(in) == 1, "unsupported binary grid function version");
    const int d = get<std::int32_t>(in);
    const int g = get<std::int32_t>(in);
    get<std::uint32_t>(in);
    const int m = static_cast<int>(get<std::uint32_t>(in));
    const TorusGrid grid(d, g);
    require(m >= 1, "component count must be positive");
    std::vector<cdouble> values(grid.size() * m);
    for (auto& v : values) {
        const double re = get<double>(in);
        const double im = get<double>(in);
        v = {re, im};
    }
    return GridFunction(grid, m, std::move(values));
}

json tables_to_json(const MartingaleDifferenceSequence& F)
{
    json tables = json::array();
    for (int k = 1; k <= F.depth(); ++k) {
        json table = json::array();
        for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
            const auto e = F.entry(k, idx);
            if (F.value_dim() == 1) {
                table.push_back(complex_pair(e[0]));
            } else {
                json comps = json::array();
                for (const auto& c : e) {
                    comps.push_back(complex_pair(c));
                }
                table.push_back(comps);
            }
        }
        tables.push_back(table);
    }
    return tables;
}

MartingaleDifferenceSequence tables_from_json(const json& tables, int value_dim)
{
    require(tables.is_array() && !tables.empty(), "martingale tables must be a non-empty array");
    MartingaleDifferenceSequence F(static_cast<int>(tables.size()), value_dim);
    for (int k = 1; k <= F.depth(); ++k) {
        const json& table = tables[k - 1];
        require(table.is_array() && table.size() == (std::size_t{1} << k),
                "table " + std::to_string(k) + " must have 2^" + std::to_string(k) + " entries");
        for (std::size_t idx = 0; idx < table.size(); ++idx) {
            auto e = F.entry(k, idx);
            if (value_dim == 1) {
                e[0] = pair_value(table[idx]);
            } else {
                require(table[idx].is_array() && table[idx].size() == static_cast<std::size_t>(value_dim),
                        "table entry has the wrong number of components");
                for (int c = 0; c < value_dim; ++c) {
                    e[c] = pair_value(table[idx][c]);
                }
            }
        }
    }
    return F;
}

double MartingaleRecord::reevaluate() const
{
    return perturbed_ratio_exact(sequence, config(), ExponentConfig(p, p0));
}

json to_json(const MartingaleRecord& r)
{
    return {{"p", r.p},
            {"p0", r.p0},
            {"tau", r.tau},
            {"N", r.depth()},
            {"m", r.sequence.value_dim()},
            {"predicate", to_string(r.predicate)},
            {"beta", r.beta},
            {"ratio", r.ratio},
            {"seed", r.seed},
            {"timestamp", r.timestamp},
            {"tables", tables_to_json(r.sequence)}};
}

MartingaleRecord martingale_record_from_json(const json& j)
{
    try {
        require(j.is_object(), "martingale record must be a JSON object");
        MartingaleRecord r;
        r.p = j.value("p", 2.0);
        r.p0 = j.value("p0", r.p);
        r.tau = j.value("tau", 0.0);
        r.predicate = admissibility_from_string(j.value("predicate", std::string("def2")).c_str());
        r.sequence = tables_from_json(j.at("tables"), j.value("m", 1));
        r.beta = j.at("beta").get<std::vector<int>>();
        r.config().validate(r.depth());
        r.ratio = j.value("ratio", 0.0);
        r.seed = j.value("seed", std::uint64_t{0});
        r.timestamp = j.value("timestamp", std::string());
        return r;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed martingale record: ") + e.what());
    }
}

std::string store_key(double p, double p0, double tau, int depth, Admissibility predicate)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d,%s", p, p0, tau, depth, to_string(predicate));
    return buf;
}

std::string store_key(const MartingaleRecord& r)
{
    return store_key(r.p, r.p0, r.tau, r.depth(), r.predicate);
}

MartingaleStore::MartingaleStore(std::filesystem::path directory) : directory_(std::move(directory))
{
    const auto path = file();
    if (!std::filesystem::exists(path)) {
        return;
    }
    std::ifstream in(path);
    if (!in) {
        throw StoreError("cannot read store file " + path.string());
    }
    try {
        const json doc = json::parse(in);
        if (!doc.is_object() || !doc.contains("records") || !doc["records"].is_object()) {
            throw StoreError("store file " + path.string() + " has no records object");
        }
        for (const auto& [key, value] : doc["records"].items()) {
            MartingaleRecord r = martingale_record_from_json(value);
            if (store_key(r) != key) {
                throw StoreError("store record key " + key + " does not match its contents");
            }
            records_.emplace(key, std::move(r));
        }
    } catch (const json::exception& e) {
        throw StoreError("corrupt store file " + path.string() + ": " + e.what());
    } catch (const ConfigError& e) {
        throw StoreError("corrupt store file " + path.string() + ": " + e.what());
    }
}

std::optional<MartingaleRecord> MartingaleStore::find(const std::string& key) const
{
    const auto it = records_.find(key);
    if (it == records_.end()) {
        return std::nullopt;
    }
    return it->second;
}

bool MartingaleStore::offer(MartingaleRecord record)
{
    record.ratio = record.reevaluate();
    const std::string key = store_key(record);
    const auto it = records_.find(key);
    if (it != records_.end() && !(record.ratio > it->second.ratio + 1e-12)) {
        return false;
    }
    records_.insert_or_assign(key, std::move(record));
    save();
    return true;
}

void MartingaleStore::save() const
{
    std::error_code ec;
    std::filesystem::create_directories(directory_, ec);
    if (ec) {
        throw StoreError("cannot create store directory " + directory_.string() + ": " + ec.message());
    }
    json doc = {{"version", 1}, {"records", json::object()}};
    for (const auto& [key, r] : records_) {
        doc["records"][key] = to_json(r);
    }
    const auto target = file();
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << doc.dump(2) << '\n';
        if (!out) {
            throw StoreError("cannot write " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        throw StoreError("cannot replace " + target.string() + ": " + ec.message());
    }
}

} // namespace lpmult
