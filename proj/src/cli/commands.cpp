#include "lpmult/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lpmult/catalog.hpp"
#include "lpmult/error.hpp"
#include "lpmult/multiplier.hpp"
#include "lpmult/report.hpp"
#include "lpmult/rng.hpp"
#include "lpmult/search.hpp"
#include "lpmult/serialization.hpp"
#include "lpmult/tensor.hpp"
#include "lpmult/transference.hpp"
#include "lpmult/witness.hpp"

namespace lpmult {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Options {
    double p = 2.0;
    std::optional<double> p0;
    double tau = 0.0;
    int n = 0;
    int search_n = 3;
    std::optional<int> grid;
    std::uint64_t seed = 1;
    std::string out;
    std::string store_dir;
    std::string predicate = "def2";

    int restarts = 8;
    int iters = 400;
    double max_seconds = 60.0;
    int value_dim = 1;
    bool real_only = false;
    bool warm_start = false;

    std::string family;
    double theta = 0.0;
    double c = 1.0;
    double z_re = 0.0;
    double z_im = 0.0;
    int riesz_j = 1;
    std::string martingale;
    int direction_bound = 8;
    std::string rescaling = "symmetric";

    std::string symbol = "identity";
    std::string j;
    std::string k;
    std::string b;
    double eps_start = 1.0;
    int halvings = 10;
    double radius = 4.0;
    double step = 0.05;
    std::string support;
    int n_start = 10;
    int doublings = 2;
    int dimension = 1;
    int blocks = 2;
    int degree = 3;
    int count = 50;

    std::string p_list = "4";
    std::string values;
    bool imaginary = false;

    double p0_value() const { return p0.value_or(p); }
};

std::string fmt(double v)
{
    if (std::isnan(v)) {
        return "";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        parts.push_back(cur);
    }
    return parts;
}

std::vector<int> parse_ints(const std::string& text)
{
    std::vector<int> v;
    for (const auto& s : split(text, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoi(s, &used));
            require(used == s.size(), "");
        } catch (const std::exception&) {
            throw ConfigError("cannot parse integer list '" + text + "'");
        }
    }
    require(!v.empty(), "empty integer list");
    return v;
}

std::vector<double> parse_doubles(const std::string& text)
{
    std::vector<double> v;
    for (const auto& s : split(text, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(s, &used));
            require(used == s.size(), "");
        } catch (const std::exception&) {
            throw ConfigError("cannot parse number list '" + text + "'");
        }
    }
    require(!v.empty(), "empty number list");
    return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::trunc);
    file << text;
    if (!file) {
        throw ConfigError("cannot write output file " + path);
    }
}

OperatorFamilyParam family_param(const Options& o)
{
    OperatorFamilyParam param;
    param.family = family_from_string(o.family);
    param.theta = o.theta;
    param.c = o.c;
    param.z = {o.z_re, o.z_im};
    param.riesz_index = o.riesz_j;
    param.tau = o.tau;
    param.validate();
    return param;
}

SearchBudget budget_of(const Options& o)
{
    SearchBudget b{o.restarts, o.iters, o.seed, o.max_seconds};
    b.validate();
    return b;
}

// (Re d, Im d) as a real 2-vector; pointwise norms are unchanged.
MartingaleDifferenceSequence embed_real_pairs(const MartingaleDifferenceSequence& F)
{
    require(F.value_dim() == 1, "only scalar tables can be embedded as real pairs");
    MartingaleDifferenceSequence out(F.depth(), 2);
    for (int k = 1; k <= F.depth(); ++k) {
        for (std::size_t idx = 0; idx < (std::size_t{1} << k); ++idx) {
            const cdouble v = F.entry(k, idx)[0];
            out.entry(k, idx)[0] = v.real();
            out.entry(k, idx)[1] = v.imag();
        }
    }
    return out;
}

std::optional<MartingaleRecord> deepest_record(const MartingaleStore& store, const ExponentConfig& exps, double tau,
                                               int depth, Admissibility predicate, int value_dim)
{
    for (int n = depth; n >= 1; --n) {
        auto r = store.find(store_key(exps.p(), exps.p0(), tau, n, predicate));
        if (r && r->sequence.value_dim() == value_dim) {
            return r;
        }
    }
    return std::nullopt;
}

int cmd_search(const Options& o, std::ostream& out)
{
    const ExponentConfig exps(o.p, o.p0_value());
    const Admissibility predicate = admissibility_from_string(o.predicate.c_str());
    const SearchBudget budget = budget_of(o);
    require(o.search_n >= 1, "--n must be at least 1");
    require(o.value_dim >= 1, "--m must be at least 1");

    std::optional<MartingaleStore> store;
    if (!o.store_dir.empty()) {
        store.emplace(o.store_dir);
    }
    SearchOptions options;
    options.value_dim = o.value_dim;
    options.real_only = o.real_only;
    if (o.warm_start) {
        require(store.has_value(), "--warm-start needs --store-dir");
        if (auto r = deepest_record(*store, exps, o.tau, o.search_n, predicate, o.value_dim)) {
            options.warm_start = r->sequence;
            options.warm_config = r->config();
        }
    }

    const auto start = Clock::now();
    const SearchResult res = search_extremal(exps, o.tau, o.search_n, budget, options);
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

    CertReport rep;
    rep.family = "martingale";
    rep.p = exps.p();
    rep.p0 = exps.p0();
    rep.tau = o.tau;
    rep.depth = o.search_n;
    rep.achieved_ratio = res.ratio;
    rep.certified_lower_bound = res.ratio;
    rep.predicate = predicate;
    rep.seed = o.seed;
    rep.budget = budget;
    rep.wall_time_s = elapsed;
    rep.timestamp = utc_timestamp();
    if (exps.diagonal() && tau_admissible(exps.p(), o.tau, predicate)) {
        rep.target_constant = perturbed_transform_constant(exps.p(), o.tau);
        rep.gap = rep.target_constant - rep.certified_lower_bound;
    } else {
        rep.target_constant = kNaN;
        rep.gap = kNaN;
    }
    rep.details = {{"beta", res.config.beta},
                   {"m", o.value_dim},
                   {"real_only", o.real_only},
                   {"truncated", res.truncated},
                   {"ascents", res.ascents},
                   {"warm_start", options.warm_start.has_value()},
                   {"tables", tables_to_json(res.sequence)}};

    bool updated = false;
    if (store) {
        MartingaleRecord record;
        record.p = exps.p();
        record.p0 = exps.p0();
        record.tau = o.tau;
        record.predicate = predicate;
        record.sequence = res.sequence;
        record.beta = res.config.beta;
        record.ratio = res.ratio;
        record.seed = o.seed;
        record.timestamp = rep.timestamp;
        updated = store->offer(std::move(record));
    }
    rep.details["store_updated"] = updated;
    emit(o.out, to_json(rep).dump(2) + "\n", out);
    return 0;
}

int default_grid(const WitnessPlan& plan)
{
    for (int g : {2, 4, 8}) {
        if (alias_free(plan.n_plus, g) && alias_free(plan.n_minus, g)) {
            return g;
        }
    }
    return 2;
}

int cmd_certify(const Options& o, std::ostream& out)
{
    const OperatorFamilyParam param = family_param(o);
    const ExponentConfig exps(o.p, o.p0_value());
    const Admissibility predicate = admissibility_from_string(o.predicate.c_str());
    const SearchBudget budget = budget_of(o);
    const WitnessPlan plan = plan_family_witness(param, o.direction_bound);
    const int m = plan.matrix ? plan.symbol.rows() : 1;

    const auto start = Clock::now();
    std::string source;
    MartingaleDifferenceSequence sequence(1);
    std::vector<int> beta;
    if (!o.martingale.empty()) {
        std::ifstream in(o.martingale);
        require(static_cast<bool>(in), "cannot read martingale file " + o.martingale);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("martingale file is not valid JSON: " + std::string(e.what()));
        }
        const MartingaleRecord r = martingale_record_from_json(doc);
        require(o.n == 0 || o.n == r.depth(), "--n disagrees with the depth of the martingale file");
        sequence = r.sequence;
        beta = r.beta;
        source = "file";
    } else {
        const int depth = o.n == 0 ? 1 : o.n;
        std::optional<MartingaleRecord> r;
        if (!o.store_dir.empty()) {
            const MartingaleStore store(o.store_dir);
            r = store.find(store_key(exps.p(), exps.p0(), o.tau, depth, predicate));
        }
        if (r) {
            sequence = r->sequence;
            beta = r->beta;
            source = "store";
        } else {
            const SearchResult res = search_extremal(exps, o.tau, depth, budget);
            sequence = res.sequence;
            beta = res.config.beta;
            source = "search";
        }
    }
    if (m == 2 && sequence.value_dim() == 1) {
        sequence = embed_real_pairs(sequence);
    }
    require(sequence.value_dim() == m, "martingale value dimension does not match the family");

    WitnessSpec spec(exps, plan.symbol, sequence, TransformConfig{beta, o.tau});
    spec.n_plus = plan.n_plus;
    spec.n_minus = plan.n_minus;
    spec.delta_plus = plan.delta_plus;
    spec.delta_minus = plan.delta_minus;
    spec.unitary = plan.unitary;
    spec.grid = o.grid.value_or(default_grid(plan));
    if (o.rescaling == "unitary-factor") {
        spec.rescaling = Rescaling::UnitaryFactor;
    } else {
        require(o.rescaling == "symmetric", "--rescaling must be symmetric or unitary-factor");
    }

    const WitnessResult res = plan.matrix ? build_matrix_witness(spec) : build_witness(spec);
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

    CertReport rep = res.cert;
    rep.family = to_string(param.family);
    rep.param = param;
    rep.predicate = predicate;
    rep.seed = o.seed;
    rep.budget = budget;
    rep.wall_time_s = elapsed;
    rep.timestamp = utc_timestamp();
    rep.details["martingale_source"] = source;
    rep.details["tables"] = tables_to_json(sequence);
    try {
        rep.apply_target(target_constant(param, exps, predicate));
    } catch (const ConfigError& e) {
        rep.target_constant = kNaN;
        rep.gap = kNaN;
        rep.details["target_note"] = e.what();
    }
    emit(o.out, to_json(rep).dump(2) + "\n", out);
    return 0;
}

MultiplierSymbol transference_symbol(const Options& o, int dimension)
{
    if (o.symbol == "identity") {
        return MultiplierSymbol::constant(dimension, 1.0);
    }
    Options copy = o;
    copy.family = o.symbol;
    copy.tau = 0.0;
    return family_symbol(family_param(copy));
}

int cmd_gaussian(const Options& o, std::ostream& out)
{
    GaussianPairingConfig cfg;
    cfg.j = parse_ints(o.j);
    cfg.k = o.k.empty() ? cfg.j : parse_ints(o.k);
    cfg.dimension = static_cast<int>(cfg.j.size());
    cfg.radius = o.radius;
    cfg.step = o.step;
    cfg.p0 = o.p0_value();
    require(o.halvings >= 0, "--halvings must be non-negative");
    const MultiplierSymbol symbol = transference_symbol(o, cfg.dimension);
    if (!o.b.empty()) {
        const auto parts = parse_doubles(o.b);
        require(parts.size() % 2 == 0, "--b takes re,im pairs");
        for (std::size_t i = 0; i < parts.size(); i += 2) {
            cfg.b.emplace_back(parts[i], parts[i + 1]);
        }
    }

    // Limit as eps -> 0: (M(j) a, b) on the diagonal, 0 off it.
    cdouble limit{};
    if (cfg.j == cfg.k) {
        std::vector<double> xi(cfg.j.begin(), cfg.j.end());
        bool origin = true;
        for (double v : xi) {
            origin = origin && v == 0.0;
        }
        if (!origin || symbol.total()) {
            const SymbolValue mv = symbol(xi);
            Eigen::VectorXcd b = Eigen::VectorXcd::Ones(symbol.rows());
            if (!cfg.b.empty()) {
                b = Eigen::Map<const Eigen::VectorXcd>(cfg.b.data(), symbol.rows());
            }
            limit = b.dot(mv * Eigen::VectorXcd::Ones(symbol.cols()));
        }
    }

    std::ostringstream csv;
    csv << "eps,re,im,abs,target,error,status\n";
    double eps = o.eps_start;
    for (int h = 0; h <= o.halvings; ++h, eps *= 0.5) {
        cfg.epsilon = eps;
        try {
            const cdouble v = gaussian_damped_pairing(cfg, symbol);
            csv << fmt(eps) << ',' << fmt(v.real()) << ',' << fmt(v.imag()) << ',' << fmt(std::abs(v)) << ','
                << fmt(limit.real()) << ',' << fmt(std::abs(v - limit)) << ",ok\n";
        } catch (const ConfigError& e) {
            csv << fmt(eps) << ",,,,,," << '"' << e.what() << '"' << '\n';
        }
    }
    emit(o.out, csv.str(), out);
    return 0;
}

std::vector<FrequencyTuple> parse_support(const std::string& text)
{
    std::vector<FrequencyTuple> support;
    for (const auto& tuple_text : split(text, '|')) {
        FrequencyTuple tuple;
        for (const auto& freq : split(tuple_text, ';')) {
            tuple.push_back(parse_ints(freq));
        }
        require(!tuple.empty(), "empty tuple in --support");
        support.push_back(std::move(tuple));
    }
    require(!support.empty(), "--support is empty");
    return support;
}

int cmd_deviation(Options o, std::ostream& out)
{
    if (o.symbol == "identity") {
        o.symbol = "beurling-real";
    }
    const auto support = parse_support(o.support);
    const int d = static_cast<int>(support.front().front().size());
    const MultiplierSymbol symbol = transference_symbol(o, d);
    require(o.n_start >= 1 && o.doublings >= 0, "--n-start must be positive and --doublings non-negative");

    std::ostringstream csv;
    csv << "N,deviation,quarter_ratio\n";
    double prev = kNaN;
    long long shear = o.n_start;
    for (int i = 0; i <= o.doublings; ++i, shear *= 2) {
        require(shear <= std::numeric_limits<int>::max(), "shear factor overflow");
        const double dev = multiplier_deviation(symbol, support, static_cast<int>(shear));
        const double ratio = (std::isnan(prev) || dev == 0.0) ? kNaN : prev / dev;
        csv << shear << ',' << fmt(dev) << ',' << fmt(ratio) << '\n';
        prev = dev;
    }
    emit(o.out, csv.str(), out);
    return 0;
}

int cmd_shear(const Options& o, std::ostream& out)
{
    require(o.blocks >= 1, "--blocks must be positive");
    require(o.count >= 1, "--count must be positive");
    const int shear = o.n == 0 ? 2 : o.n;
    const TorusGrid grid(o.dimension, o.grid.value_or(8));
    Rng rng(o.seed);

    std::ostringstream csv;
    csv << "trial,lhs,rhs,relative_error,aligned\n";
    for (int t = 0; t < o.count; ++t) {
        std::vector<TensorGridFunction> summands;
        for (int b = 1; b <= o.blocks; ++b) {
            summands.push_back(random_tensor_polynomial(b, grid, o.degree, rng));
        }
        const ShearCheck check = shear_norm_check(summands, shear, o.p);
        csv << t << ',' << fmt(check.lhs) << ',' << fmt(check.rhs) << ','
            << fmt(std::abs(check.lhs - check.rhs) / std::max(check.rhs, 1e-300)) << ','
            << (check.aligned ? "true" : "false") << '\n';
    }
    emit(o.out, csv.str(), out);
    return 0;
}

std::string parameter_label(const OperatorFamilyParam& param)
{
    switch (param.family) {
    case Family::Rotated:
        return "theta=" + fmt(param.theta);
    case Family::Scaled:
        return "c=" + fmt(param.c);
    case Family::Fz:
        if (param.z.imag() == 0.0) {
            return "z=" + fmt(param.z.real());
        }
        if (param.z.real() == 0.0) {
            return "z=" + fmt(param.z.imag()) + "i";
        }
        return "z=" + fmt(param.z.real()) + (param.z.imag() < 0 ? "" : "+") + fmt(param.z.imag()) + "i";
    case Family::Riesz:
        return "j=" + std::to_string(param.riesz_index);
    default:
        return "tau=" + fmt(param.tau);
    }
}

// Best stored martingale ratio turned into a bound for the family, when its
// default witness is exact.
double certified_from_store(const MartingaleStore* store, const OperatorFamilyParam& param, double p,
                            Admissibility predicate)
{
    if (store == nullptr) {
        return kNaN;
    }
    WitnessPlan plan = plan_family_witness(param);
    const int m = plan.symbol.rows();
    const Eigen::MatrixXcd u = plan.unitary.value_or(Eigen::MatrixXcd::Identity(m, m));
    const double err = std::max(pointwise_norm(plan.symbol.at_lattice(plan.n_plus) - plan.delta_plus * u),
                                pointwise_norm(plan.symbol.at_lattice(plan.n_minus) - plan.delta_minus * u));
    if (err > 1e-12 || plan.delta_plus != -plan.delta_minus || (param.tau != 0.0 && plan.delta_plus != 1.0)) {
        return kNaN;
    }
    double best = kNaN;
    for (const auto& [key, r] : store->records()) {
        if (r.p == p && r.p0 == p && r.tau == param.tau && r.predicate == predicate) {
            const double v = r.ratio * plan.delta_plus;
            if (std::isnan(best) || v > best) {
                best = v;
            }
        }
    }
    return best;
}

int cmd_norms(const Options& o, std::ostream& out)
{
    const Admissibility predicate = admissibility_from_string(o.predicate.c_str());
    const auto ps = parse_doubles(o.p_list);
    std::optional<MartingaleStore> store;
    if (!o.store_dir.empty()) {
        store.emplace(o.store_dir);
    }
    OperatorFamilyParam base = family_param(o);
    std::vector<OperatorFamilyParam> params;
    if (o.values.empty()) {
        params.push_back(base);
    } else {
        for (double v : parse_doubles(o.values)) {
            OperatorFamilyParam q = base;
            switch (q.family) {
            case Family::Rotated:
                q.theta = v;
                break;
            case Family::Scaled:
                q.c = v;
                break;
            case Family::Fz:
                q.z = o.imaginary ? cdouble{0.0, v} : cdouble{v, 0.0};
                break;
            case Family::Riesz:
                q.riesz_index = static_cast<int>(v);
                break;
            default:
                q.tau = v;
                break;
            }
            params.push_back(q);
        }
    }

    std::ostringstream csv;
    csv << "family,parameter,p,tau,target,certified,gap,external_assumption,note\n";
    for (double p : ps) {
        const ExponentConfig exps = ExponentConfig::symmetric(p);
        for (const auto& param : params) {
            csv << to_string(param.family) << ',' << parameter_label(param) << ',' << fmt(p) << ','
                << fmt(param.tau) << ',';
            try {
                const TargetConstants t = target_constant(param, exps, predicate);
                const double cert = certified_from_store(store ? &*store : nullptr, param, p, predicate);
                csv << fmt(t.target) << ',' << fmt(cert) << ',' << fmt(t.target - cert) << ','
                    << (t.external_assumption ? "true" : "false") << ",\n";
            } catch (const ConfigError& e) {
                csv << ",,,," << '"' << e.what() << '"' << '\n';
            }
        }
    }
    emit(o.out, csv.str(), out);
    return 0;
}

void add_exponents(CLI::App* cmd, Options& o)
{
    cmd->add_option("--p", o.p, "source exponent p > 1");
    cmd->add_option("--p0", o.p0, "target exponent p0 > 1 (default p)");
    cmd->add_option("--tau", o.tau, "perturbation weight tau");
    cmd->add_option("--predicate", o.predicate, "tau admissibility: def2 or cor7")
        ->check(CLI::IsMember({"def2", "cor7"}));
}

void add_budget(CLI::App* cmd, Options& o)
{
    cmd->add_option("--seed", o.seed, "64-bit seed of the mt19937_64 generator");
    cmd->add_option("--restarts", o.restarts, "random restarts per depth");
    cmd->add_option("--iters", o.iters, "ascent iterations per start");
    cmd->add_option("--max-seconds", o.max_seconds, "wall-clock cap per depth");
}

void add_family_params(CLI::App* cmd, Options& o)
{
    cmd->add_option("--theta", o.theta, "rotation angle of the rotated family");
    cmd->add_option("--c", o.c, "coefficient of the scaled family");
    cmd->add_option("--z-re", o.z_re, "real part of z for F(z)");
    cmd->add_option("--z-im", o.z_im, "imaginary part of z for F(z)");
    cmd->add_option("--riesz-j", o.riesz_j, "Riesz transform index");
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Lower bounds for L^p Fourier multipliers via martingale transforms", "lpmult"};
    app.require_subcommand(1);

    auto* search = app.add_subcommand("search-martingale", "search for near-extremal martingale transforms");
    add_exponents(search, o);
    add_budget(search, o);
    search->add_option("--n", o.search_n, "martingale depth");
    search->add_option("--m", o.value_dim, "value dimension of the tables");
    search->add_flag("--real-only", o.real_only, "restrict tables to real values");
    search->add_flag("--warm-start", o.warm_start, "start from the deepest stored record");
    search->add_option("--out", o.out, "report file (default stdout)");
    search->add_option("--store-dir", o.store_dir, "directory of the best-known store");

    auto* certify = app.add_subcommand("certify", "build a sign witness and certify a lower bound");
    certify->add_option("family", o.family, "operator family")->required();
    add_exponents(certify, o);
    add_budget(certify, o);
    add_family_params(certify, o);
    certify->add_option("--n", o.n, "martingale depth when searching or reading the store");
    certify->add_option("--grid", o.grid, "grid points per axis (even)");
    certify->add_option("--martingale", o.martingale, "martingale instance file (JSON)");
    certify->add_option("--direction-bound", o.direction_bound, "search bound for approximate directions");
    certify->add_option("--rescaling", o.rescaling, "symmetric or unitary-factor");
    certify->add_option("--out", o.out, "report file (default stdout)");
    certify->add_option("--store-dir", o.store_dir, "directory of the best-known store");

    auto* transference = app.add_subcommand("transference", "transference checks as CSV tables");
    transference->require_subcommand(1);
    auto* gaussian = transference->add_subcommand("gaussian", "Gaussian-damped pairing over an eps halving sequence");
    gaussian->add_option("--symbol", o.symbol, "identity or a family tag");
    add_family_params(gaussian, o);
    gaussian->add_option("--j", o.j, "frequency j, comma separated")->required();
    gaussian->add_option("--k", o.k, "frequency k (default j)");
    gaussian->add_option("--b", o.b, "output vector as re,im pairs");
    gaussian->add_option("--p0", o.p0, "exponent p0 of the damping split");
    gaussian->add_option("--eps-start", o.eps_start, "first eps");
    gaussian->add_option("--halvings", o.halvings, "number of eps halvings");
    gaussian->add_option("--radius", o.radius, "quadrature half-width in units of sqrt(eps)");
    gaussian->add_option("--step", o.step, "quadrature step in units of sqrt(eps)");
    gaussian->add_option("--out", o.out, "CSV file (default stdout)");

    auto* deviation = transference->add_subcommand("deviation", "multiplier deviation under N-doubling");
    deviation->add_option("--symbol", o.symbol, "identity or a family tag (default beurling-real)");
    add_family_params(deviation, o);
    deviation->add_option("--support", o.support, "tuples 'l1;l2|...', coordinates comma separated")->required();
    deviation->add_option("--n-start", o.n_start, "first N");
    deviation->add_option("--n-doubling", o.doublings, "number of doublings of N");
    deviation->add_option("--out", o.out, "CSV file (default stdout)");

    auto* shear = transference->add_subcommand("shear", "shear identity on random trigonometric polynomials");
    shear->add_option("--d", o.dimension, "dimension of a block");
    shear->add_option("--grid", o.grid, "grid points per axis (default 8)");
    shear->add_option("--blocks", o.blocks, "number of summands J");
    shear->add_option("--n", o.n, "shear factor N (default 2)");
    shear->add_option("--p", o.p, "norm exponent");
    shear->add_option("--degree", o.degree, "largest frequency per axis");
    shear->add_option("--count", o.count, "number of random instances");
    shear->add_option("--seed", o.seed, "64-bit seed");
    shear->add_option("--out", o.out, "CSV file (default stdout)");

    auto* norms = app.add_subcommand("norms", "target constants per family as CSV");
    norms->add_option("family", o.family, "operator family")->required();
    add_family_params(norms, o);
    norms->add_option("--p-list", o.p_list, "comma separated exponents");
    norms->add_option("--tau", o.tau, "perturbation weight");
    norms->add_option("--values", o.values, "family parameter values (theta, c, z or tau)");
    norms->add_flag("--imag", o.imaginary, "treat --values as imaginary z for F");
    norms->add_option("--predicate", o.predicate, "def2 or cor7")->check(CLI::IsMember({"def2", "cor7"}));
    norms->add_option("--store-dir", o.store_dir, "directory of the best-known store");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream text;
        std::ostringstream errors;
        const int code = app.exit(e, text, errors);
        out << text.str();
        err << errors.str();
        return code == 0 ? 0 : 2;
    }

    try {
        if (*search) {
            return cmd_search(o, out);
        }
        if (*certify) {
            return cmd_certify(o, out);
        }
        if (*gaussian) {
            return cmd_gaussian(o, out);
        }
        if (*deviation) {
            return cmd_deviation(o, out);
        }
        if (*shear) {
            return cmd_shear(o, out);
        }
        if (*norms) {
            return cmd_norms(o, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const CrossCheckError& e) {
        err << "cross-check failure: " << e.what() << '\n';
        return 3;
    } catch (const StoreError& e) {
        err << "store error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "unexpected failure: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace lpmult
