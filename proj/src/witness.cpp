#include "lpmult/witness.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lpmult/error.hpp"

namespace lpmult {

WitnessSpec::WitnessSpec(ExponentConfig exps_, MultiplierSymbol symbol_, MartingaleDifferenceSequence sequence_,
                         TransformConfig config_)
    : exps(exps_), symbol(std::move(symbol_)), sequence(std::move(sequence_)), config(std::move(config_))
{
}

std::vector<double> WitnessSpec::alpha() const
{
    std::vector<double> a;
    a.reserve(config.beta.size());
    for (int b : config.beta) {
        a.push_back(b > 0 ? delta_plus : delta_minus);
    }
    return a;
}

std::vector<double> sign_block(const TorusGrid& grid, std::span<const int> n)
{
    require(static_cast<int>(n.size()) == grid.dimension(), "direction dimension does not match the grid");
    long long sum = 0;
    bool nonzero = false;
    for (int v : n) {
        sum += v;
        nonzero = nonzero || v != 0;
    }
    require(nonzero, "direction must be nonzero");
    const double phase = (sum % 2 != 0) ? 0.0 : 0.5 * grid.spacing();

    std::vector<double> psi(grid.size());
    long long balance = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto theta = grid.point(i);
        double dot = 0.0;
        for (std::size_t a = 0; a < n.size(); ++a) {
            dot += n[a] * theta[a];
        }
        const double s = std::sin(dot - phase);
        require(std::abs(s) > 1e-9, "direction has a sample on the zero set of its sign function");
        psi[i] = s > 0.0 ? 1.0 : -1.0;
        balance += s > 0.0 ? 1 : -1;
    }
    require(balance == 0, "sign function of the direction does not have mean zero on this grid");
    return psi;
}

bool alias_free(std::span<const int> n, int g)
{
    const int d = static_cast<int>(n.size());
    for (int l = 1; l < 2 * g; l += 2) {
        std::vector<long long> w(d);
        bool zero = true;
        for (int a = 0; a < d; ++a) {
            long long v = ((static_cast<long long>(l) * n[a]) % g + g) % g;
            if (v >= g / 2) {
                v -= g;
            }
            w[a] = v;
            zero = zero && v == 0;
        }
        if (zero) {
            continue;
        }
        for (int a = 0; a < d; ++a) {
            for (int b = a + 1; b < d; ++b) {
                if (w[a] * n[b] != w[b] * n[a]) {
                    return false;
                }
            }
            if ((w[a] == 0) != (n[a] == 0)) {
                return false;
            }
        }
    }
    return true;
}

DirectionMatch find_direction(const MultiplierSymbol& symbol, const SymbolValue& target, int bound)
{
    require(bound >= 1, "direction search bound must be positive");
    const int d = symbol.dimension();
    const int side = 2 * bound + 1;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) {
        total *= static_cast<std::size_t>(side);
    }
    DirectionMatch best;
    long long best_len = 0;
    std::vector<int> n(d);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        long long len = 0;
        for (int a = d - 1; a >= 0; --a) {
            n[a] = static_cast<int>(rest % side) - bound;
            rest /= side;
            len += static_cast<long long>(n[a]) * n[a];
        }
        if (len == 0) {
            continue;
        }
        const double err = pointwise_norm(symbol.at_lattice(n) - target);
        if (best.n.empty() || err < best.error - 1e-15 || (std::abs(err - best.error) <= 1e-15 && len < best_len)) {
            best.n = n;
            best.error = err;
            best_len = len;
        }
    }
    return best;
}

namespace {

void validate_spec(const WitnessSpec& spec, int m)
{
    require(spec.exps.p0() <= spec.exps.p(), "the witness needs p0 <= p");
    require(spec.delta_plus > spec.delta_minus, "delta+ must exceed delta-");
    require(spec.grid >= 2 && spec.grid % 2 == 0, "witness grid must be even");
    const int n = spec.sequence.depth();
    spec.config.validate(n);
    require(spec.sequence.value_dim() == m, "martingale value dimension does not match the symbol");
    require(static_cast<int>(spec.n_plus.size()) == spec.symbol.dimension()
                && static_cast<int>(spec.n_minus.size()) == spec.symbol.dimension(),
            "witness directions must have the symbol dimension");
    require(!spec.sequence.is_zero(), "martingale is identically zero");
}

Eigen::MatrixXcd unitary_of(const WitnessSpec& spec, int m)
{
    if (!spec.unitary) {
        return Eigen::MatrixXcd::Identity(m, m);
    }
    const Eigen::MatrixXcd& u = *spec.unitary;
    require(u.rows() == m && u.cols() == m, "unitary factor has the wrong shape");
    const double defect = (u.adjoint() * u - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff();
    require(defect <= 1e-12, "unitary factor is not unitary (defect " + std::to_string(defect) + ")");
    return u;
}

WitnessResult assemble(const WitnessSpec& spec, int m)
{
    validate_spec(spec, m);
    const Eigen::MatrixXcd u = unitary_of(spec, m);
    const int depth = spec.sequence.depth();
    const double tau = spec.config.tau;
    const auto alpha = spec.alpha();

    const TorusGrid block(spec.symbol.dimension(), spec.grid);
    const auto psi_plus = sign_block(block, spec.n_plus);
    const auto psi_minus = sign_block(block, spec.n_minus);

    const double err_plus = pointwise_norm(spec.symbol.at_lattice(spec.n_plus) - spec.delta_plus * u);
    const double err_minus = pointwise_norm(spec.symbol.at_lattice(spec.n_minus) - spec.delta_minus * u);

    WitnessResult res{TensorGridFunction(depth + 1, block, m, spec.point_cap),
                      TensorGridFunction(depth + 1, block, 2 * m, spec.point_cap), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, false, {}};
    res.delta_error = std::max(err_plus, err_minus);
    res.exact = spec.symbol.even() && res.delta_error <= spec.delta_tolerance
                && alias_free(spec.n_plus, spec.grid) && alias_free(spec.n_minus, spec.grid);

    const auto lifted = MultiplierSymbol::stack_identity(spec.symbol, tau);
    const std::size_t points = res.phi_sum.points();

    // Block signs per point: s_0 = psi+, s_k = psi by beta_k.
    std::vector<std::vector<double>> sign(depth + 1, std::vector<double>(points));
    for (std::size_t i = 0; i < points; ++i) {
        for (int b = 0; b <= depth; ++b) {
            const bool plus = b == 0 || spec.config.beta[b - 1] > 0;
            sign[b][i] = (plus ? psi_plus : psi_minus)[res.phi_sum.block_point(i, b)];
        }
    }

    TensorGridFunction expected(depth + 1, block, 2 * m, spec.point_cap);
    double phi_norms = 0.0;
    for (int k = 1; k <= depth; ++k) {
        TensorGridFunction phi(depth + 1, block, m, spec.point_cap);
        const auto table = spec.sequence.table(k);
        for (std::size_t i = 0; i < points; ++i) {
            std::size_t idx = 0;
            for (int b = 0; b < k; ++b) {
                idx = (idx << 1) | (sign[b][i] < 0 ? 1u : 0u);
            }
            const Eigen::Map<const Eigen::VectorXcd> d(table.data() + idx * m, m);
            const Eigen::VectorXcd v = sign[k][i] * d;
            const Eigen::VectorXcd uv = alpha[k - 1] * (u * v);
            for (int c = 0; c < m; ++c) {
                phi.at(i, c) = v(c);
                res.phi_sum.at(i, c) += v(c);
                expected.at(i, c) += uv(c);
                expected.at(i, m + c) += tau * v(c);
            }
        }
        phi_norms += lp_norm(phi, spec.exps.p0());
        res.transformed_sum += tensor_lift_apply(phi, lifted, k);
    }

    for (std::size_t i = 0; i < expected.values().size(); ++i) {
        res.eigen_residual = std::max(res.eigen_residual, std::abs(expected.values()[i] - res.transformed_sum.values()[i]));
    }

    const double denom = lp_norm(res.phi_sum, spec.exps.p());
    require(denom > 0.0, "witness test function vanishes");
    res.ratio = lp_norm(res.transformed_sum, spec.exps.p0()) / denom;
    res.martingale_ratio = weighted_ratio_exact(spec.sequence, alpha, tau, spec.exps);
    res.slack = res.delta_error * phi_norms / denom;

    double factor = 1.0;
    if (spec.rescaling == Rescaling::UnitaryFactor) {
        factor += std::abs(spec.delta_plus + spec.delta_minus) / (std::abs(spec.delta_plus) + std::abs(spec.delta_minus));
    }
    res.rescaled_bound = perturbed_ratio_exact(spec.sequence, spec.config, spec.exps) / (spec.rescale() * factor);

    if (res.exact && std::abs(res.ratio - res.martingale_ratio) > spec.cross_check_tolerance) {
        throw CrossCheckError("witness pipeline ratio " + std::to_string(res.ratio)
                              + " disagrees with the martingale ratio " + std::to_string(res.martingale_ratio));
    }

    CertReport& cert = res.cert;
    cert.p = spec.exps.p();
    cert.p0 = spec.exps.p0();
    cert.tau = tau;
    cert.depth = depth;
    cert.grid = spec.grid;
    cert.achieved_ratio = res.ratio;
    cert.certified_lower_bound = res.ratio;
    cert.details = {
        {"martingale_ratio", res.martingale_ratio},
        {"rescale_A", spec.rescale()},
        {"rescaled_bound", res.rescaled_bound},
        {"rescaling", spec.rescaling == Rescaling::Symmetric ? "symmetric" : "unitary-factor"},
        {"delta_plus", spec.delta_plus},
        {"delta_minus", spec.delta_minus},
        {"delta_error", res.delta_error},
        {"eigen_residual", res.eigen_residual},
        {"slack", res.slack},
        {"exact_directions", res.exact},
        {"n_plus", spec.n_plus},
        {"n_minus", spec.n_minus},
        {"beta", spec.config.beta},
        {"symbol", spec.symbol.name()},
    };
    return res;
}

} // namespace

WitnessResult build_witness(const WitnessSpec& spec)
{
    require(spec.symbol.rows() == 1 && spec.symbol.cols() == 1, "build_witness expects a scalar first component");
    return assemble(spec, 1);
}

WitnessResult build_matrix_witness(const WitnessSpec& spec)
{
    require(spec.symbol.rows() == spec.symbol.cols(), "build_matrix_witness expects a square matrix symbol");
    require(spec.unitary.has_value(), "build_matrix_witness needs the unitary factor U");
    return assemble(spec, spec.symbol.rows());
}

WitnessPlan plan_family_witness(const OperatorFamilyParam& param, int direction_bound)
{
    param.validate();
    const auto one = [](cdouble v) { return Eigen::MatrixXcd::Constant(1, 1, v); };
    const std::vector<int> e1{1, 0}, e2{0, 1}, diag{1, 1}, anti{1, -1};

    switch (param.family) {
    case Family::Beurling:
    case Family::BeurlingReal:
    case Family::Vector: {
        auto sym = param.family == Family::Beurling ? beurling_symbol() : beurling_real_symbol();
        return {sym, e2, e1, 1.0, -1.0, std::nullopt, false};
    }
    case Family::BeurlingImag:
        return {beurling_imag_symbol(), diag, anti, 1.0, -1.0, std::nullopt, false};
    case Family::BeurlingMatrix:
        return {beurling_matrix_symbol(), e2, e1, 1.0, -1.0, Eigen::MatrixXcd::Identity(2, 2), true};
    case Family::Scaled: {
        const double c = param.c;
        require(c != 0.0, "scaled family needs c != 0");
        if (std::abs(c) >= 1.0) {
            // m(1,0) = c, m(0,1) = -c
            return {scaled_symbol(c), c > 0 ? e1 : e2, c > 0 ? e2 : e1, std::abs(c), -std::abs(c), std::nullopt,
                    false};
        }
        // m(1,1) = i, m(1,-1) = -i
        return {scaled_symbol(c), diag, anti, 1.0, -1.0, one({0.0, 1.0}), false};
    }
    case Family::Fz: {
        const cdouble z = param.z;
        if (z.real() == 0.0 && std::abs(z.imag()) >= 1.0) {
            const double y = z.imag();
            return {fz_symbol(z), diag, anti, std::abs(y), -std::abs(y), one({0.0, y > 0 ? 1.0 : -1.0}), false};
        }
        if (z.real() == 0.0) {
            return {fz_symbol(z), e1, e2, 1.0, -1.0, std::nullopt, false};
        }
        require(z.imag() == 0.0, "F(z) witness needs real or purely imaginary z");
        const double top = std::sqrt(1.0 + z.real() * z.real());
        const auto sym = fz_symbol(z);
        const auto plus = find_direction(sym, one(top), direction_bound);
        const auto minus = find_direction(sym, one(-top), direction_bound);
        return {sym, plus.n, minus.n, top, -top, std::nullopt, false};
    }
    case Family::Rotated: {
        const auto sym = rotated_symbol(param.theta);
        const auto plus = find_direction(sym, one(1.0), direction_bound);
        const auto minus = find_direction(sym, one(-1.0), direction_bound);
        return {sym, plus.n, minus.n, 1.0, -1.0, std::nullopt, false};
    }
    case Family::Riesz:
        throw ConfigError("the riesz symbol is odd; the sign witness needs an even symbol");
    }
    throw ConfigError("unknown operator family");
}

} // namespace lpmult
