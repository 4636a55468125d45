#include "lpmult/spectral.hpp"

#include <memory>

#include <fftw3.h>

#include "lpmult/error.hpp"

namespace lpmult {

namespace {

struct FftwDeleter {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

using FftwBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

FftwBuffer allocate(std::size_t n)
{
    auto* p = fftw_alloc_complex(n == 0 ? 1 : n);
    if (p == nullptr) {
        throw std::bad_alloc();
    }
    return FftwBuffer(p);
}

class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan)
    {
        if (plan_ == nullptr) {
            throw ConfigError("FFTW could not create a plan for this layout");
        }
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() { fftw_destroy_plan(plan_); }

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

// In-place transform along the block axes of a [outer][block][inner * components] array.
// FFTW_ESTIMATE on fftw_malloc'd storage keeps the chosen algorithm, and thus
// every output bit, independent of timing and allocation address.
void transform_block(fftw_complex* data, const BlockLayout& layout, int components, int sign)
{
    const int d = layout.block.dimension();
    const int g = layout.block.points_per_axis();
    const std::size_t trailing = layout.inner * static_cast<std::size_t>(components);

    std::vector<fftw_iodim> dims(d);
    std::size_t stride = trailing;
    for (int a = d - 1; a >= 0; --a) {
        dims[a].n = g;
        dims[a].is = static_cast<int>(stride);
        dims[a].os = static_cast<int>(stride);
        stride *= static_cast<std::size_t>(g);
    }
    fftw_iodim loops[2];
    loops[0].n = static_cast<int>(layout.outer);
    loops[0].is = loops[0].os = static_cast<int>(layout.block.size() * trailing);
    loops[1].n = static_cast<int>(trailing);
    loops[1].is = loops[1].os = 1;

    Plan plan(fftw_plan_guru_dft(d, dims.data(), 2, loops, data, data, sign, FFTW_ESTIMATE));
    plan.execute();
}

} // namespace

std::vector<cdouble> apply_block_multiplier(std::span<const cdouble> values, const BlockLayout& layout,
                                            const MultiplierSymbol& symbol)
{
    const TorusGrid& block = layout.block;
    require(symbol.dimension() == block.dimension(), "symbol dimension " + std::to_string(symbol.dimension())
                                                         + " does not match grid dimension "
                                                         + std::to_string(block.dimension()));
    const int cols = symbol.cols();
    const int rows = symbol.rows();
    const std::size_t bsize = block.size();
    const std::size_t in_count = layout.outer * bsize * layout.inner * cols;
    require(values.size() == in_count, "value count does not match the block layout and symbol input shape");

    std::vector<SymbolValue> table(bsize);
    std::vector<bool> nonzero(bsize);
    for (std::size_t b = 0; b < bsize; ++b) {
        table[b] = symbol.at_lattice(block.frequency_vector(b));
        nonzero[b] = !table[b].isZero(0.0);
    }

    auto in = allocate(in_count);
    auto* in_c = reinterpret_cast<cdouble*>(in.get());
    std::copy(values.begin(), values.end(), in_c);
    transform_block(in.get(), layout, cols, FFTW_FORWARD);

    const std::size_t out_count = layout.outer * bsize * layout.inner * rows;
    auto out = allocate(out_count);
    auto* out_c = reinterpret_cast<cdouble*>(out.get());
    std::fill(out_c, out_c + out_count, cdouble{});

    const double scale = 1.0 / static_cast<double>(bsize);
    Eigen::VectorXcd x(cols);
    for (std::size_t o = 0; o < layout.outer; ++o) {
        for (std::size_t b = 0; b < bsize; ++b) {
            if (!nonzero[b]) {
                continue;
            }
            const SymbolValue& m = table[b];
            for (std::size_t i = 0; i < layout.inner; ++i) {
                const std::size_t cell = (o * bsize + b) * layout.inner + i;
                for (int c = 0; c < cols; ++c) {
                    x(c) = in_c[cell * cols + c];
                }
                const Eigen::VectorXcd y = m * x;
                for (int r = 0; r < rows; ++r) {
                    out_c[cell * rows + r] = y(r) * scale;
                }
            }
        }
    }

    transform_block(out.get(), layout, rows, FFTW_BACKWARD);
    return std::vector<cdouble>(out_c, out_c + out_count);
}

std::vector<cdouble> block_mean(std::span<const cdouble> values, const BlockLayout& layout, int components)
{
    const std::size_t bsize = layout.block.size();
    require(values.size() == layout.outer * bsize * layout.inner * components, "value count does not match layout");
    const std::size_t trailing = layout.inner * components;
    std::vector<cdouble> mean(layout.outer * trailing);
    for (std::size_t o = 0; o < layout.outer; ++o) {
        for (std::size_t b = 0; b < bsize; ++b) {
            const std::size_t base = (o * bsize + b) * trailing;
            for (std::size_t t = 0; t < trailing; ++t) {
                mean[o * trailing + t] += values[base + t];
            }
        }
    }
    for (auto& v : mean) {
        v /= static_cast<double>(bsize);
    }
    return mean;
}

std::vector<cdouble> fourier_coefficients(const GridFunction& f)
{
    const BlockLayout layout{1, f.grid(), 1};
    const std::size_t n = f.values().size();
    auto buf = allocate(n);
    auto* c = reinterpret_cast<cdouble*>(buf.get());
    std::copy(f.values().begin(), f.values().end(), c);
    transform_block(buf.get(), layout, f.components(), FFTW_FORWARD);

    // The half-step offset contributes a phase e^{-i k (-pi + h/2)} per axis.
    const TorusGrid& grid = f.grid();
    const double origin = grid.coordinate(0);
    std::vector<cdouble> coeffs(n);
    for (std::size_t b = 0; b < grid.size(); ++b) {
        const auto k = grid.frequency_vector(b);
        double phase = 0.0;
        for (int kk : k) {
            phase -= kk * origin;
        }
        const cdouble rot = std::polar(1.0 / static_cast<double>(grid.size()), phase);
        for (int comp = 0; comp < f.components(); ++comp) {
            coeffs[b * f.components() + comp] = c[b * f.components() + comp] * rot;
        }
    }
    return coeffs;
}

} // namespace lpmult
