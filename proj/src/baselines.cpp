#include "aaatrig/baselines.hpp"

#include "aaatrig/error.hpp"
#include "greedy.hpp"

#include <cmath>
#include <limits>

namespace aaatrig {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double grid_tol = 1e-12;

struct CauchyKernel {
    cplx operator()(cplx big_z, cplx z) const
    {
        if (big_z == z) throw NumericalError("basis singularity");
        return 1.0 / (big_z - z);
    }
};

} // namespace

AaaModel aaa_fit(const SampleSet& samples, const FitConfig& config)
{
    config.validate();
    const detail::GreedyResult g = detail::greedy_fit(samples.points, samples.values, config.rel_tol,
                                                      config.max_order, CauchyKernel{}, {});
    AaaModel m;
    for (std::size_t j = 0; j < g.support.size(); ++j) {
        m.support.push_back(samples.points[g.support[j]]);
        m.fvals.push_back(samples.values[g.support[j]]);
        m.weights.push_back(g.weights(static_cast<Eigen::Index>(j)));
    }
    m.err_history = g.err_history;
    m.scale = g.scale;
    m.converged = g.converged;
    return m;
}

cplx evaluate(const AaaModel& model, cplx z)
{
    cplx num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j) {
        if (std::abs(z - model.support[j]) < support_hit_tol) return model.fvals[j];
        const cplx c = model.weights[j] / (z - model.support[j]);
        num += c * model.fvals[j];
        den += c;
    }
    if (den == cplx(0.0)) return complex_infinity();
    return num / den;
}

std::vector<cplx> dft(const std::vector<cplx>& f)
{
    // direct sum with exact twiddle indexing (k*n mod M)
    const std::size_t n = f.size();
    std::vector<cplx> tw(n);
    for (std::size_t k = 0; k < n; ++k) tw[k] = std::polar(1.0, -two_pi * static_cast<double>(k) / static_cast<double>(n));
    std::vector<cplx> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += f[j] * tw[(k * j) % n];
        out[k] = s / static_cast<double>(n);
    }
    return out;
}

FourierInterpolant fft_interpolant(const SampleSet& samples, std::size_t m)
{
    const std::size_t n = samples.size();
    if (n < 2) throw InputError("FFT baseline requires uniform grid");
    std::vector<cplx> f(n);
    std::vector<bool> seen(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx z = samples.points[k];
        const double pos = z.real() * static_cast<double>(n) / two_pi;
        const auto idx = static_cast<std::size_t>(std::llround(pos)) % n;
        const double x = two_pi * static_cast<double>(idx) / static_cast<double>(n);
        if (std::abs(z.imag()) > grid_tol || std::abs(strip_distance(z, {x, 0.0})) > grid_tol || seen[idx])
            throw InputError("FFT baseline requires uniform grid");
        seen[idx] = true;
        f[idx] = samples.values[k];
    }
    FourierInterpolant fi;
    fi.coefficients = dft(f);
    fi.grid_size = n;
    fi.order = std::min(m, n / 2);
    return fi;
}

FourierInterpolant truncate(const FourierInterpolant& fi, std::size_t m)
{
    FourierInterpolant out = fi;
    out.order = std::min(m, fi.grid_size / 2);
    return out;
}

cplx evaluate(const FourierInterpolant& fi, double x)
{
    const std::size_t n = fi.grid_size;
    const auto& c = fi.coefficients;
    cplx s = c[0];
    // k = M/2 (M even) is handled separately as a cosine
    const std::size_t top = n % 2 == 0 ? n / 2 - 1 : (n - 1) / 2;
    for (std::size_t k = 1; k <= std::min(fi.order, top); ++k) {
        const double kx = static_cast<double>(k) * x;
        s += c[k] * std::exp(I * kx) + c[n - k] * std::exp(-I * kx);
    }
    if (n % 2 == 0 && fi.order == n / 2) s += c[n / 2] * std::cos(0.5 * static_cast<double>(n) * x);
    return s;
}

} // namespace aaatrig
