#include "aaatrig/sampling.hpp"

#include "aaatrig/error.hpp"

namespace aaatrig {

std::vector<cplx> equispaced(std::size_t count)
{
    std::vector<cplx> z(count);
    for (std::size_t k = 0; k < count; ++k) z[k] = two_pi * static_cast<double>(k) / static_cast<double>(count);
    return z;
}

std::vector<cplx> random_rectangle(std::size_t count, Rng& rng, double x0, double x1, double y0, double y1)
{
    std::vector<cplx> z(count);
    for (auto& p : z) {
        const double x = rng.uniform(x0, x1);
        const double y = rng.uniform(y0, y1);
        p = {x, y};
    }
    return z;
}

SampleSet sample(const std::vector<cplx>& points, const std::function<cplx(cplx)>& f)
{
    std::vector<cplx> v;
    v.reserve(points.size());
    for (cplx z : points) v.push_back(f(z));
    return SampleSet::make(points, v);
}

TrigModel random_model(Rng& rng, Parity parity, std::size_t m, bool force_pi)
{
    if (m == 0) throw InputError("order must be positive");
    std::vector<cplx> z, f, w;
    // support spread over the strip with a minimum separation so the models stay well posed
    const double slot = two_pi / static_cast<double>(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double x = slot * (static_cast<double>(j) + rng.uniform(0.15, 0.85));
        z.push_back({x, rng.uniform(-0.5, 0.5)});
        f.push_back(rng.complex_normalish());
        cplx wj = rng.complex_normalish();
        if (std::abs(wj) < 0.1) wj += 0.5;
        w.push_back(wj);
    }
    if (force_pi) {
        // replace the support point closest to pi
        std::size_t best = 0;
        for (std::size_t j = 1; j < m; ++j)
            if (std::abs(z[j] - pi) < std::abs(z[best] - pi)) best = j;
        z[best] = pi;
        std::swap(z[best], z[0]);
        std::swap(f[best], f[0]);
        std::swap(w[best], w[0]);
    }
    return TrigModel::make(parity, z, f, w);
}

} // namespace aaatrig
