#include "aaatrig/baselines.hpp"
#include "aaatrig/error.hpp"
#include "aaatrig/sampling.hpp"

#include <doctest.h>

using namespace aaatrig;

namespace {

// least-squares fit of sum_{|k| <= m} c_k e^{ikx} by normal equations, error at the samples
double normal_equation_error(const SampleSet& s, int m)
{
    const auto n = static_cast<Eigen::Index>(s.size());
    MatrixXc a(n, 2 * m + 1);
    VectorXc f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double x = s.points[static_cast<std::size_t>(i)].real();
        for (int k = -m; k <= m; ++k) a(i, k + m) = std::exp(cplx(0, k * x));
        f(i) = s.values[static_cast<std::size_t>(i)];
    }
    const VectorXc c = (a.adjoint() * a).ldlt().solve(a.adjoint() * f);
    return (a * c - f).norm();
}

double grid_error(const FourierInterpolant& fi, const SampleSet& s)
{
    double e = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) e += std::norm(evaluate(fi, s.points[k].real()) - s.values[k]);
    return std::sqrt(e);
}

} // namespace

TEST_SUITE("baselines") {

TEST_CASE("classic AAA on constant data")
{
    Rng rng(1);
    const SampleSet s = sample(random_rectangle(100, rng, 0, 6, -1, 1), [](cplx) { return cplx(-2, 1); });
    const AaaModel m = aaa_fit(s, FitConfig{});
    CHECK(m.order() == 1);
    CHECK(std::abs(evaluate(m, cplx(0.3, 0.3)) - cplx(-2, 1)) < 1e-14);
}

TEST_CASE("classic AAA reaches tolerance on a meromorphic function")
{
    Rng rng(2);
    const SampleSet s = sample(random_rectangle(500, rng, 0, two_pi, -0.5, 0.5), [](cplx z) { return 1.0 / (z - cplx(3, 1)); });
    const AaaModel m = aaa_fit(s, FitConfig{});
    CHECK(m.converged);
    CHECK(m.order() <= 4);
    CHECK(std::abs(evaluate(m, cplx(1, 0.2)) - 1.0 / (cplx(1, 0.2) - cplx(3, 1))) < 1e-11);
}

TEST_CASE("DFT of simple signals")
{
    for (std::size_t n : {4, 7, 16}) {
        const SampleSet c = sample(equispaced(n), [](cplx z) { return std::cos(z); });
        const FourierInterpolant fi = fft_interpolant(c, n / 2);
        for (std::size_t k = 0; k < n; ++k) {
            const double want = (k == 1 || k == n - 1) ? 0.5 : 0.0;
            CHECK(std::abs(fi.coefficients[k] - want) < 1e-14);
        }
        const SampleSet one = sample(equispaced(n), [](cplx) { return cplx(1.0); });
        const FourierInterpolant f1 = fft_interpolant(one, n / 2);
        CHECK(std::abs(f1.coefficients[0] - 1.0) < 1e-15);
        for (std::size_t k = 1; k < n; ++k) CHECK(std::abs(f1.coefficients[k]) < 1e-15);
    }
}

TEST_CASE("full-order interpolation and Parseval")
{
    Rng rng(6);
    for (std::size_t n : {9, 32}) {
        std::vector<cplx> f;
        for (std::size_t k = 0; k < n; ++k) f.push_back(rng.complex_normalish());
        const SampleSet s = SampleSet::make(equispaced(n), f);
        const FourierInterpolant fi = fft_interpolant(s, n / 2);
        double e = 0.0, lhs = 0.0, rhs = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            e = std::max(e, std::abs(evaluate(fi, s.points[k].real()) - f[k]));
            lhs += std::norm(f[k]) / static_cast<double>(n);
            rhs += std::norm(fi.coefficients[k]);
        }
        CHECK(e < 1e-12);
        CHECK(std::abs(lhs - rhs) < 1e-12 * lhs);
    }
}

TEST_CASE("truncation is the least-squares optimum")
{
    const SampleSet s = sample(equispaced(101), [](cplx z) { return std::tanh(5.0 * std::cos(z)) + cplx(0, 0.3) * std::sin(3.0 * z); });
    const FourierInterpolant full = fft_interpolant(s, 50);
    for (int m : {2, 5, 10}) {
        const double ours = grid_error(truncate(full, static_cast<std::size_t>(m)), s);
        const double ref = normal_equation_error(s, m);
        CHECK(std::abs(ours - ref) <= 1e-10 * (1 + ref));
    }
}

TEST_CASE("uniform grid is required")
{
    std::vector<cplx> z = equispaced(16);
    z[3] += 1e-6;
    std::vector<cplx> f(16, 1.0);
    CHECK_THROWS_WITH(fft_interpolant(SampleSet::make(z, f), 8), "FFT baseline requires uniform grid");
}

}
