#pragma once

// Comparison methods: classic AAA (1/(z - z_j) basis) and FFT trigonometric
// interpolation on a uniform grid.

#include "aaatrig/solver.hpp"
#include "aaatrig/trigbary.hpp"

#include <vector>

namespace aaatrig {

struct AaaModel {
    std::vector<cplx> support;
    std::vector<cplx> fvals;
    std::vector<cplx> weights; // unit norm
    std::vector<double> err_history;
    double scale = 0.0;
    bool converged = true;

    std::size_t order() const { return support.size(); }
};

// Same greedy loop as fit(), without strip projection of the basis, cleanup or constraints.
AaaModel aaa_fit(const SampleSet& samples, const FitConfig& config);
cplx evaluate(const AaaModel& model, cplx z);

struct FourierInterpolant {
    std::vector<cplx> coefficients; // F_k, k = 0..M-1
    std::size_t order = 0;          // truncation order m <= M/2
    std::size_t grid_size = 0;      // M
};

// Points must be 2*pi*n/M, n = 0..M-1 (any order, to 1e-12).
FourierInterpolant fft_interpolant(const SampleSet& samples, std::size_t m);
// Balanced (least oscillatory) form truncated at the stored order.
cplx evaluate(const FourierInterpolant& fi, double x);
FourierInterpolant truncate(const FourierInterpolant& fi, std::size_t m);

// F_k = (1/M) sum_n f_n e^{-2 pi i k n / M}
std::vector<cplx> dft(const std::vector<cplx>& f);

} // namespace aaatrig
