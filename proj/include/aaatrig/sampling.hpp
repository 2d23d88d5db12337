#pragma once

// Sample generators and the seeded random source used by the experiments.
//
// Random numbers: std::mt19937_64 seeded with the user seed; a double in
// [0, 1) is (x >> 11) * 2^-53 for each 64-bit output x.

#include "aaatrig/trigbary.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace aaatrig {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    cplx complex_normalish() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }
    std::uint64_t next() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

// 2*pi*k/M, k = 0..M-1
std::vector<cplx> equispaced(std::size_t count);
// Uniform in [x0, x1] x [y0, y1].
std::vector<cplx> random_rectangle(std::size_t count, Rng& rng, double x0, double x1, double y0, double y1);

SampleSet sample(const std::vector<cplx>& points, const std::function<cplx(cplx)>& f);

// Random model of order m: support in the strip with |Im| <= 0.5, complex
// values and weights. force_pi puts the first support point at pi.
TrigModel random_model(Rng& rng, Parity parity, std::size_t m, bool force_pi = false);

} // namespace aaatrig
