#pragma once

// Differentiation of trigonometric barycentric interpolants.

#include "aaatrig/numerics.hpp"
#include "aaatrig/trigbary.hpp"

namespace aaatrig {

inline constexpr int max_derivative_order = 4;
// derivative_at refuses points closer than this to a support point.
inline constexpr double support_exclusion = 1e-8;

struct DiffMatrix {
    int order = 1;
    MatrixXc entries; // m x m on the support grid, rows sum to zero
};

// D^(p) f gives the p-th derivative of the interpolant at the support points.
DiffMatrix diff_matrix(const TrigModel& model, int p);

// r^(p)(z) away from the support points.
cplx derivative_at(const TrigModel& model, cplx z, int p);

// d^n/du^n of csc(u) or cot(u), n = 0..4.
cplx cst_derivative(Parity parity, cplx u, int n);

} // namespace aaatrig
