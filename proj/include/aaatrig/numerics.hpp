#pragma once

// Dense linear algebra used by the fitting loop and the pole/zero extraction.

#include "aaatrig/trigbary.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace aaatrig {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

// Eigenvalues whose magnitude exceeds this are reported as infinite.
inline constexpr double infinite_eigenvalue_threshold = 1e13;

// Right singular vector of the smallest singular value, unit 2-norm.
VectorXc min_singular_direction(const MatrixXc& a);

struct GepResult {
    std::vector<cplx> finite_eigenvalues; // ascending real part, ties by imaginary part
    MatrixXc eigenvectors;                // column k belongs to finite_eigenvalues[k]
    std::size_t discarded_count = 0;
};

// Finite eigenvalues of A v = lambda B v for B = diag(0, 1, ..., 1) and A of
// one of two shapes:
//
//   arrowhead            bordered (pi support point)
//   [ h  u1 ... um ]     [ a  b  u2 ... um ]
//   [ 1  d1        ]     [ 1  0            ]
//   [ :     .      ]     [ 0  1  d2        ]
//   [ 1        dm  ]     [ :  :      .     ]
//                        [ 0  1         dm ]
//
// The singular head of B is deflated exactly, leaving a standard eigenproblem
// of size m or smaller. A nonsingular diagonal B falls back to eig(B^-1 A).
GepResult generalized_eig_arrow(const MatrixXc& a, const MatrixXc& b);

MatrixXc arrow_pencil(cplx head, std::span<const cplx> payload, std::span<const cplx> shifts);
MatrixXc bordered_pencil(cplx corner, cplx head, std::span<const cplx> payload,
                         std::span<const cplx> shifts);
// diag(0, 1, ..., 1) of dimension n.
MatrixXc singular_head_identity(std::size_t n);

// Ascending real part, ties broken by imaginary part.
bool eigen_order_less(cplx a, cplx b);

} // namespace aaatrig
