#pragma once

// Periodic lightning Laplace solver and its AAAtrig compression.
//
//   f(z) = sum_j a_j cot((z - z_j)/2) + sum_j b_j q_j(tan((z - z*)/2))
//
// q_j is the Arnoldi-orthogonalized version of t^j on the collocation points.
//
// Demo geometry: one solid half-disk {|z| <= 1/2, Im z >= 0} per period 2*pi,
// flow in the full plane around it. Corners at -1/2 and +1/2 (fluid angle
// 3*pi/2). Boundary condition Im[f(z) + i z] = 0 on the obstacle.

#include "aaatrig/numerics.hpp"
#include "aaatrig/polezero.hpp"
#include "aaatrig/solver.hpp"
#include "aaatrig/trigbary.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace aaatrig {

struct ArnoldiBasis {
    cplx center;      // z*
    MatrixXc h;       // (n+1) x n Hessenberg recurrence coefficients
    std::size_t degree() const { return static_cast<std::size_t>(h.cols()); }
};

struct LightningModel {
    std::vector<cplx> newman_poles;
    std::vector<cplx> newman_coeffs;
    ArnoldiBasis runge;
    std::vector<cplx> runge_coeffs;
    double boundary_residual = 0.0;
    std::size_t collocation_count = 0;
    double condition = 0.0; // 2-norm condition number of the column-scaled system

    std::size_t pole_count() const { return newman_poles.size(); }
};

struct Corner {
    cplx point;
    double bisector; // direction (radians) pointing away from the flow domain
};

// d_k = length * exp(-sigma_scale * (sqrt(n) - sqrt(k))), k = 1..n along each bisector.
// inside_domain flags positions that would sit in the flow; those are an error.
std::vector<cplx> place_poles(const std::vector<Corner>& corners, std::size_t n, double sigma_scale,
                              double length, const std::function<bool(cplx)>& inside_domain);

// Basis q_1..q_n of span{t, ..., t^n}, t = tan((z - z*)/2), with Q^H Q = K I on the
// K given points. Returns the basis values at those points.
ArnoldiBasis arnoldi_fit(cplx center, const std::vector<cplx>& points, std::size_t degree, MatrixXc& q);
// Basis values at new points by replaying the recurrence.
MatrixXc arnoldi_eval(const ArnoldiBasis& basis, const std::vector<cplx>& points);

struct BoundaryPoint {
    cplx z;
    double target; // required Im f(z)
};

// Real least squares for Re/Im of a_j and b_j so that Im f(z_k) = target_k.
// skeleton supplies the Newman poles, the Runge centre and the Runge degree.
LightningModel solve_dirichlet(const std::vector<BoundaryPoint>& boundary, std::vector<cplx> newman_poles,
                               cplx runge_center, std::size_t runge_degree);

cplx evaluate(const LightningModel& lm, cplx z);
FarField far_field(const LightningModel& lm);

// Fits an odd TrigModel to f on the given boundary samples, with the far-field
// limits of f as constraint rows.
TrigModel compress(const LightningModel& lm, const std::vector<cplx>& boundary_samples, double rel_tol);

// ---- demo geometry -------------------------------------------------------

inline constexpr double demo_radius = 0.5;

bool in_obstacle(cplx z);   // closed half-disk, nearest period copy
bool in_flow_domain(cplx z); // complement of the obstacles
std::vector<Corner> demo_corners();

// Boundary points of the obstacle clustered toward both corners with the tapered
// law; per_end points on each side at each corner end, plus uniform fill.
std::vector<cplx> demo_boundary(std::size_t per_end, std::size_t n_per_corner, double sigma_scale);

// Fixed 200-point test grid in the flow domain away from the obstacle.
std::vector<cplx> demo_interior_grid();

struct DemoConfig {
    std::size_t n_per_corner = 60;
    std::size_t runge_degree = 20;
    double sigma_scale = 4.0;
    double pole_length = 0.5;
    std::size_t points_per_pole = 30;
    cplx runge_center{pi, 0.2};
    std::size_t compress_samples = 1000;
    std::size_t compress_cluster = 4;  // n of the tapered law for the compression samples
    double compress_tol = 3e-5; // relative; the lightning field itself is only good to ~1e-5
};

struct DemoResult {
    LightningModel lightning;
    TrigModel compressed;
    std::vector<cplx> compressed_poles;
    double interior_error = 0.0;      // max |compressed - lightning| on the interior grid
    double compress_sample_error = 0.0;
    std::vector<TaperFit> tapers;     // one per corner, from the compressed poles
};

DemoResult run_demo(const DemoConfig& config);

} // namespace aaatrig
