#pragma once

// Poles, zeros and residues of trigonometric barycentric approximants.
//
// odd:  e^{iz} maps the csc form to an ordinary barycentric form in e^{iz}
// even: tan(z/2) maps the cot form to one with a constant term
// A support point at pi (tan = inf) is handled by a bordered pencil.

#include "aaatrig/trigbary.hpp"

#include <optional>
#include <vector>

namespace aaatrig {

enum class TransformKind { odd_exp, even_tan, even_tan_pi };

// |z_j - pi| below this selects the pi special case.
inline constexpr double pi_support_tol = 1e-12;
// Support points this close to pi but outside pi_support_tol are rejected.
inline constexpr double near_pi_band = 1e-6;
// Back-mapped eigenvalues with |Im z| above this are treated as infinite.
inline constexpr double at_infinity_height = 30.0;

struct TransformedBarycentric {
    TransformKind kind = TransformKind::odd_exp;
    std::vector<cplx> shifted_support; // e^{i z_j} or tan(z_j/2); pi entry (index 0) unused
    std::vector<cplx> shifted_weights; // w_j e^{i z_j/2} or w_j (1 + tan^2)
    std::vector<cplx> fvals;           // in the same order as the shifted arrays
    std::vector<cplx> weights;
    cplx head_num = 0.0; // c_n (sums exclude the pi entry)
    cplx head_den = 0.0; // c_d
};

TransformedBarycentric transform(const TrigModel& model);

struct PoleZeroReport {
    std::vector<cplx> poles;
    std::vector<cplx> zeros;
    std::vector<cplx> residues;        // classical Res_{z=p} r
    std::vector<cplx> pf_coefficients; // residues / 2, the cot((z-p)/2) coefficients
    cplx pf_constant = 0.0;
    bool clustered = false;            // min pole separation below 1e-6
    std::size_t rejected = 0;          // eigenvalues failing the residual check
};

struct RootSet {
    std::vector<cplx> roots;
    std::size_t rejected = 0;
};

// Roots of the denominator (poles) and numerator (zeros) in the canonical strip.
RootSet find_poles(const TrigModel& model);
RootSet find_zeros(const TrigModel& model);

// Throws "non-simple pole" when d'(p) vanishes.
std::vector<cplx> residues(const TrigModel& model, const std::vector<cplx>& poles);
// Same as residues() for a single pole but returns nothing for a non-simple pole.
std::optional<cplx> try_residue(const TrigModel& model, cplx pole);

PoleZeroReport poles_and_zeros(const TrigModel& model);

struct PartialFractions {
    std::vector<cplx> poles;
    std::vector<cplx> coefficients; // q_k
    cplx constant = 0.0;
    bool clustered = false;
};

// r(z) ~ c + sum_k q_k cot((z - p_k)/2)
PartialFractions partial_fractions(const TrigModel& model);
cplx evaluate_partial_fractions(const PartialFractions& pf, cplx z);

// Weighted barycentric sums at z (no support-point shortcut).
cplx denominator(const TrigModel& model, cplx z);
cplx numerator(const TrigModel& model, cplx z);
// sum_j |w_j cst((z - z_j)/2)|, the scale for the residual checks.
double denominator_scale(const TrigModel& model, cplx z);
double numerator_scale(const TrigModel& model, cplx z);

struct TaperFit {
    cplx corner;
    std::vector<double> distances; // ascending, k = 1 nearest
    double beta = 0.0;
    double sigma = 0.0;
    double r_squared = 0.0;
};

// Fits log d_k = log beta - sigma sqrt(k) to the k_max nearest points within
// distance 1 of the corner. Exponential clustering toward the corner gives sigma < 0.
TaperFit taper_fit(const std::vector<cplx>& points, cplx corner, std::size_t k_max);
// Same fit applied to given distances (sorted internally).
TaperFit taper_fit_distances(std::vector<double> distances);

} // namespace aaatrig
