#pragma once

// AAAtrig fitting loop and Froissart cleanup.

#include "aaatrig/numerics.hpp"
#include "aaatrig/trigbary.hpp"

#include <optional>
#include <vector>

namespace aaatrig {

struct FitConfig {
    Parity parity = Parity::odd;
    double rel_tol = 1e-13;     // relative to max |f|
    std::size_t max_order = 100;
    bool cleanup = true;
    double cleanup_tol = 1e-13; // relative to max |f|
    std::optional<FarField> far_field_constraint;

    void validate() const;
};

struct LeastSquaresSystem {
    MatrixXc matrix;                     // (F_k - f_j) cst((Z_k - z_j)/2), then constraint rows
    std::vector<std::size_t> active_rows; // sample indices of Z minus the support
    VectorXc big_f;                       // S_F diagonal: data on the active rows
    VectorXc small_f;                     // S_f diagonal: data at the support
    MatrixXc cauchy;                      // cst((Z_k - z_j)/2)
    std::size_t constraint_rows = 0;
};

LeastSquaresSystem assemble_loewner(const SampleSet& samples, const std::vector<std::size_t>& support,
                                    Parity parity);

// Odd appends 2 rows (f+ - f_j) e^{-i z_j/2}, (f- - f_j) e^{+i z_j/2}; even appends f_inf - f_j.
void append_far_field_rows(LeastSquaresSystem& system, const FarField& target, Parity parity,
                           const std::vector<cplx>& support, const std::vector<cplx>& fvals);
MatrixXc far_field_rows(const FarField& target, Parity parity, const std::vector<cplx>& support,
                        const std::vector<cplx>& fvals);

TrigModel fit(const SampleSet& samples, const FitConfig& config);

// Removes the support point nearest to every pole whose residue is below
// cleanup_tol * scale and solves the least-squares problem once more.
TrigModel cleanup(const TrigModel& model, const SampleSet& samples, const FitConfig& config);

// Max |f - r| over the samples that are not support points.
double max_sample_error(const TrigModel& model, const SampleSet& samples);

} // namespace aaatrig
