#pragma once

// Trigonometric barycentric rational functions
//
//            sum_j f_j w_j cst((z - z_j)/2)
//     r(z) = ------------------------------ ,   cst = csc (odd) or cot (even),
//              sum_j w_j cst((z - z_j)/2)
//
// with all points living in the canonical period window 0 <= Re z < 2*pi.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace aaatrig {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Support points closer than this (in the strip metric) are treated as hits.
inline constexpr double support_hit_tol = 1e-13;
// |Im u| beyond which cst is evaluated through its exponential form.
inline constexpr double exp_form_threshold = 20.0;
// Distance from k*pi below which cst is reported singular.
inline constexpr double basis_singularity_tol = 1e-14;

enum class Parity { odd, even };

const char* to_string(Parity p);
Parity parse_parity(const std::string& s);

struct SampleSet {
    std::vector<cplx> points; // canonicalized, pairwise distinct
    std::vector<cplx> values;

    std::size_t size() const { return points.size(); }

    // Canonicalizes the points and rejects non-finite entries, size mismatch,
    // fewer than two samples and duplicated canonical points.
    static SampleSet make(std::span<const cplx> points, std::span<const cplx> values);
};

struct TrigModel {
    Parity parity = Parity::odd;
    std::vector<cplx> support;
    std::vector<cplx> fvals;
    std::vector<cplx> weights;        // unit 2-norm
    std::vector<double> err_history;  // max residual after each greedy step
    double scale = 0.0;               // max |f| over the sample set
    bool converged = true;
    bool cleanup_skipped = false;     // cleanup would have removed every support point

    std::size_t order() const { return support.size(); }

    // Hand-built model: canonicalizes the support, normalizes the weights and
    // fills err_history with zeros (unknown).
    static TrigModel make(Parity parity, std::span<const cplx> support,
                          std::span<const cplx> fvals, std::span<const cplx> weights);

    // Throws InputError when a structural invariant is broken.
    void validate() const;
};

struct FarField {
    cplx plus;  // limit z -> +i inf
    cplx minus; // limit z -> -i inf
};

// z - 2*pi*floor(Re z / 2*pi); result has 0 <= Re < 2*pi.
cplx canonicalize(cplx z);

// Distance between two points of the period window, measured on the cylinder.
double strip_distance(cplx a, cplx b);

// csc(u) for odd, cot(u) for even.
cplx cst(Parity parity, cplx u);

// Value reported at an exact pole hit.
cplx complex_infinity();
bool is_complex_infinity(cplx v);

cplx evaluate(const TrigModel& model, cplx z);
std::vector<cplx> evaluate_batch(const TrigModel& model, std::span<const cplx> zs);

FarField far_field(const TrigModel& model);

// a_j = prod_{k != j} csc((z_k - z_j)/2), normalized to unit norm. Used as
// weights these turn the barycentric formula back into the trigonometric
// interpolating polynomial (odd number of nodes, csc basis).
std::vector<cplx> interpolatory_weights(std::span<const cplx> support);

} // namespace aaatrig
