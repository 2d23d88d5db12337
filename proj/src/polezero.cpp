#include "aaatrig/polezero.hpp"

#include "aaatrig/error.hpp"
#include "aaatrig/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aaatrig {

namespace {

constexpr cplx I{0.0, 1.0};

// Residual acceptance for back-mapped roots: |d(p)| <= tol * sum_j |w_j cst|.
constexpr double root_residual_tol = 1e-6;
// d'(p) below this (relative) marks a pole as non-simple.
constexpr double simple_pole_tol = 1e-10;
// Relative size below which c_d (or c_n) counts as zero, putting a root at pi.
constexpr double pi_root_tol = 1e-12;
constexpr double cluster_tol = 1e-6;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// derivative of cst with respect to its argument
cplx cst_prime(Parity parity, cplx u)
{
    const cplx c = cst(Parity::even, u);
    if (parity == Parity::odd) return -cst(Parity::odd, u) * c;
    return -(1.0 + c * c);
}

enum class Side { den, num };

// value and z-derivative of the denominator or numerator sum
std::pair<cplx, cplx> sum_and_slope(const TrigModel& model, cplx z, Side side)
{
    cplx v = 0.0, dv = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j) {
        const cplx u = 0.5 * (z - model.support[j]);
        const cplx c = model.weights[j] * (side == Side::num ? model.fvals[j] : cplx(1.0));
        v += c * cst(model.parity, u);
        dv += 0.5 * c * cst_prime(model.parity, u);
    }
    return {v, dv};
}

// A few Newton steps on the barycentric sum; the eigenvalues of the odd
// pencil lose accuracy on the unit circle.
cplx polish(const TrigModel& model, cplx z, Side side)
{
    try {
        auto [v, dv] = sum_and_slope(model, z, side);
        for (int it = 0; it < 3; ++it) {
            if (dv == cplx(0.0)) break;
            const cplx step = v / dv;
            if (!(std::abs(step) < 1e-3)) break;
            const cplx zn = z - step;
            const auto [vn, dvn] = sum_and_slope(model, zn, side);
            if (!(std::abs(vn) < std::abs(v))) break;
            z = zn;
            v = vn;
            dv = dvn;
        }
    } catch (const NumericalError&) {
    }
    return canonicalize(z);
}

std::vector<cplx> map_back(const TransformedBarycentric& t, const std::vector<cplx>& eig)
{
    std::vector<cplx> out;
    for (cplx lam : eig) {
        cplx z;
        if (t.kind == TransformKind::odd_exp) {
            if (lam == cplx(0.0)) continue;
            z = -I * std::log(lam);
        } else {
            z = 2.0 * std::atan(lam);
        }
        if (!finite(z) || std::abs(z.imag()) > at_infinity_height) continue;
        out.push_back(canonicalize(z));
    }
    return out;
}

RootSet find_roots(const TrigModel& model, Side side)
{
    model.validate();
    RootSet rs;
    if (model.order() < 2) return rs;

    const TransformedBarycentric t = transform(model);
    const std::size_t m = t.weights.size();
    std::vector<cplx> payload(m);
    for (std::size_t j = 0; j < m; ++j)
        payload[j] = side == Side::den ? t.shifted_weights[j] : t.fvals[j] * t.shifted_weights[j];
    const cplx head = side == Side::den ? t.head_den : t.head_num;

    GepResult gep;
    if (t.kind == TransformKind::even_tan_pi) {
        const cplx corner = side == Side::den ? -t.weights[0] : -t.fvals[0] * t.weights[0];
        const std::span<const cplx> pl(payload.data() + 1, m - 1);
        const std::span<const cplx> sh(t.shifted_support.data() + 1, m - 1);
        gep = generalized_eig_arrow(bordered_pencil(corner, head, pl, sh), singular_head_identity(m + 1));
    } else {
        gep = generalized_eig_arrow(arrow_pencil(head, payload, t.shifted_support),
                                    singular_head_identity(m + 1));
    }
    std::vector<cplx> cand = map_back(t, gep.finite_eigenvalues);

    // a vanishing head puts the root at tan(z/2) = inf, i.e. z = pi
    if (t.kind == TransformKind::even_tan) {
        double den_mag = 0.0, num_mag = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double a = std::abs(t.weights[j] * t.shifted_support[j]);
            den_mag += a;
            num_mag += std::abs(t.fvals[j]) * a;
        }
        const bool den_zero = std::abs(t.head_den) <= pi_root_tol * den_mag;
        const bool num_zero = std::abs(t.head_num) <= pi_root_tol * num_mag;
        const bool here = side == Side::den ? den_zero && !num_zero : num_zero && !den_zero;
        const bool already = std::any_of(cand.begin(), cand.end(),
                                         [](cplx z) { return strip_distance(z, {pi, 0.0}) < 1e-6; });
        if (here && !already) cand.push_back({pi, 0.0});
    }

    for (cplx z : cand) {
        z = polish(model, z, side);
        bool ok = false;
        try {
            const cplx v = side == Side::den ? denominator(model, z) : numerator(model, z);
            const double s = side == Side::den ? denominator_scale(model, z) : numerator_scale(model, z);
            ok = std::abs(v) <= root_residual_tol * s;
        } catch (const NumericalError&) {
            ok = false; // landed on a support point
        }
        if (ok)
            rs.roots.push_back(z);
        else
            ++rs.rejected;
    }
    std::sort(rs.roots.begin(), rs.roots.end(), eigen_order_less);
    return rs;
}

bool has_cluster(const std::vector<cplx>& p)
{
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b)
            if (strip_distance(p[a], p[b]) < cluster_tol) return true;
    return false;
}

cplx pf_constant(const TrigModel& model)
{
    try {
        const FarField ff = far_field(model);
        return 0.5 * (ff.plus + ff.minus);
    } catch (const NumericalError&) {
        return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    }
}

} // namespace

TransformedBarycentric transform(const TrigModel& model)
{
    model.validate();
    const std::size_t m = model.order();
    TransformedBarycentric t;

    if (model.parity == Parity::odd) {
        t.kind = TransformKind::odd_exp;
        for (std::size_t j = 0; j < m; ++j) {
            t.shifted_support.push_back(std::exp(I * model.support[j]));
            t.shifted_weights.push_back(model.weights[j] * std::exp(0.5 * I * model.support[j]));
        }
        t.fvals = model.fvals;
        t.weights = model.weights;
        return t;
    }

    std::size_t pi_index = m;
    for (std::size_t j = 0; j < m; ++j) {
        const double d = std::abs(model.support[j] - cplx(pi, 0.0));
        if (d < pi_support_tol) {
            if (pi_index != m) throw InputError("two support points at pi");
            pi_index = j;
        } else if (d < near_pi_band) {
            throw NumericalError("near-pi support point, tighten threshold");
        }
    }

    std::vector<std::size_t> order;
    if (pi_index != m) order.push_back(pi_index);
    for (std::size_t j = 0; j < m; ++j)
        if (j != pi_index) order.push_back(j);

    t.kind = pi_index != m ? TransformKind::even_tan_pi : TransformKind::even_tan;
    for (std::size_t j : order) {
        t.fvals.push_back(model.fvals[j]);
        t.weights.push_back(model.weights[j]);
        if (j == pi_index) {
            t.shifted_support.push_back(0.0);
            t.shifted_weights.push_back(0.0);
            continue;
        }
        const cplx tz = std::tan(0.5 * model.support[j]);
        const cplx wt = model.weights[j] * (1.0 + tz * tz);
        t.shifted_support.push_back(tz);
        t.shifted_weights.push_back(wt);
        t.head_den += model.weights[j] * tz;
        t.head_num += model.fvals[j] * model.weights[j] * tz;
    }
    return t;
}

cplx denominator(const TrigModel& model, cplx z)
{
    cplx d = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j)
        d += model.weights[j] * cst(model.parity, 0.5 * (z - model.support[j]));
    return d;
}

cplx numerator(const TrigModel& model, cplx z)
{
    cplx n = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j)
        n += model.fvals[j] * model.weights[j] * cst(model.parity, 0.5 * (z - model.support[j]));
    return n;
}

double denominator_scale(const TrigModel& model, cplx z)
{
    double s = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j)
        s += std::abs(model.weights[j] * cst(model.parity, 0.5 * (z - model.support[j])));
    return s;
}

double numerator_scale(const TrigModel& model, cplx z)
{
    double s = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j)
        s += std::abs(model.fvals[j] * model.weights[j] * cst(model.parity, 0.5 * (z - model.support[j])));
    return s;
}

RootSet find_poles(const TrigModel& model) { return find_roots(model, Side::den); }
RootSet find_zeros(const TrigModel& model) { return find_roots(model, Side::num); }

std::optional<cplx> try_residue(const TrigModel& model, cplx pole)
{
    cplx dp = 0.0;
    double mag = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j) {
        const cplx t = 0.5 * model.weights[j] * cst_prime(model.parity, 0.5 * (pole - model.support[j]));
        dp += t;
        mag += std::abs(t);
    }
    if (!(std::abs(dp) > simple_pole_tol * mag)) return std::nullopt;
    return numerator(model, pole) / dp;
}

std::vector<cplx> residues(const TrigModel& model, const std::vector<cplx>& poles)
{
    std::vector<cplx> out;
    for (cplx p : poles) {
        const auto r = try_residue(model, p);
        if (!r) throw NumericalError("non-simple pole");
        out.push_back(*r);
    }
    return out;
}

PoleZeroReport poles_and_zeros(const TrigModel& model)
{
    PoleZeroReport rep;
    const RootSet p = find_poles(model);
    const RootSet z = find_zeros(model);
    rep.poles = p.roots;
    rep.zeros = z.roots;
    rep.rejected = p.rejected + z.rejected;
    rep.residues = residues(model, rep.poles);
    for (cplx r : rep.residues) rep.pf_coefficients.push_back(0.5 * r);
    rep.pf_constant = pf_constant(model);
    rep.clustered = has_cluster(rep.poles);
    return rep;
}

PartialFractions partial_fractions(const TrigModel& model)
{
    PartialFractions pf;
    pf.poles = find_poles(model).roots;
    for (cplx r : residues(model, pf.poles)) pf.coefficients.push_back(0.5 * r);
    pf.constant = model.order() == 1 ? model.fvals[0] : pf_constant(model);
    pf.clustered = has_cluster(pf.poles);
    return pf;
}

cplx evaluate_partial_fractions(const PartialFractions& pf, cplx z)
{
    cplx s = pf.constant;
    for (std::size_t k = 0; k < pf.poles.size(); ++k)
        s += pf.coefficients[k] * cst(Parity::even, 0.5 * (z - pf.poles[k]));
    return s;
}

TaperFit taper_fit_distances(std::vector<double> d)
{
    std::sort(d.begin(), d.end());
    if (d.size() < 4) throw InputError("insufficient cluster");
    for (double v : d)
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("distances must be positive");

    const double n = static_cast<double>(d.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double x = std::sqrt(static_cast<double>(k + 1));
        const double y = std::log(d[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double icpt = (sy - slope * sx) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    const double ybar = sy / n;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double x = std::sqrt(static_cast<double>(k + 1));
        const double y = std::log(d[k]);
        ss_res += (y - icpt - slope * x) * (y - icpt - slope * x);
        ss_tot += (y - ybar) * (y - ybar);
    }
    TaperFit tf;
    tf.distances = std::move(d);
    tf.beta = std::exp(icpt);
    tf.sigma = -slope;
    tf.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
    return tf;
}

TaperFit taper_fit(const std::vector<cplx>& points, cplx corner, std::size_t k_max)
{
    std::vector<double> d;
    for (cplx p : points) {
        const double r = strip_distance(p, corner);
        if (r > 0.0 && r <= 1.0) d.push_back(r);
    }
    std::sort(d.begin(), d.end());
    if (k_max > 0 && d.size() > k_max) d.resize(k_max);
    TaperFit tf = taper_fit_distances(std::move(d));
    tf.corner = corner;
    return tf;
}

} // namespace aaatrig
