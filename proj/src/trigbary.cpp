#include "aaatrig/trigbary.hpp"

#include "aaatrig/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace aaatrig {

namespace {

constexpr cplx I{0.0, 1.0};

// Beyond this height every cst term underflows; the far-field limit is exact
// to working precision there.
constexpr double far_field_height = 600.0;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

} // namespace

const char* to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

Parity parse_parity(const std::string& s)
{
    if (s == "odd") return Parity::odd;
    if (s == "even") return Parity::even;
    throw InputError("unknown parity '" + s + "' (expected odd or even)");
}

cplx canonicalize(cplx z)
{
    if (!finite(z)) throw InputError("non-finite sample point");
    double x = z.real() - two_pi * std::floor(z.real() / two_pi);
    // floor rounding can leave x == 2*pi for tiny negative inputs
    if (x >= two_pi) x -= two_pi;
    if (x < 0.0) x = 0.0;
    return {x, z.imag()};
}

double strip_distance(cplx a, cplx b)
{
    double dx = a.real() - b.real();
    dx -= two_pi * std::round(dx / two_pi);
    return std::hypot(dx, a.imag() - b.imag());
}

cplx cst(Parity parity, cplx u)
{
    if (!finite(u)) throw NumericalError("non-finite basis argument");
    const double k = std::round(u.real() / pi);
    if (std::abs(u - cplx(k * pi, 0.0)) < basis_singularity_tol)
        throw NumericalError("basis singularity");

    const double y = u.imag();
    if (y > exp_form_threshold) {
        const cplx p = std::exp(I * u); // |p| = e^{-y}
        const cplx p2 = p * p;
        return parity == Parity::odd ? 2.0 * I * p / (p2 - 1.0) : I * (p2 + 1.0) / (p2 - 1.0);
    }
    if (y < -exp_form_threshold) {
        const cplx q = std::exp(-I * u); // |q| = e^{y}
        const cplx q2 = q * q;
        return parity == Parity::odd ? 2.0 * I * q / (1.0 - q2) : I * (1.0 + q2) / (1.0 - q2);
    }
    const cplx s = std::sin(u);
    return parity == Parity::odd ? 1.0 / s : std::cos(u) / s;
}

cplx complex_infinity() { return {std::numeric_limits<double>::infinity(), 0.0}; }

bool is_complex_infinity(cplx v) { return std::isinf(v.real()) || std::isinf(v.imag()); }

SampleSet SampleSet::make(std::span<const cplx> points, std::span<const cplx> values)
{
    if (points.size() != values.size())
        throw InputError("points and values differ in length");
    if (points.size() < 2) throw InputError("at least two samples are required");

    SampleSet s;
    s.points.reserve(points.size());
    for (cplx z : points) s.points.push_back(canonicalize(z));
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!finite(values[k])) {
            std::ostringstream msg;
            msg << "non-finite sample value at row " << k;
            throw InputError(msg.str());
        }
    }
    s.values.assign(values.begin(), values.end());

    std::vector<std::size_t> order(s.points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto less = [&](std::size_t a, std::size_t b) {
        const cplx& p = s.points[a];
        const cplx& q = s.points[b];
        return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    };
    std::stable_sort(order.begin(), order.end(), less);
    std::ostringstream dups;
    bool any = false;
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (s.points[order[k]] == s.points[order[k - 1]]) {
            dups << (any ? ", " : "") << order[k - 1] << "/" << order[k];
            any = true;
        }
    }
    if (any) throw InputError("duplicate canonical sample points at rows " + dups.str());
    return s;
}

TrigModel TrigModel::make(Parity parity, std::span<const cplx> support,
                          std::span<const cplx> fvals, std::span<const cplx> weights)
{
    if (support.empty() || support.size() != fvals.size() || support.size() != weights.size())
        throw InputError("support, values and weights must be non-empty and of equal length");
    TrigModel m;
    m.parity = parity;
    for (cplx z : support) m.support.push_back(canonicalize(z));
    m.fvals.assign(fvals.begin(), fvals.end());
    double nrm = 0.0;
    for (cplx w : weights) nrm += std::norm(w);
    nrm = std::sqrt(nrm);
    if (!(nrm > 0.0) || !std::isfinite(nrm)) throw InputError("weights must be finite and not all zero");
    for (cplx w : weights) m.weights.push_back(w / nrm);
    m.err_history.assign(m.support.size(), 0.0);
    for (cplx f : m.fvals) m.scale = std::max(m.scale, std::abs(f));
    return m;
}

void TrigModel::validate() const
{
    const std::size_t m = support.size();
    if (m == 0) throw InputError("model has no support points");
    if (fvals.size() != m || weights.size() != m)
        throw InputError("support, values and weights differ in length");
    if (err_history.size() != m) throw InputError("error history length differs from the order");
    double nrm = 0.0;
    for (cplx w : weights) nrm += std::norm(w);
    if (std::abs(std::sqrt(nrm) - 1.0) > 1e-12) throw InputError("weights are not unit norm");
    for (cplx z : support) {
        if (!finite(z) || z.real() < 0.0 || z.real() >= two_pi)
            throw InputError("support point outside the canonical strip");
    }
}

FarField far_field(const TrigModel& model)
{
    if (model.parity == Parity::even) {
        cplx num = 0.0, den = 0.0;
        double mag = 0.0;
        for (std::size_t j = 0; j < model.order(); ++j) {
            num += model.fvals[j] * model.weights[j];
            den += model.weights[j];
            mag += std::abs(model.weights[j]);
        }
        if (std::abs(den) <= 1e-14 * mag) throw NumericalError("degenerate far field");
        const cplx v = num / den;
        return {v, v};
    }

    cplx num_p = 0.0, den_p = 0.0, num_m = 0.0, den_m = 0.0;
    double mag_p = 0.0, mag_m = 0.0;
    for (std::size_t j = 0; j < model.order(); ++j) {
        const cplx ep = std::exp(-0.5 * I * model.support[j]);
        const cplx em = std::exp(0.5 * I * model.support[j]);
        const cplx w = model.weights[j];
        num_p += model.fvals[j] * w * ep;
        den_p += w * ep;
        num_m += model.fvals[j] * w * em;
        den_m += w * em;
        mag_p += std::abs(w * ep);
        mag_m += std::abs(w * em);
    }
    if (std::abs(den_p) <= 1e-14 * mag_p || std::abs(den_m) <= 1e-14 * mag_m)
        throw NumericalError("degenerate far field");
    return {num_p / den_p, num_m / den_m};
}

cplx evaluate(const TrigModel& model, cplx z)
{
    z = canonicalize(z);
    const std::size_t m = model.order();
    for (std::size_t j = 0; j < m; ++j) {
        if (strip_distance(z, model.support[j]) < support_hit_tol) return model.fvals[j];
    }
    if (std::abs(z.imag()) > far_field_height) {
        try {
            const FarField ff = far_field(model);
            return z.imag() > 0 ? ff.plus : ff.minus;
        } catch (const NumericalError&) {
            return complex_infinity();
        }
    }

    cplx num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const cplx c = model.weights[j] * cst(model.parity, 0.5 * (z - model.support[j]));
        num += c * model.fvals[j];
        den += c;
    }
    if (den == cplx(0.0, 0.0)) return complex_infinity();
    return num / den;
}

std::vector<cplx> evaluate_batch(const TrigModel& model, std::span<const cplx> zs)
{
    std::vector<cplx> out;
    out.reserve(zs.size());
    for (cplx z : zs) out.push_back(evaluate(model, z));
    return out;
}

std::vector<cplx> interpolatory_weights(std::span<const cplx> support)
{
    const std::size_t m = support.size();
    if (m == 0) throw InputError("empty support");
    // accumulate log-magnitude and unit phase separately; the raw products
    // overflow for a few hundred nodes
    std::vector<double> logmag(m, 0.0);
    std::vector<cplx> phase(m, cplx(1.0, 0.0));
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = 0; k < m; ++k) {
            if (k == j) continue;
            if (strip_distance(support[k], support[j]) < support_hit_tol)
                throw InputError("coincident support points");
            const cplx c = cst(Parity::odd, 0.5 * (support[k] - support[j]));
            logmag[j] += std::log(std::abs(c));
            phase[j] *= c / std::abs(c);
        }
    }
    const double top = *std::max_element(logmag.begin(), logmag.end());
    std::vector<cplx> a(m);
    for (std::size_t j = 0; j < m; ++j) a[j] = std::exp(logmag[j] - top) * phase[j];
    double nrm = 0.0;
    for (cplx v : a) nrm += std::norm(v);
    nrm = std::sqrt(nrm);
    for (cplx& v : a) v /= nrm;
    return a;
}

} // namespace aaatrig
