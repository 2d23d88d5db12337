#include "aaatrig/lightning.hpp"

#include "aaatrig/error.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace aaatrig {

namespace {

constexpr cplx I{0.0, 1.0};
// column-scaled condition number beyond which the system is reported rank deficient
constexpr double max_condition = 1e15;

cplx runge_variable(cplx center, cplx z) { return std::tan(0.5 * (z - center)); }

// q_j(t) for a list of t values
MatrixXc replay(const ArnoldiBasis& basis, const VectorXc& t)
{
    const Eigen::Index n = basis.h.cols();
    const Eigen::Index k = t.size();
    MatrixXc q(k, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        VectorXc v = j == 0 ? VectorXc(t) : VectorXc(t.cwiseProduct(q.col(j - 1)));
        for (Eigen::Index i = 0; i < j; ++i) v -= basis.h(i, j) * q.col(i);
        q.col(j) = v / basis.h(j, j);
    }
    return q;
}

double reduce_x(double x) { return x - two_pi * std::floor((x + pi) / two_pi); }

// points at arc length s from the corner end of each side
cplx arc_point(double s) { return demo_radius * std::exp(I * (s / demo_radius)); } // s in [0, pi/2]
cplx segment_point(double s) { return {-demo_radius + s, 0.0}; }                    // s in [0, 1]

std::vector<double> tapered_offsets(std::size_t count, double half, std::size_t n, double sigma_scale)
{
    std::vector<double> s;
    const double rn = std::sqrt(static_cast<double>(n));
    for (std::size_t k = 1; k <= count; ++k) {
        const double frac = static_cast<double>(k) * static_cast<double>(n) / static_cast<double>(count);
        s.push_back(half * std::exp(-sigma_scale * (rn - std::sqrt(frac))));
    }
    return s;
}

} // namespace

std::vector<cplx> place_poles(const std::vector<Corner>& corners, std::size_t n, double sigma_scale,
                              double length, const std::function<bool(cplx)>& inside_domain)
{
    if (n < 1) throw InputError("need at least one pole per corner");
    if (!(sigma_scale > 0.0) || !(length > 0.0)) throw InputError("sigma scale and length must be positive");
    std::vector<cplx> poles;
    const double rn = std::sqrt(static_cast<double>(n));
    for (const Corner& c : corners) {
        const cplx dir = std::exp(I * c.bisector);
        for (std::size_t k = 1; k <= n; ++k) {
            const double d = length * std::exp(-sigma_scale * (rn - std::sqrt(static_cast<double>(k))));
            const cplx p = c.point + d * dir;
            if (inside_domain && inside_domain(p)) throw InputError("pole placed inside the flow domain");
            poles.push_back(p);
        }
    }
    return poles;
}

ArnoldiBasis arnoldi_fit(cplx center, const std::vector<cplx>& points, std::size_t degree, MatrixXc& q)
{
    const auto k = static_cast<Eigen::Index>(points.size());
    const auto n = static_cast<Eigen::Index>(degree);
    ArnoldiBasis basis;
    basis.center = center;
    basis.h = MatrixXc::Zero(n, n);
    VectorXc t(k);
    for (Eigen::Index i = 0; i < k; ++i) t(i) = runge_variable(center, points[static_cast<std::size_t>(i)]);
    q.resize(k, n);
    const double sk = std::sqrt(static_cast<double>(k));
    for (Eigen::Index j = 0; j < n; ++j) {
        VectorXc v = j == 0 ? VectorXc(t) : VectorXc(t.cwiseProduct(q.col(j - 1)));
        // classical Gram-Schmidt twice
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) {
                const cplx c = q.col(i).dot(v) / static_cast<double>(k);
                basis.h(i, j) += c;
                v -= c * q.col(i);
            }
        }
        const double nv = v.norm() / sk;
        if (!(nv > 0.0)) throw NumericalError("Arnoldi breakdown");
        basis.h(j, j) = nv;
        q.col(j) = v / nv;
    }
    return basis;
}

MatrixXc arnoldi_eval(const ArnoldiBasis& basis, const std::vector<cplx>& points)
{
    VectorXc t(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i)
        t(static_cast<Eigen::Index>(i)) = runge_variable(basis.center, points[i]);
    return replay(basis, t);
}

LightningModel solve_dirichlet(const std::vector<BoundaryPoint>& boundary, std::vector<cplx> newman_poles,
                               cplx runge_center, std::size_t runge_degree)
{
    const std::size_t n1 = newman_poles.size();
    const std::size_t n2 = runge_degree;
    const std::size_t k = boundary.size();
    if (k < 2 * (n1 + n2)) throw InputError("need at least 2(n1 + n2) collocation points");

    std::vector<cplx> pts;
    for (const auto& b : boundary) pts.push_back(b.z);

    LightningModel lm;
    lm.newman_poles = std::move(newman_poles);
    lm.collocation_count = k;
    MatrixXc q;
    if (n2 > 0) lm.runge = arnoldi_fit(runge_center, pts, n2, q);
    else lm.runge.center = runge_center;

    const auto rows = static_cast<Eigen::Index>(k);
    const auto cols = static_cast<Eigen::Index>(2 * (n1 + n2));
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& bp = boundary[static_cast<std::size_t>(i)];
        rhs(i) = bp.target;
        for (std::size_t j = 0; j < n1; ++j) {
            const cplx c = cst(Parity::even, 0.5 * (bp.z - lm.newman_poles[j]));
            a(i, static_cast<Eigen::Index>(j)) = c.imag();        // Re a_j
            a(i, static_cast<Eigen::Index>(n1 + j)) = c.real();   // Im a_j
        }
        for (std::size_t j = 0; j < n2; ++j) {
            const cplx c = q(i, static_cast<Eigen::Index>(j));
            a(i, static_cast<Eigen::Index>(2 * n1 + j)) = c.imag();
            a(i, static_cast<Eigen::Index>(2 * n1 + n2 + j)) = c.real();
        }
    }

    Eigen::VectorXd scale(cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        scale(j) = a.col(j).norm();
        if (scale(j) > 0.0) a.col(j) /= scale(j);
        else scale(j) = 1.0;
    }
    if (rhs.norm() == 0.0) {
        lm.newman_coeffs.assign(n1, 0.0);
        lm.runge_coeffs.assign(n2, 0.0);
        lm.boundary_residual = 0.0;
        return lm;
    }

    const Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
    const auto& sv = svd.singularValues();
    lm.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    if (!(lm.condition < max_condition)) {
        std::ostringstream msg;
        msg << "rank-deficient collocation system (condition " << lm.condition << ")";
        throw NumericalError(msg.str());
    }
    const Eigen::VectorXd x = a.colPivHouseholderQr().solve(rhs).cwiseQuotient(scale);

    for (std::size_t j = 0; j < n1; ++j)
        lm.newman_coeffs.push_back({x(static_cast<Eigen::Index>(j)), x(static_cast<Eigen::Index>(n1 + j))});
    for (std::size_t j = 0; j < n2; ++j)
        lm.runge_coeffs.push_back(
            {x(static_cast<Eigen::Index>(2 * n1 + j)), x(static_cast<Eigen::Index>(2 * n1 + n2 + j))});

    double res = 0.0;
    for (const auto& bp : boundary) res = std::max(res, std::abs(evaluate(lm, bp.z).imag() - bp.target));
    lm.boundary_residual = res;
    return lm;
}

cplx evaluate(const LightningModel& lm, cplx z)
{
    cplx f = 0.0;
    for (std::size_t j = 0; j < lm.newman_poles.size(); ++j)
        f += lm.newman_coeffs[j] * cst(Parity::even, 0.5 * (z - lm.newman_poles[j]));
    if (!lm.runge_coeffs.empty()) {
        VectorXc t(1);
        t(0) = runge_variable(lm.runge.center, z);
        const MatrixXc q = replay(lm.runge, t);
        for (std::size_t j = 0; j < lm.runge_coeffs.size(); ++j)
            f += lm.runge_coeffs[j] * q(0, static_cast<Eigen::Index>(j));
    }
    return f;
}

FarField far_field(const LightningModel& lm)
{
    // cot -> -i and tan -> i as Im z -> +inf; signs flip at -inf
    FarField ff{0.0, 0.0};
    for (cplx a : lm.newman_coeffs) {
        ff.plus += -I * a;
        ff.minus += I * a;
    }
    if (!lm.runge_coeffs.empty()) {
        VectorXc t(2);
        t << I, -I;
        const MatrixXc q = replay(lm.runge, t);
        for (std::size_t j = 0; j < lm.runge_coeffs.size(); ++j) {
            ff.plus += lm.runge_coeffs[j] * q(0, static_cast<Eigen::Index>(j));
            ff.minus += lm.runge_coeffs[j] * q(1, static_cast<Eigen::Index>(j));
        }
    }
    return ff;
}

TrigModel compress(const LightningModel& lm, const std::vector<cplx>& boundary_samples, double rel_tol)
{
    std::vector<cplx> vals;
    vals.reserve(boundary_samples.size());
    for (cplx z : boundary_samples) vals.push_back(evaluate(lm, z));
    const SampleSet s = SampleSet::make(boundary_samples, vals);
    FitConfig cfg;
    cfg.parity = Parity::odd;
    cfg.rel_tol = rel_tol;
    cfg.far_field_constraint = far_field(lm);
    return fit(s, cfg);
}

bool in_obstacle(cplx z)
{
    const double x = reduce_x(z.real());
    return z.imag() >= 0.0 && std::hypot(x, z.imag()) <= demo_radius;
}

bool in_flow_domain(cplx z) { return !in_obstacle(z); }

std::vector<Corner> demo_corners()
{
    return {{{demo_radius, 0.0}, 0.75 * pi}, {{-demo_radius, 0.0}, 0.25 * pi}};
}

std::vector<cplx> demo_boundary(std::size_t per_end, std::size_t n_per_corner, double sigma_scale)
{
    const double arc_len = pi * demo_radius;
    const double seg_len = 2.0 * demo_radius;
    std::vector<cplx> pts;
    for (double s : tapered_offsets(per_end, 0.5 * arc_len, n_per_corner, sigma_scale)) {
        pts.push_back(arc_point(s));           // near +1/2
        pts.push_back(arc_point(arc_len - s)); // near -1/2
    }
    for (double s : tapered_offsets(per_end, 0.5 * seg_len, n_per_corner, sigma_scale)) {
        pts.push_back(segment_point(s));           // near -1/2
        pts.push_back(segment_point(seg_len - s)); // near +1/2
    }
    // the midpoints appear twice (k = per_end on both halves)
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<cplx> demo_interior_grid()
{
    // golden-ratio lattice over one period, |Im| <= 1.5, kept 0.1 clear of the obstacle
    std::vector<cplx> g;
    const double a = 0.6180339887498949;
    const double b = 0.7548776662466927;
    for (std::size_t k = 1; g.size() < 200; ++k) {
        const double u = std::fmod(a * static_cast<double>(k), 1.0);
        const double v = std::fmod(b * static_cast<double>(k), 1.0);
        const cplx z{-pi + two_pi * u, -1.5 + 3.0 * v};
        const bool clear = std::abs(z) > demo_radius + 0.1 || z.imag() < -0.1;
        if (clear) g.push_back(z);
    }
    return g;
}

DemoResult run_demo(const DemoConfig& c)
{
    DemoResult out;
    std::vector<cplx> poles =
        place_poles(demo_corners(), c.n_per_corner, c.sigma_scale, c.pole_length, in_flow_domain);
    const std::size_t per_end = std::max<std::size_t>(1, c.points_per_pole * c.n_per_corner / 2);
    std::vector<BoundaryPoint> bc;
    for (cplx z : demo_boundary(per_end, c.n_per_corner, c.sigma_scale)) bc.push_back({z, -z.real()});
    out.lightning = solve_dirichlet(bc, std::move(poles), c.runge_center, c.runge_degree);

    const std::vector<cplx> samples = demo_boundary(c.compress_samples / 4, c.compress_cluster, c.sigma_scale);
    out.compressed = compress(out.lightning, samples, c.compress_tol);
    out.compress_sample_error = out.compressed.err_history.back();
    out.compressed_poles = find_poles(out.compressed).roots;

    for (cplx z : demo_interior_grid())
        out.interior_error = std::max(out.interior_error, std::abs(evaluate(out.compressed, z) - evaluate(out.lightning, z)));

    // each pole counts toward its nearest corner only
    const std::vector<Corner> corners = demo_corners();
    for (const Corner& corner : corners) {
        std::vector<cplx> mine;
        for (cplx p : out.compressed_poles) {
            const double d = strip_distance(p, corner.point);
            bool nearest = true;
            for (const Corner& other : corners)
                if (strip_distance(p, other.point) < d) nearest = false;
            if (nearest) mine.push_back(p);
        }
        try {
            out.tapers.push_back(taper_fit(mine, corner.point, 0));
        } catch (const InputError&) {
            TaperFit none;
            none.corner = corner.point;
            out.tapers.push_back(none);
        }
    }
    return out;
}

} // namespace aaatrig
