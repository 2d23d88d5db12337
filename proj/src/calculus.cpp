#include "aaatrig/calculus.hpp"

#include "aaatrig/error.hpp"

#include <array>
#include <cmath>

namespace aaatrig {

namespace {

double binom(int n, int k)
{
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_order(int p)
{
    if (p < 1) throw InputError("derivative order must be positive");
    if (p > max_derivative_order) throw InputError("unsupported order");
}

// d^q/dz^q of sin((z - c)/2) and cos((z - c)/2) at z, q = 0..p
std::array<cplx, max_derivative_order + 1> sin_derivs(cplx u, int p)
{
    std::array<cplx, max_derivative_order + 1> out{};
    for (int q = 0; q <= p; ++q) out[q] = std::pow(0.5, q) * std::sin(u + 0.5 * pi * q);
    return out;
}

std::array<cplx, max_derivative_order + 1> cos_derivs(cplx u, int p)
{
    std::array<cplx, max_derivative_order + 1> out{};
    for (int q = 0; q <= p; ++q) out[q] = std::pow(0.5, q) * std::cos(u + 0.5 * pi * q);
    return out;
}

// derivatives of a product g*h from their derivative tables
std::array<cplx, max_derivative_order + 1> product_derivs(const std::array<cplx, max_derivative_order + 1>& g,
                                                          const std::array<cplx, max_derivative_order + 1>& h,
                                                          int p)
{
    std::array<cplx, max_derivative_order + 1> out{};
    for (int q = 0; q <= p; ++q)
        for (int s = 0; s <= q; ++s) out[q] += binom(q, s) * g[s] * h[q - s];
    return out;
}

} // namespace

cplx cst_derivative(Parity parity, cplx u, int n)
{
    if (n < 0 || n > max_derivative_order) throw InputError("unsupported order");
    const cplx c = cst(Parity::even, u);
    const cplx c2 = c * c;
    if (parity == Parity::even) {
        switch (n) {
        case 0: return c;
        case 1: return -(1.0 + c2);
        case 2: return 2.0 * c + 2.0 * c * c2;
        case 3: return -2.0 - 8.0 * c2 - 6.0 * c2 * c2;
        default: return 16.0 * c + 40.0 * c * c2 + 24.0 * c * c2 * c2;
        }
    }
    const cplx s = cst(Parity::odd, u);
    switch (n) {
    case 0: return s;
    case 1: return -s * c;
    case 2: return s * (1.0 + 2.0 * c2);
    case 3: return s * (-5.0 * c - 6.0 * c * c2);
    default: return s * (5.0 + 28.0 * c2 + 24.0 * c2 * c2);
    }
}

DiffMatrix diff_matrix(const TrigModel& model, int p)
{
    check_order(p);
    model.validate();
    const auto m = static_cast<Eigen::Index>(model.order());
    const auto& z = model.support;
    const auto& w = model.weights;
    for (cplx wj : w)
        if (wj == cplx(0.0)) throw NumericalError("zero weight on the support grid");

    // l_k a = (w_k/w_j) b l_j with b(z_j) = 0; differentiate r times at z_j.
    //   odd:  a = sin((z-z_k)/2),            b = sin((z-z_j)/2)
    //   even: a = sin((z-z_k)/2)cos((z-z_j)/2), b = cos((z-z_k)/2)sin((z-z_j)/2)
    std::vector<MatrixXc> d(static_cast<std::size_t>(p) + 1);
    d[0] = MatrixXc::Identity(m, m);
    for (int r = 1; r <= p; ++r) d[static_cast<std::size_t>(r)] = MatrixXc::Zero(m, m);

    using Table = std::array<cplx, max_derivative_order + 1>;
    const Table sj = sin_derivs(0.0, p); // sin((z - z_j)/2) at z = z_j
    const Table cj = cos_derivs(0.0, p);
    std::vector<Table> a(static_cast<std::size_t>(m)), b(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = 0; k < m; ++k) {
            if (k == j) continue;
            const cplx u = 0.5 * (z[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(k)]);
            const Table sk = sin_derivs(u, p);
            auto& ak = a[static_cast<std::size_t>(k)];
            auto& bk = b[static_cast<std::size_t>(k)];
            if (model.parity == Parity::odd) {
                ak = sk;
                bk = sj;
            } else {
                ak = product_derivs(sk, cj, p);
                bk = product_derivs(cos_derivs(u, p), sj, p);
            }
            if (std::abs(ak[0]) < basis_singularity_tol) throw NumericalError("basis singularity");
        }
        // level r needs the diagonals of the lower levels in this row
        for (int r = 1; r <= p; ++r) {
            auto& dr = d[static_cast<std::size_t>(r)];
            for (Eigen::Index k = 0; k < m; ++k) {
                if (k == j) continue;
                const auto& ak = a[static_cast<std::size_t>(k)];
                const auto& bk = b[static_cast<std::size_t>(k)];
                const cplx ratio = w[static_cast<std::size_t>(k)] / w[static_cast<std::size_t>(j)];
                cplx acc = 0.0;
                for (int q = 1; q <= r; ++q) {
                    const auto& prev = d[static_cast<std::size_t>(r - q)];
                    acc += binom(r, q) * (ratio * bk[q] * prev(j, j) - ak[q] * prev(j, k));
                }
                dr(j, k) = acc / ak[0];
            }
            dr(j, j) = 0.0;
            dr(j, j) = -dr.row(j).sum();
        }
    }
    return {p, d[static_cast<std::size_t>(p)]};
}

cplx derivative_at(const TrigModel& model, cplx z, int p)
{
    check_order(p);
    model.validate();
    z = canonicalize(z);
    const std::size_t m = model.order();
    for (cplx zj : model.support)
        if (strip_distance(z, zj) < support_exclusion)
            throw InputError("point too close to a support point, use diff_matrix");
    if (m == 1) return 0.0;

    // cst derivative tables in z: (1/2)^n cst^(n)
    std::vector<std::array<cplx, max_derivative_order + 1>> cs(m);
    cplx d = 0.0, n = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const cplx u = 0.5 * (z - model.support[j]);
        for (int q = 0; q <= p; ++q) cs[j][q] = std::pow(0.5, q) * cst_derivative(model.parity, u, q);
        d += model.weights[j] * cs[j][0];
        n += model.weights[j] * model.fvals[j] * cs[j][0];
    }
    if (d == cplx(0.0)) throw NumericalError("derivative requested at a pole");

    // sum_j w_j cst_j (f_j - r) = 0, differentiated p times
    std::array<cplx, max_derivative_order + 1> r{};
    r[0] = n / d;
    for (int q = 1; q <= p; ++q) {
        cplx acc = 0.0;
        for (int s = 0; s < q; ++s) {
            cplx inner = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const cplx g = s == 0 ? model.fvals[j] - r[0] : -r[s];
                inner += model.weights[j] * cs[j][q - s] * g;
            }
            acc += binom(q, s) * inner;
        }
        r[q] = acc / d;
    }
    return r[p];
}

} // namespace aaatrig
