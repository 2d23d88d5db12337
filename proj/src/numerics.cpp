#include "aaatrig/numerics.hpp"

#include "aaatrig/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace aaatrig {

namespace {

// Relative size below which a pencil head is taken to be exactly zero.
constexpr double zero_head_tol = 1e-13;
// Heads at least this large (relative) are deflated by a plain Schur complement.
constexpr double schur_head_tol = 1e-3;
// Relative size of sum(u) below which the projector split is not used.
constexpr double split_tol = 1e-8;

struct Eig {
    std::vector<cplx> values;
    MatrixXc vectors; // pencil eigenvectors, one per value
};

Eig standard_eig(const MatrixXc& m)
{
    Eig out;
    if (m.rows() == 0) return out;
    Eigen::ComplexEigenSolver<MatrixXc> es(m, true);
    if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
    out.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
    out.vectors = es.eigenvectors();
    return out;
}

// Roots of h + sum_j u_j / (lambda - d_j), returned with pencil eigenvectors
// v = [v0; y] of the (m+1) arrowhead pencil.
Eig solve_arrow(cplx h, const VectorXc& u, const VectorXc& d)
{
    const Eigen::Index m = u.size();
    Eig out;
    if (m == 0) return out;

    const double umag = u.cwiseAbs().sum();
    if (umag == 0.0) return out;
    const double rho = std::max(1.0, d.cwiseAbs().maxCoeff());
    const double hrel = std::abs(h) * rho / umag;
    if (hrel <= zero_head_tol) h = 0.0;
    const cplx s = u.sum();
    const VectorXc ones = VectorXc::Ones(m);

    if (h != cplx(0.0) && (hrel >= schur_head_tol || std::abs(s) <= split_tol * umag)) {
        // v0 = -u^T y / h eliminates the head row
        MatrixXc a = d.asDiagonal();
        a -= ones * u.transpose() / h;
        Eig e = standard_eig(a);
        out.values = e.values;
        out.vectors.resize(m + 1, m);
        for (Eigen::Index k = 0; k < m; ++k) {
            const VectorXc y = e.vectors.col(k);
            out.vectors(0, k) = -(u.transpose() * y)(0) / h;
            out.vectors.col(k).tail(m) = y;
        }
        return out;
    }

    // Split y = alpha * 1 + k with u^T k = 0. The head equation fixes alpha
    // (or forces alpha = 0 when h = 0, dropping the double infinite eigenvalue).
    if (m == 1) {
        if (h == cplx(0.0)) return out;
        // h + u/(lambda - d) = 0
        const cplx lam = d(0) - u(0) / h;
        out.values.push_back(lam);
        out.vectors.resize(2, 1);
        out.vectors(0, 0) = lam - d(0);
        out.vectors(1, 0) = 1.0;
        return out;
    }
    Eigen::HouseholderQR<MatrixXc> qr(MatrixXc(u.conjugate()));
    const MatrixXc q = qr.householderQ();
    const MatrixXc qk = q.rightCols(m - 1); // orthonormal basis of ker(u^T)
    const VectorXc dq_row = (u.cwiseProduct(d)).transpose() * qk / s; // (u^T D Q_K)/s as a column
    const cplx delta = u.cwiseProduct(d).sum() / s;
    const MatrixXc dqk = d.asDiagonal() * qk;
    const MatrixXc n = qk.adjoint() * (dqk - ones * dq_row.transpose());

    if (h == cplx(0.0)) {
        Eig e = standard_eig(n);
        out.values = e.values;
        out.vectors.resize(m + 1, m - 1);
        for (Eigen::Index k = 0; k < m - 1; ++k) {
            const VectorXc y = qk * e.vectors.col(k);
            out.vectors(0, k) = -(u.cwiseProduct(d).transpose() * y)(0) / s;
            out.vectors.col(k).tail(m) = y;
        }
        return out;
    }

    MatrixXc blk(m, m);
    blk(0, 0) = delta - s / h;
    blk.block(0, 1, 1, m - 1) = dq_row.transpose();
    blk.block(1, 0, m - 1, 1) = qk.adjoint() * (d - delta * ones);
    blk.block(1, 1, m - 1, m - 1) = n;
    Eig e = standard_eig(blk);
    out.values = e.values;
    out.vectors.resize(m + 1, m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const cplx alpha = e.vectors(0, k);
        const VectorXc y = alpha * ones + qk * e.vectors.col(k).tail(m - 1);
        out.vectors(0, k) = -alpha * s / h;
        out.vectors.col(k).tail(m) = y;
    }
    return out;
}

// Roots of a*lambda + b + sum_{j>=2} u_j / (lambda - d_j), with pencil
// eigenvectors [lambda*v1; v1; y].
Eig solve_bordered(cplx a, cplx b, const VectorXc& u, const VectorXc& d)
{
    const Eigen::Index r = u.size();
    const double rho = r > 0 ? std::max(1.0, d.cwiseAbs().maxCoeff()) : 1.0;
    const double rest = std::abs(b) + (r > 0 ? u.cwiseAbs().sum() / rho : 0.0);
    Eig out;
    if (std::abs(a) * rho <= zero_head_tol * rest) {
        // a vanishes: the plain arrowhead with head b; v0 = lambda*v1 is free
        Eig e = solve_arrow(b, u, d);
        out.values = e.values;
        out.vectors.resize(r + 2, static_cast<Eigen::Index>(e.values.size()));
        for (std::size_t k = 0; k < e.values.size(); ++k) {
            const auto c = static_cast<Eigen::Index>(k);
            out.vectors(0, c) = e.values[k] * e.vectors(0, c);
            out.vectors.col(c).tail(r + 1) = e.vectors.col(c);
        }
        return out;
    }

    MatrixXc c = MatrixXc::Zero(r + 1, r + 1);
    c(0, 0) = -b / a;
    if (r > 0) {
        c.block(0, 1, 1, r) = -u.transpose() / a;
        c.block(1, 0, r, 1).setOnes();
        c.block(1, 1, r, r) = d.asDiagonal();
    }
    Eig e = standard_eig(c);
    out.values = e.values;
    out.vectors.resize(r + 2, r + 1);
    for (Eigen::Index k = 0; k <= r; ++k) {
        out.vectors(0, k) = e.values[static_cast<std::size_t>(k)] * e.vectors(0, k);
        out.vectors.col(k).tail(r + 1) = e.vectors.col(k);
    }
    return out;
}

bool is_plain_arrow(const MatrixXc& a)
{
    const Eigen::Index n = a.rows();
    for (Eigen::Index i = 1; i < n; ++i) {
        if (a(i, 0) != cplx(1.0)) return false;
        for (Eigen::Index j = 1; j < n; ++j)
            if (j != i && a(i, j) != cplx(0.0)) return false;
    }
    return true;
}

bool is_bordered(const MatrixXc& a)
{
    const Eigen::Index n = a.rows();
    if (n < 2 || a(1, 0) != cplx(1.0)) return false;
    for (Eigen::Index j = 1; j < n; ++j)
        if (a(1, j) != cplx(0.0)) return false;
    for (Eigen::Index i = 2; i < n; ++i) {
        if (a(i, 0) != cplx(0.0) || a(i, 1) != cplx(1.0)) return false;
        for (Eigen::Index j = 2; j < n; ++j)
            if (j != i && a(i, j) != cplx(0.0)) return false;
    }
    return true;
}

GepResult finish(Eig e, std::size_t dim)
{
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < e.values.size(); ++k) {
        const cplx v = e.values[k];
        if (std::isfinite(v.real()) && std::isfinite(v.imag()) &&
            std::abs(v) <= infinite_eigenvalue_threshold)
            keep.push_back(k);
    }
    std::stable_sort(keep.begin(), keep.end(), [&](std::size_t x, std::size_t y) {
        return eigen_order_less(e.values[x], e.values[y]);
    });
    GepResult res;
    res.eigenvectors.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
        res.finite_eigenvalues.push_back(e.values[keep[k]]);
        VectorXc v = e.vectors.col(static_cast<Eigen::Index>(keep[k]));
        const double nv = v.norm();
        if (nv > 0.0) v /= nv;
        res.eigenvectors.col(static_cast<Eigen::Index>(k)) = v;
    }
    res.discarded_count = dim - keep.size();
    return res;
}

} // namespace

bool eigen_order_less(cplx a, cplx b)
{
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

VectorXc min_singular_direction(const MatrixXc& a)
{
    if (a.cols() < 1 || a.rows() < a.cols())
        throw InputError("least-squares matrix needs rows >= cols >= 1");
    if (!a.allFinite()) throw NumericalError("non-finite entries in least-squares matrix");
    Eigen::JacobiSVD<MatrixXc> svd(a, Eigen::ComputeFullV);
    VectorXc w = svd.matrixV().col(a.cols() - 1);
    return w / w.norm();
}

MatrixXc singular_head_identity(std::size_t n)
{
    MatrixXc b = MatrixXc::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (n > 0) b(0, 0) = 0.0;
    return b;
}

MatrixXc arrow_pencil(cplx head, std::span<const cplx> payload, std::span<const cplx> shifts)
{
    if (payload.size() != shifts.size()) throw InputError("payload and shifts differ in length");
    const auto m = static_cast<Eigen::Index>(payload.size());
    MatrixXc a = MatrixXc::Zero(m + 1, m + 1);
    a(0, 0) = head;
    for (Eigen::Index j = 0; j < m; ++j) {
        a(0, j + 1) = payload[static_cast<std::size_t>(j)];
        a(j + 1, 0) = 1.0;
        a(j + 1, j + 1) = shifts[static_cast<std::size_t>(j)];
    }
    return a;
}

MatrixXc bordered_pencil(cplx corner, cplx head, std::span<const cplx> payload,
                         std::span<const cplx> shifts)
{
    if (payload.size() != shifts.size()) throw InputError("payload and shifts differ in length");
    const auto r = static_cast<Eigen::Index>(payload.size());
    MatrixXc a = MatrixXc::Zero(r + 2, r + 2);
    a(0, 0) = corner;
    a(0, 1) = head;
    a(1, 0) = 1.0;
    for (Eigen::Index j = 0; j < r; ++j) {
        a(0, j + 2) = payload[static_cast<std::size_t>(j)];
        a(j + 2, 1) = 1.0;
        a(j + 2, j + 2) = shifts[static_cast<std::size_t>(j)];
    }
    return a;
}

GepResult generalized_eig_arrow(const MatrixXc& a, const MatrixXc& b)
{
    const Eigen::Index n = a.rows();
    if (n < 2 || a.cols() != n || b.rows() != n || b.cols() != n)
        throw InputError("pencil matrices must be square, same size, at least 2x2");
    if (!a.allFinite() || !b.allFinite()) throw NumericalError("non-finite pencil entries");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (i != j && b(i, j) != cplx(0.0)) throw InputError("B must be diagonal");

    bool singular_head = b(0, 0) == cplx(0.0);
    for (Eigen::Index i = 1; i < n; ++i) {
        if (b(i, i) != cplx(1.0)) singular_head = false;
    }

    if (!singular_head) {
        for (Eigen::Index i = 0; i < n; ++i)
            if (b(i, i) == cplx(0.0)) throw InputError("B must be diag(0,1,...,1) or nonsingular");
        const MatrixXc m = b.diagonal().cwiseInverse().asDiagonal() * a;
        return finish(standard_eig(m), static_cast<std::size_t>(n));
    }

    if (is_plain_arrow(a)) {
        const VectorXc u = a.block(0, 1, 1, n - 1).transpose();
        const VectorXc d = a.diagonal().tail(n - 1);
        return finish(solve_arrow(a(0, 0), u, d), static_cast<std::size_t>(n));
    }
    if (is_bordered(a)) {
        const VectorXc u = a.block(0, 2, 1, n - 2).transpose();
        const VectorXc d = a.diagonal().tail(n - 2);
        return finish(solve_bordered(a(0, 0), a(0, 1), u, d), static_cast<std::size_t>(n));
    }
    throw InputError("not arrowhead");
}

} // namespace aaatrig
