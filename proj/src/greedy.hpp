#pragma once

// Greedy support selection shared by the trigonometric fit and the classic
// AAA baseline. The kernel is the only difference between the two.

#include "aaatrig/error.hpp"
#include "aaatrig/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace aaatrig::detail {

// Extra least-squares rows for a given support (far-field constraints).
using ExtraRows = std::function<MatrixXc(const std::vector<std::size_t>&)>;

template <class Kernel>
class CauchyBuilder {
public:
    CauchyBuilder(std::span<const cplx> pts, std::span<const cplx> vals, Kernel kernel)
        : pts_(pts), vals_(vals), kernel_(kernel), in_support_(pts.size(), false)
    {
    }

    void add(std::size_t idx)
    {
        if (idx >= pts_.size() || in_support_[idx]) throw InputError("invalid support index");
        in_support_[idx] = true;
        support_.push_back(idx);
        const auto m = static_cast<Eigen::Index>(support_.size());
        const auto rows = static_cast<Eigen::Index>(pts_.size());
        c_.conservativeResize(rows, m);
        for (Eigen::Index k = 0; k < rows; ++k) {
            c_(k, m - 1) = in_support_[static_cast<std::size_t>(k)]
                               ? cplx(0.0)
                               : kernel_(pts_[static_cast<std::size_t>(k)], pts_[idx]);
        }
    }

    const std::vector<std::size_t>& support() const { return support_; }
    bool is_support(std::size_t k) const { return in_support_[k]; }

    std::vector<std::size_t> active() const
    {
        std::vector<std::size_t> out;
        out.reserve(pts_.size() - support_.size());
        for (std::size_t k = 0; k < pts_.size(); ++k)
            if (!in_support_[k]) out.push_back(k);
        return out;
    }

    // Cauchy block restricted to the active rows.
    MatrixXc cauchy(const std::vector<std::size_t>& rows) const
    {
        MatrixXc out(static_cast<Eigen::Index>(rows.size()), c_.cols());
        for (std::size_t i = 0; i < rows.size(); ++i)
            out.row(static_cast<Eigen::Index>(i)) = c_.row(static_cast<Eigen::Index>(rows[i]));
        return out;
    }

    MatrixXc loewner(const std::vector<std::size_t>& rows) const
    {
        MatrixXc a = cauchy(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const cplx fk = vals_[rows[i]];
            for (std::size_t j = 0; j < support_.size(); ++j)
                a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= fk - vals_[support_[j]];
        }
        return a;
    }

    // Approximant at every sample; support rows return their data value.
    std::vector<cplx> approximant(const VectorXc& w) const
    {
        VectorXc wf(w.size());
        for (std::size_t j = 0; j < support_.size(); ++j)
            wf(static_cast<Eigen::Index>(j)) = w(static_cast<Eigen::Index>(j)) * vals_[support_[j]];
        const VectorXc num = c_ * wf;
        const VectorXc den = c_ * w;
        std::vector<cplx> r(pts_.size());
        for (std::size_t k = 0; k < pts_.size(); ++k) {
            if (in_support_[k]) {
                r[k] = vals_[k];
            } else {
                const cplx d = den(static_cast<Eigen::Index>(k));
                r[k] = d == cplx(0.0) ? cplx(std::numeric_limits<double>::infinity(), 0.0)
                                      : num(static_cast<Eigen::Index>(k)) / d;
            }
        }
        return r;
    }

private:
    std::span<const cplx> pts_;
    std::span<const cplx> vals_;
    Kernel kernel_;
    std::vector<bool> in_support_;
    std::vector<std::size_t> support_;
    MatrixXc c_;
};

struct GreedyResult {
    std::vector<std::size_t> support;
    VectorXc weights;
    std::vector<double> err_history;
    double scale = 0.0;
    bool converged = false;
};

inline double max_error(std::span<const cplx> vals, const std::vector<cplx>& r)
{
    double e = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const double d = std::abs(vals[k] - r[k]);
        if (std::isnan(d)) return std::numeric_limits<double>::infinity();
        e = std::max(e, d);
    }
    return e;
}

template <class Kernel>
VectorXc solve_weights(const CauchyBuilder<Kernel>& b, const ExtraRows& extra)
{
    MatrixXc a = b.loewner(b.active());
    if (extra) {
        const MatrixXc e = extra(b.support());
        if (e.rows() > 0) {
            MatrixXc stacked(a.rows() + e.rows(), a.cols());
            stacked << a, e;
            a = std::move(stacked);
        }
    }
    return min_singular_direction(a);
}

template <class Kernel>
GreedyResult greedy_fit(std::span<const cplx> pts, std::span<const cplx> vals, double rel_tol,
                        std::size_t max_order, Kernel kernel, const ExtraRows& extra)
{
    const std::size_t n = pts.size();
    if (n < 2 || vals.size() != n) throw InputError("at least two samples are required");
    if (!(rel_tol >= 0.0)) throw InputError("tolerance must be nonnegative");
    if (max_order < 1) throw InputError("max order must be at least 1");

    GreedyResult out;
    cplx mean = 0.0;
    for (cplx f : vals) {
        out.scale = std::max(out.scale, std::abs(f));
        mean += f;
    }
    mean /= static_cast<double>(n);

    CauchyBuilder<Kernel> b(pts, vals, kernel);
    std::vector<cplx> r(n, mean);
    const std::size_t cap = std::min(max_order, n / 2);
    const double target = rel_tol * out.scale;

    VectorXc last_w;

    while (b.support().size() < cap) {
        std::size_t pick = n;
        double worst = -1.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (b.is_support(k)) continue;
            double e = std::abs(vals[k] - r[k]);
            if (std::isnan(e)) e = std::numeric_limits<double>::infinity();
            if (e > worst) {
                worst = e;
                pick = k;
            }
        }
        b.add(pick);
        last_w = solve_weights(b, extra);
        r = b.approximant(last_w);
        const double err = max_error(vals, r);
        out.err_history.push_back(err);
        if (err <= target) {
            out.converged = true;
            break;
        }
    }

    out.support = b.support();
    out.weights = last_w;
    return out;
}

} // namespace aaatrig::detail
