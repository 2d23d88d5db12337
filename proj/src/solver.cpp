#include "aaatrig/solver.hpp"

#include "aaatrig/error.hpp"
#include "aaatrig/polezero.hpp"
#include "greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace aaatrig {

namespace {

constexpr cplx I{0.0, 1.0};

struct TrigKernel {
    Parity parity;
    cplx operator()(cplx big_z, cplx z) const { return cst(parity, 0.5 * (big_z - z)); }
};

detail::ExtraRows constraint_rows(const SampleSet& samples, const FitConfig& config)
{
    if (!config.far_field_constraint) return {};
    const FarField target = *config.far_field_constraint;
    const Parity parity = config.parity;
    return [&samples, target, parity](const std::vector<std::size_t>& support) {
        std::vector<cplx> z, f;
        for (std::size_t j : support) {
            z.push_back(samples.points[j]);
            f.push_back(samples.values[j]);
        }
        return far_field_rows(target, parity, z, f);
    };
}

TrigModel to_model(const SampleSet& samples, const detail::GreedyResult& g, Parity parity)
{
    TrigModel m;
    m.parity = parity;
    for (std::size_t j = 0; j < g.support.size(); ++j) {
        m.support.push_back(samples.points[g.support[j]]);
        m.fvals.push_back(samples.values[g.support[j]]);
        m.weights.push_back(g.weights(static_cast<Eigen::Index>(j)));
    }
    m.err_history = g.err_history;
    m.scale = g.scale;
    m.converged = g.converged;
    return m;
}

std::vector<std::size_t> support_indices(const TrigModel& model, const SampleSet& samples)
{
    std::vector<std::size_t> idx;
    for (cplx z : model.support) {
        auto it = std::find(samples.points.begin(), samples.points.end(), z);
        if (it == samples.points.end()) throw InputError("model support is not drawn from the samples");
        idx.push_back(static_cast<std::size_t>(it - samples.points.begin()));
    }
    return idx;
}

} // namespace

void FitConfig::validate() const
{
    if (!(rel_tol >= 0.0)) throw InputError("tolerance must be nonnegative");
    if (!(cleanup_tol >= 0.0)) throw InputError("cleanup tolerance must be nonnegative");
    if (max_order < 1) throw InputError("max order must be at least 1");
    if (far_field_constraint) {
        const FarField& t = *far_field_constraint;
        if (!std::isfinite(std::abs(t.plus)) || !std::isfinite(std::abs(t.minus)))
            throw InputError("far-field target must be finite");
    }
}

LeastSquaresSystem assemble_loewner(const SampleSet& samples, const std::vector<std::size_t>& support,
                                    Parity parity)
{
    const std::size_t n = samples.size();
    if (support.size() > n / 2) throw InputError("order exceeds half the sample count");
    detail::CauchyBuilder<TrigKernel> b(samples.points, samples.values, TrigKernel{parity});
    for (std::size_t j : support) b.add(j);

    LeastSquaresSystem s;
    s.active_rows = b.active();
    s.cauchy = b.cauchy(s.active_rows);
    s.matrix = b.loewner(s.active_rows);
    s.big_f.resize(static_cast<Eigen::Index>(s.active_rows.size()));
    for (std::size_t i = 0; i < s.active_rows.size(); ++i)
        s.big_f(static_cast<Eigen::Index>(i)) = samples.values[s.active_rows[i]];
    s.small_f.resize(static_cast<Eigen::Index>(support.size()));
    for (std::size_t j = 0; j < support.size(); ++j)
        s.small_f(static_cast<Eigen::Index>(j)) = samples.values[support[j]];
    return s;
}

MatrixXc far_field_rows(const FarField& target, Parity parity, const std::vector<cplx>& support,
                        const std::vector<cplx>& fvals)
{
    const auto m = static_cast<Eigen::Index>(support.size());
    if (parity == Parity::even) {
        MatrixXc r(1, m);
        for (Eigen::Index j = 0; j < m; ++j) r(0, j) = target.plus - fvals[static_cast<std::size_t>(j)];
        return r;
    }
    MatrixXc r(2, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto k = static_cast<std::size_t>(j);
        r(0, j) = (target.plus - fvals[k]) * std::exp(-0.5 * I * support[k]);
        r(1, j) = (target.minus - fvals[k]) * std::exp(0.5 * I * support[k]);
    }
    return r;
}

void append_far_field_rows(LeastSquaresSystem& system, const FarField& target, Parity parity,
                           const std::vector<cplx>& support, const std::vector<cplx>& fvals)
{
    if (static_cast<Eigen::Index>(support.size()) != system.matrix.cols())
        throw InputError("support size does not match the system");
    const MatrixXc rows = far_field_rows(target, parity, support, fvals);
    MatrixXc stacked(system.matrix.rows() + rows.rows(), system.matrix.cols());
    stacked << system.matrix, rows;
    system.matrix = std::move(stacked);
    system.constraint_rows += static_cast<std::size_t>(rows.rows());
}

TrigModel fit(const SampleSet& samples, const FitConfig& config)
{
    config.validate();
    if (samples.size() < 2) throw InputError("at least two samples are required");
    const detail::GreedyResult g =
        detail::greedy_fit(samples.points, samples.values, config.rel_tol, config.max_order,
                           TrigKernel{config.parity}, constraint_rows(samples, config));
    TrigModel model = to_model(samples, g, config.parity);
    if (config.cleanup) model = cleanup(model, samples, config);
    return model;
}

TrigModel cleanup(const TrigModel& model, const SampleSet& samples, const FitConfig& config)
{
    model.validate();
    if (model.order() < 2) return model;

    std::vector<cplx> poles;
    try {
        poles = find_poles(model).roots;
    } catch (const NumericalError&) {
        return model;
    }

    const double tol = config.cleanup_tol * model.scale;
    std::vector<bool> remove(model.order(), false);
    bool any = false;
    for (cplx p : poles) {
        const auto res = try_residue(model, p);
        if (!res || std::abs(*res) >= tol) continue;
        std::size_t nearest = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < model.order(); ++j) {
            const double d = strip_distance(p, model.support[j]);
            if (d < best) {
                best = d;
                nearest = j;
            }
        }
        remove[nearest] = true;
        any = true;
    }
    if (!any) return model;

    const std::vector<std::size_t> idx = support_indices(model, samples);
    detail::CauchyBuilder<TrigKernel> b(samples.points, samples.values, TrigKernel{model.parity});
    for (std::size_t j = 0; j < idx.size(); ++j)
        if (!remove[j]) b.add(idx[j]);
    if (b.support().empty()) {
        TrigModel same = model;
        same.cleanup_skipped = true;
        return same;
    }

    FitConfig cfg = config;
    cfg.parity = model.parity;
    const VectorXc w = detail::solve_weights(b, constraint_rows(samples, cfg));
    const std::vector<cplx> r = b.approximant(w);

    detail::GreedyResult g;
    g.support = b.support();
    g.weights = w;
    g.scale = model.scale;
    g.err_history = model.err_history;
    g.err_history.resize(g.support.size());
    g.err_history.back() = detail::max_error(samples.values, r);
    g.converged = g.err_history.back() <= config.rel_tol * model.scale;
    return to_model(samples, g, model.parity);
}

double max_sample_error(const TrigModel& model, const SampleSet& samples)
{
    double e = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const cplx r = evaluate(model, samples.points[k]);
        const double d = std::abs(r - samples.values[k]);
        e = std::max(e, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
    }
    return e;
}

} // namespace aaatrig
