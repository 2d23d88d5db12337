#include "cli.hpp"

#include "aaatrig/baselines.hpp"
#include "aaatrig/calculus.hpp"
#include "aaatrig/error.hpp"
#include "aaatrig/io.hpp"
#include "aaatrig/lightning.hpp"
#include "aaatrig/polezero.hpp"
#include "aaatrig/sampling.hpp"
#include "aaatrig/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace aaatrig::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string parity = "odd";
    double tol = 1e-13;
    std::size_t mmax = 100;
    double period = two_pi;
    bool no_cleanup = false;
    std::string finf;
    std::uint64_t seed = 0;
    std::string out;
    std::string format;

    // command inputs
    std::string input;
    std::string model;
    std::string points;
    int order = 1;
    std::string function;
    std::size_t count = 1000;
    std::string grid = "equispaced";
};

const std::map<std::string, std::function<cplx(cplx)>>& builtin_functions()
{
    static const std::map<std::string, std::function<cplx(cplx)>> table = {
        {"tanh60cos", [](cplx z) { return std::tanh(60.0 * std::cos(z)); }},
        {"exp_sin", [](cplx z) { return std::exp(std::sin(z)); }},
        {"exp", [](cplx z) { return std::exp(z); }},
        {"log2cos4", [](cplx z) { return std::log(2.0 + std::pow(std::cos(z), 4)); }},
    };
    return table;
}

std::vector<cplx> parse_pair_list(const std::string& s)
{
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        const auto comma = item.find(',');
        if (comma == std::string::npos) throw UsageError("--finf expects re,im[;re,im]");
        try {
            std::size_t a = 0, b = 0;
            const std::string re = item.substr(0, comma), im = item.substr(comma + 1);
            const double x = std::stod(re, &a), y = std::stod(im, &b);
            if (a != re.size() || b != im.size()) throw std::invalid_argument("trailing");
            out.push_back({x, y});
        } catch (const std::logic_error&) {
            throw UsageError("--finf: cannot parse '" + item + "'");
        }
    }
    if (out.empty() || out.size() > 2) throw UsageError("--finf expects one or two re,im pairs");
    return out;
}

FitConfig fit_config(const Options& o)
{
    FitConfig c;
    try {
        c.parity = parse_parity(o.parity);
    } catch (const InputError& e) {
        throw UsageError(e.what());
    }
    c.rel_tol = o.tol;
    c.max_order = o.mmax;
    c.cleanup = !o.no_cleanup;
    if (!o.finf.empty()) {
        const auto v = parse_pair_list(o.finf);
        c.far_field_constraint = FarField{v[0], v.size() > 1 ? v[1] : v[0]};
    }
    return c;
}

InputFormat input_format(const Options& o, const std::string& path)
{
    return o.format.empty() ? format_from_path(path) : parse_format(o.format);
}

// Samples from a file, or from a named function on an equispaced / random grid.
SampleSet load_samples(const Options& o)
{
    if (!o.input.empty()) return ingest(o.input, input_format(o, o.input), o.period);
    if (o.function.empty()) throw UsageError("need an input file or --function");
    const auto& fns = builtin_functions();
    const auto it = fns.find(o.function);
    if (it == fns.end()) throw UsageError("unknown --function '" + o.function + "'");
    std::vector<cplx> pts;
    if (o.grid == "equispaced") {
        pts = equispaced(o.count);
    } else if (o.grid == "rectangle") {
        Rng rng(o.seed);
        pts = random_rectangle(o.count, rng, 0.0, two_pi, -0.5, 0.5);
    } else {
        throw UsageError("--grid must be equispaced or rectangle");
    }
    return sample(pts, it->second);
}

void emit(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) out << text;
    else write_file(path, text);
}

// "model.json" -> "model.history.tsv"
std::string sibling(const std::string& path, const std::string& suffix)
{
    const auto slash = path.find_last_of('/');
    const auto dot = path.rfind('.');
    const std::string stem = dot != std::string::npos && (slash == std::string::npos || dot > slash) ? path.substr(0, dot) : path;
    return stem + suffix;
}

std::string history_table(const std::vector<double>& h)
{
    Table t({"m", "max_err"});
    for (std::size_t i = 0; i < h.size(); ++i) t.add({static_cast<double>(i + 1), h[i]});
    return t.str();
}

std::optional<PoleZeroReport> try_report(const TrigModel& m)
{
    try {
        return poles_and_zeros(m);
    } catch (const NumericalError&) {
        return std::nullopt;
    }
}

int cmd_fit(const Options& o, std::ostream& out)
{
    const FitConfig cfg = fit_config(o);
    const SampleSet s = load_samples(o);
    ModelFile mf;
    mf.model = fit(s, cfg);
    mf.period = o.period;
    mf.report = try_report(mf.model);
    emit(o.out, write_model(mf), out);
    if (!o.out.empty()) write_file(sibling(o.out, ".history.tsv"), history_table(mf.model.err_history));
    return 0;
}

int cmd_eval(const Options& o, std::ostream& out)
{
    const ModelFile mf = load_model(o.model);
    const auto pts = read_points(o.points, input_format(o, o.points));
    const double s = two_pi / mf.period;
    Table t({"re_z", "im_z", "re_f", "im_f"});
    for (cplx z : pts) {
        const cplx f = evaluate(mf.model, z * s);
        t.add({z.real(), z.imag(), f.real(), f.imag()});
    }
    emit(o.out, t.str(), out);
    return 0;
}

int cmd_poles(const Options& o, std::ostream& out)
{
    const ModelFile mf = load_model(o.model);
    const PoleZeroReport r = poles_and_zeros(mf.model);
    const double back = mf.period / two_pi;
    Table t({"re_pole", "im_pole", "re_res", "im_res"});
    for (std::size_t k = 0; k < r.poles.size(); ++k) {
        const cplx p = r.poles[k] * back;
        const cplx q = r.residues[k] * back;
        t.add({p.real(), p.imag(), q.real(), q.imag()});
    }
    emit(o.out, t.str(), out);
    return 0;
}

int cmd_diff(const Options& o, std::ostream& out)
{
    const ModelFile mf = load_model(o.model);
    const auto pts = read_points(o.points, input_format(o, o.points));
    const double s = two_pi / mf.period;
    const double chain = std::pow(s, o.order);
    Table t({"re_z", "im_z", "re_d", "im_d"});
    for (cplx z : pts) {
        const cplx d = derivative_at(mf.model, z * s, o.order) * chain;
        t.add({z.real(), z.imag(), d.real(), d.imag()});
    }
    emit(o.out, t.str(), out);
    return 0;
}

int cmd_clean(const Options& o, std::ostream& out)
{
    ModelFile mf = load_model(o.model);
    Options so = o;
    so.period = mf.period;
    const SampleSet s = load_samples(so);
    FitConfig cfg = fit_config(o);
    cfg.parity = mf.model.parity;
    mf.model = cleanup(mf.model, s, cfg);
    mf.report = try_report(mf.model);
    emit(o.out, write_model(mf), out);
    return 0;
}

int cmd_compare_aaa(const Options& o, std::ostream& out)
{
    FitConfig cfg = fit_config(o);
    cfg.cleanup = false; // per-order errors of the raw greedy runs
    const SampleSet s = load_samples(o);
    const TrigModel t = fit(s, cfg);
    const AaaModel a = aaa_fit(s, cfg);
    Table tab({"method", "m", "max_err"});
    for (std::size_t i = 0; i < t.err_history.size(); ++i)
        tab.add("aaatrig", {static_cast<double>(i + 1), t.err_history[i]});
    for (std::size_t i = 0; i < a.err_history.size(); ++i)
        tab.add("aaa", {static_cast<double>(i + 1), a.err_history[i]});
    emit(o.out, tab.str(), out);
    return 0;
}

int cmd_compare_fft(const Options& o, std::ostream& out)
{
    FitConfig cfg = fit_config(o);
    cfg.cleanup = false;
    const SampleSet s = load_samples(o);
    const std::size_t half = s.size() / 2;
    const FourierInterpolant full = fft_interpolant(s, half);
    const TrigModel t = fit(s, cfg);

    Table tab({"method", "m", "max_err"});
    for (std::size_t i = 0; i < t.err_history.size(); ++i)
        tab.add("aaatrig", {static_cast<double>(i + 1), t.err_history[i]});
    std::vector<std::size_t> orders;
    for (std::size_t m = 1; m <= std::min(o.mmax, half); ++m) orders.push_back(m);
    if (orders.empty() || orders.back() != half) orders.push_back(half);
    for (std::size_t m : orders) {
        const FourierInterpolant fi = truncate(full, m);
        double e = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k)
            e = std::max(e, std::abs(evaluate(fi, s.points[k].real()) - s.values[k]));
        tab.add("fft", {static_cast<double>(m), e});
    }
    emit(o.out, tab.str(), out);
    return 0;
}

int cmd_lightning(const Options& o, std::ostream& out)
{
    DemoConfig c;
    const DemoResult r = run_demo(c);
    const std::string prefix = o.out.empty() ? "lightning" : o.out;

    Table field({"re_z", "im_z", "re_f", "im_f"});
    const int nx = 129, ny = 61;
    for (int j = 0; j < ny; ++j) {
        const double y = -1.5 + 3.0 * j / (ny - 1);
        for (int i = 0; i < nx; ++i) {
            const double x = -pi + two_pi * i / (nx - 1);
            const cplx z{x, y};
            if (!in_flow_domain(z)) continue;
            const cplx f = evaluate(r.compressed, z);
            field.add({x, y, f.real(), f.imag()});
        }
    }
    write_file(prefix + ".field.tsv", field.str());
    ModelFile mf;
    mf.model = r.compressed;
    mf.report = try_report(r.compressed);
    write_file(prefix + ".model.json", write_model(mf));

    out << "lightning poles\t" << r.lightning.pole_count() << "\n"
        << "boundary residual\t" << format_number(r.lightning.boundary_residual) << "\n"
        << "compressed support\t" << r.compressed.order() << "\n"
        << "compressed poles\t" << r.compressed_poles.size() << "\n"
        << "interior error\t" << format_number(r.interior_error) << "\n";
    for (const TaperFit& t : r.tapers)
        out << "taper " << format_number(t.corner.real()) << "\tsigma " << format_number(t.sigma) << "\tr2 "
            << format_number(t.r_squared) << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Trigonometric rational approximation of periodic data"};
    app.require_subcommand(1);
    Options o;

    auto common = [&o](CLI::App* sub, bool fitting) {
        sub->add_option("--out", o.out, "Output path (stdout when omitted)");
        sub->add_option("--format", o.format, "Input format csv|json (default: by extension)");
        if (!fitting) return;
        sub->add_option("--parity", o.parity, "odd|even")->check(CLI::IsMember({"odd", "even"}));
        sub->add_option("--tol", o.tol, "Relative tolerance")->check(CLI::NonNegativeNumber);
        sub->add_option("--mmax", o.mmax, "Maximum number of support points")->check(CLI::PositiveNumber);
        sub->add_option("--period", o.period, "Period of the input data")->check(CLI::PositiveNumber);
        sub->add_flag("--no-cleanup", o.no_cleanup, "Skip spurious-pole removal");
        sub->add_option("--finf", o.finf, "Far-field constraint re,im[;re,im]");
        sub->add_option("--seed", o.seed, "Seed for random grids");
        sub->add_option("--function", o.function, "Built-in test function instead of an input file");
        sub->add_option("--count", o.count, "Number of generated samples")->check(CLI::PositiveNumber);
        sub->add_option("--grid", o.grid, "equispaced|rectangle");
    };

    auto* fit_cmd = app.add_subcommand("fit", "Fit samples, write a model file");
    fit_cmd->add_option("input", o.input, "Samples (csv or json)");
    common(fit_cmd, true);

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model at points");
    eval_cmd->add_option("model", o.model)->required();
    eval_cmd->add_option("points", o.points)->required();
    common(eval_cmd, false);

    auto* poles_cmd = app.add_subcommand("poles", "Poles and residues of a model");
    poles_cmd->add_option("model", o.model)->required();
    common(poles_cmd, false);

    auto* diff_cmd = app.add_subcommand("diff", "Derivatives of a model at points");
    diff_cmd->add_option("model", o.model)->required();
    diff_cmd->add_option("points", o.points)->required();
    diff_cmd->add_option("--order", o.order, "Derivative order")->check(CLI::Range(1, max_derivative_order));
    common(diff_cmd, false);

    auto* clean_cmd = app.add_subcommand("clean", "Remove spurious poles from a model");
    clean_cmd->add_option("model", o.model)->required();
    clean_cmd->add_option("input", o.input, "The samples the model was fitted to");
    common(clean_cmd, true);

    auto* aaa_cmd = app.add_subcommand("compare-aaa", "Error per order, trigonometric fit vs classic AAA");
    aaa_cmd->add_option("input", o.input);
    common(aaa_cmd, true);

    auto* fft_cmd = app.add_subcommand("compare-fft", "Error per order, trigonometric fit vs truncated DFT");
    fft_cmd->add_option("input", o.input);
    common(fft_cmd, true);

    auto* light_cmd = app.add_subcommand("lightning-demo", "Periodic obstacle flow, solved and compressed");
    common(light_cmd, false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(o, out);
        if (eval_cmd->parsed()) return cmd_eval(o, out);
        if (poles_cmd->parsed()) return cmd_poles(o, out);
        if (diff_cmd->parsed()) return cmd_diff(o, out);
        if (clean_cmd->parsed()) return cmd_clean(o, out);
        if (aaa_cmd->parsed()) return cmd_compare_aaa(o, out);
        if (fft_cmd->parsed()) return cmd_compare_fft(o, out);
        if (light_cmd->parsed()) return cmd_lightning(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace aaatrig::cli
