#include "aaatrig/io.hpp"

#include "aaatrig/error.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace aaatrig {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(line);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double parse_double(const std::string& s, std::size_t line)
{
    double x = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InputError("line " + std::to_string(line) + ": not a number: '" + s + "'");
    return x;
}

struct Rows {
    std::vector<std::vector<double>> values;
    std::vector<std::size_t> lines; // 1-based source line (csv) or array index (json)
};

// Header must start with the expected columns; extra columns are ignored.
Rows read_csv(const std::string& text, const std::vector<std::string>& expect)
{
    std::istringstream in(text);
    std::string line;
    std::size_t no = 0;
    bool header = false;
    Rows rows;
    while (std::getline(in, line)) {
        ++no;
        line = trim(line);
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (!header) {
            for (std::size_t i = 0; i < expect.size(); ++i)
                if (i >= f.size() || f[i] != expect[i])
                    throw InputError("line " + std::to_string(no) + ": header must start with " + [&] {
                        std::string h;
                        for (const auto& c : expect) h += (h.empty() ? "" : ",") + c;
                        return h;
                    }());
            header = true;
            continue;
        }
        if (f.size() < expect.size())
            throw InputError("line " + std::to_string(no) + ": expected " + std::to_string(expect.size()) +
                             " fields, got " + std::to_string(f.size()));
        std::vector<double> v;
        for (std::size_t i = 0; i < expect.size(); ++i) v.push_back(parse_double(f[i], no));
        rows.values.push_back(std::move(v));
        rows.lines.push_back(no);
    }
    if (!header) throw InputError("empty input");
    return rows;
}

json parse_json_text(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
}

cplx pair_at(const json& j, const std::string& key, std::size_t k)
{
    const json& p = j[k];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw InputError("\"" + key + "\" entry " + std::to_string(k) + ": expected [re, im]");
    return {p[0].get<double>(), p[1].get<double>()};
}

std::vector<cplx> pairs(const json& doc, const std::string& key)
{
    if (!doc.is_object() || !doc.contains(key) || !doc[key].is_array())
        throw InputError("missing array \"" + key + "\"");
    const json& a = doc[key];
    std::vector<cplx> out;
    for (std::size_t k = 0; k < a.size(); ++k) out.push_back(pair_at(a, key, k));
    return out;
}

// non-finite doubles go out as null
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double number_or(const json& j, double fallback) { return j.is_null() ? fallback : j.get<double>(); }

json pair(cplx z) { return json::array({number(z.real()), number(z.imag())}); }
json pair_list(const std::vector<cplx>& zs)
{
    json a = json::array();
    for (cplx z : zs) a.push_back(pair(z));
    return a;
}

cplx read_pair(const json& p, double fallback)
{
    if (!p.is_array() || p.size() != 2) throw InputError("expected [re, im]");
    return {number_or(p[0], fallback), number_or(p[1], fallback)};
}

std::vector<cplx> read_pair_list(const json& doc, const std::string& key)
{
    if (!doc.contains(key) || !doc[key].is_array()) throw InputError("model file: missing \"" + key + "\"");
    std::vector<cplx> out;
    for (const json& p : doc[key]) out.push_back(read_pair(p, std::numeric_limits<double>::quiet_NaN()));
    return out;
}

// One key per line, values compact, so files diff line by line.
std::string layout(const json& obj, int depth)
{
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    std::string out = "{\n";
    std::size_t i = 0;
    for (const auto& [key, value] : obj.items()) {
        out += pad + json(key).dump() + ": ";
        out += value.is_object() ? layout(value, depth + 1) : value.dump();
        out += ++i < obj.size() ? ",\n" : "\n";
    }
    return out + std::string(static_cast<std::size_t>(2 * depth), ' ') + "}";
}

} // namespace

InputFormat format_from_path(const std::string& path)
{
    const auto dot = path.rfind('.');
    if (dot != std::string::npos && path.substr(dot) == ".json") return InputFormat::json;
    return InputFormat::csv;
}

InputFormat parse_format(const std::string& s)
{
    if (s == "csv") return InputFormat::csv;
    if (s == "json") return InputFormat::json;
    throw InputError("unknown format '" + s + "' (expected csv or json)");
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("write failed: " + path);
}

SampleSet parse_samples(const std::string& text, InputFormat format, double period)
{
    if (!(period > 0.0) || !std::isfinite(period)) throw InputError("period must be positive");
    std::vector<cplx> z, f;
    std::vector<std::size_t> where;
    if (format == InputFormat::csv) {
        const Rows rows = read_csv(text, {"re_z", "im_z", "re_f", "im_f"});
        for (std::size_t i = 0; i < rows.values.size(); ++i) {
            const auto& r = rows.values[i];
            z.push_back({r[0], r[1]});
            f.push_back({r[2], r[3]});
        }
        where = rows.lines;
    } else {
        const json doc = parse_json_text(text);
        z = pairs(doc, "points");
        f = pairs(doc, "values");
        if (z.size() != f.size()) throw InputError("\"points\" and \"values\" differ in length");
        for (std::size_t k = 0; k < z.size(); ++k) where.push_back(k);
    }

    const double s = two_pi / period;
    std::map<std::pair<double, double>, std::size_t> seen;
    std::string dups;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (!std::isfinite(z[k].real()) || !std::isfinite(z[k].imag()) || !std::isfinite(f[k].real()) ||
            !std::isfinite(f[k].imag()))
            throw InputError((format == InputFormat::csv ? "line " : "entry ") + std::to_string(where[k]) +
                             ": non-finite value");
        if (s != 1.0) z[k] *= s;
        const cplx c = canonicalize(z[k]);
        const auto [it, fresh] = seen.emplace(std::make_pair(c.real(), c.imag()), where[k]);
        if (!fresh) dups += " " + std::to_string(it->second) + "/" + std::to_string(where[k]);
    }
    if (!dups.empty())
        throw InputError(std::string("duplicate canonical points at ") +
                         (format == InputFormat::csv ? "lines" : "entries") + dups);
    return SampleSet::make(z, f);
}

SampleSet ingest(const std::string& path, InputFormat format, double period)
{
    return parse_samples(read_file(path), format, period);
}

std::vector<cplx> parse_points(const std::string& text, InputFormat format)
{
    std::vector<cplx> z;
    if (format == InputFormat::csv) {
        for (const auto& r : read_csv(text, {"re_z", "im_z"}).values) z.push_back({r[0], r[1]});
    } else {
        z = pairs(parse_json_text(text), "points");
    }
    return z;
}

std::vector<cplx> read_points(const std::string& path, InputFormat format)
{
    return parse_points(read_file(path), format);
}

std::string write_model(const ModelFile& file)
{
    const TrigModel& m = file.model;
    json doc;
    doc["schema_version"] = model_schema_version;
    doc["parity"] = to_string(m.parity);
    doc["period"] = file.period;
    doc["support"] = pair_list(m.support);
    doc["fvals"] = pair_list(m.fvals);
    doc["weights"] = pair_list(m.weights);
    json h = json::array();
    for (double e : m.err_history) h.push_back(number(e));
    doc["err_history"] = h;
    doc["scale"] = m.scale;
    doc["converged"] = m.converged;
    doc["cleanup_skipped"] = m.cleanup_skipped;
    if (file.report) {
        const PoleZeroReport& r = *file.report;
        json p;
        p["poles"] = pair_list(r.poles);
        p["zeros"] = pair_list(r.zeros);
        p["residues"] = pair_list(r.residues);
        p["pf_constant"] = pair(r.pf_constant);
        p["clustered"] = r.clustered;
        p["rejected"] = r.rejected;
        doc["poles"] = p;
    }
    return layout(doc, 0) + "\n";
}

ModelFile read_model(const std::string& text)
{
    const json doc = parse_json_text(text);
    if (!doc.is_object()) throw InputError("model file: expected a JSON object");
    try {
        const int version = doc.at("schema_version").get<int>();
        if (version != model_schema_version)
            throw InputError("model file: unsupported schema_version " + std::to_string(version));
        ModelFile out;
        TrigModel& m = out.model;
        m.parity = parse_parity(doc.at("parity").get<std::string>());
        out.period = doc.at("period").get<double>();
        if (!(out.period > 0.0)) throw InputError("model file: period must be positive");
        m.support = read_pair_list(doc, "support");
        m.fvals = read_pair_list(doc, "fvals");
        m.weights = read_pair_list(doc, "weights");
        for (const json& e : doc.at("err_history"))
            m.err_history.push_back(number_or(e, std::numeric_limits<double>::infinity()));
        m.scale = doc.at("scale").get<double>();
        m.converged = doc.at("converged").get<bool>();
        m.cleanup_skipped = doc.value("cleanup_skipped", false);
        m.validate();
        if (doc.contains("poles")) {
            const json& p = doc["poles"];
            PoleZeroReport r;
            r.poles = read_pair_list(p, "poles");
            r.zeros = read_pair_list(p, "zeros");
            r.residues = read_pair_list(p, "residues");
            for (cplx q : r.residues) r.pf_coefficients.push_back(0.5 * q);
            r.pf_constant = read_pair(p.at("pf_constant"), std::numeric_limits<double>::quiet_NaN());
            r.clustered = p.value("clustered", false);
            r.rejected = p.value("rejected", std::size_t{0});
            out.report = std::move(r);
        }
        return out;
    } catch (const json::exception& e) {
        throw InputError(std::string("model file: ") + e.what());
    }
}

ModelFile load_model(const std::string& path) { return read_model(read_file(path)); }

std::string format_number(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void Table::add(const std::vector<double>& row)
{
    if (row.size() != columns_.size()) throw InputError("table row has the wrong width");
    std::string line;
    for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "\t" : "") + format_number(row[i]);
    rows_.push_back(std::move(line));
}

void Table::add(const std::string& label, const std::vector<double>& row)
{
    if (row.size() + 1 != columns_.size()) throw InputError("table row has the wrong width");
    std::string line = label;
    for (double x : row) line += "\t" + format_number(x);
    rows_.push_back(std::move(line));
}

std::string Table::str() const
{
    std::string out;
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "\t" : "") + columns_[i];
    out += "\n";
    for (const auto& r : rows_) out += r + "\n";
    return out;
}

} // namespace aaatrig
