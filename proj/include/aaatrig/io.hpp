#pragma once

// Sample ingestion, model files and TSV tables. Layouts are described in docs/FORMATS.md.

#include "aaatrig/polezero.hpp"
#include "aaatrig/trigbary.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace aaatrig {

inline constexpr int model_schema_version = 1;

enum class InputFormat { csv, json };

// By extension: .json -> json, anything else -> csv.
InputFormat format_from_path(const std::string& path);
InputFormat parse_format(const std::string& s);

// Points are multiplied by 2*pi/period before canonicalization. Duplicate
// canonical points are reported with their row numbers.
SampleSet ingest(const std::string& path, InputFormat format, double period = two_pi);
SampleSet parse_samples(const std::string& text, InputFormat format, double period = two_pi);

// Evaluation points: CSV with leading columns re_z,im_z or JSON "points".
// No rescaling, no canonicalization.
std::vector<cplx> parse_points(const std::string& text, InputFormat format);
std::vector<cplx> read_points(const std::string& path, InputFormat format);

struct ModelFile {
    TrigModel model;            // internal 2*pi coordinates
    double period = two_pi;     // user period the model was fitted under
    std::optional<PoleZeroReport> report;
};

std::string write_model(const ModelFile& file);
ModelFile read_model(const std::string& text);
ModelFile load_model(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// Tab-separated table with a header row. Numbers use 17 significant digits.
class Table {
public:
    explicit Table(std::vector<std::string> columns);
    void add(const std::vector<double>& row);
    void add(const std::string& label, const std::vector<double>& row); // first column textual
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::string> rows_;
};

std::string format_number(double x);

} // namespace aaatrig
