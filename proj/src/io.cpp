#include "spikecast/io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace spikecast {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        std::size_t b = 0;
        while (b < cell.size() && cell[b] == ' ') ++b;
        cells.push_back(cell.substr(b));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& what) {
    if (cell.empty())
        throw std::runtime_error("csv: missing " + what + " at row " + std::to_string(row));
    if (cell == "inf") return std::numeric_limits<double>::infinity();
    if (cell == "-inf") return -std::numeric_limits<double>::infinity();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || errno == ERANGE)
        throw std::runtime_error("csv: non-numeric " + what + " '" + cell + "' at row " +
                                 std::to_string(row));
    return v;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);  // LF line endings everywhere
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

}  // namespace

Dataset load_dataset_csv(const std::string& path, const std::string& value_column) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv: empty file: " + path);
    const auto header = split_row(line);
    if (header.size() < 2) throw std::runtime_error("csv: header needs at least two columns");

    int value_idx = -1, label_idx = -1;
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i] == value_column) value_idx = static_cast<int>(i);
        if (header[i] == "is_anomaly" || header[i] == "label") label_idx = static_cast<int>(i);
    }
    if (value_idx < 0) throw std::runtime_error("csv: missing column '" + value_column + "'");

    Dataset ds;
    double prev_t = 0.0;
    bool first = true;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw std::runtime_error("csv: wrong cell count at row " + std::to_string(row));
        const double t = parse_cell(cells[0], row, "timestamp");
        if (!first && t <= prev_t)
            throw std::runtime_error("csv: non-increasing timestamp at row " + std::to_string(row));
        prev_t = t;
        first = false;
        ds.series.values.push_back(parse_cell(cells[value_idx], row, "value"));
        if (label_idx >= 0)
            ds.labels.push_back(static_cast<int>(parse_cell(cells[label_idx], row, "label")));
    }
    if (ds.series.values.empty()) throw std::runtime_error("csv: no data rows: " + path);
    return ds;
}

TimeSeries load_series_csv(const std::string& path, const std::string& value_column) {
    return load_dataset_csv(path, value_column).series;
}

void save_series_csv(const std::string& path, const TimeSeries& series) {
    auto out = open_out(path);
    out << "t,value\n";
    for (std::size_t t = 0; t < series.values.size(); ++t)
        out << t << ',' << format_double(series.values[t]) << '\n';
}

void save_raster_csv(const std::string& path, const SpikeRaster& raster) {
    auto out = open_out(path);
    out << "channel,step\n";
    for (int c = 0; c < raster.channels; ++c)
        for (auto s : raster.events[c]) out << c << ',' << s << '\n';
}

void save_topology_csv(const std::string& path, const Topology& topo) {
    auto out = open_out(path);
    out << "pre,post,weight,plastic\n";
    for (const auto& s : topo.synapses)
        out << s.pre << ',' << s.post << ',' << format_double(s.weight) << ','
            << (s.plastic ? 1 : 0) << '\n';
}

void save_scores_csv(const std::string& path, const CentralityResult& scores) {
    auto out = open_out(path);
    out << "node,score\n";
    for (std::size_t i = 0; i < scores.scores.size(); ++i)
        out << i << ',' << format_double(scores.scores[i]) << '\n';
}

void save_diagram_csv(const std::string& path, const PersistenceDiagram& d) {
    auto out = open_out(path);
    out << "dim,birth,death\n";
    for (int dim = 0; dim <= 1; ++dim)
        for (const auto& p : d.dim(dim))
            out << dim << ',' << format_double(p.birth) << ',' << format_double(p.death) << '\n';
}

void save_record_csv(const std::string& path, const RunRecord& record) {
    auto out = open_out(path);
    out << "t,observed,predicted,rmse,d_w,refit\n";
    for (const auto& s : record.steps)
        out << s.t << ',' << format_double(s.observed) << ',' << format_double(s.predicted) << ','
            << format_double(s.rmse) << ',' << format_double(s.d_w) << ',' << (s.refit ? 1 : 0)
            << '\n';
}

}  // namespace spikecast
