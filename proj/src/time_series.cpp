#include "rqakit/time_series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>

namespace rqakit {

TimeSeries normalize(const TimeSeries& series) {
    if (series.size() < 2) {
        throw std::invalid_argument("normalize: series needs at least 2 samples");
    }
    if (series.normalized) {
        return series;
    }
    const auto [min_it, max_it] =
        std::minmax_element(series.values.begin(), series.values.end());
    const double lo = *min_it;
    const double hi = *max_it;

    TimeSeries out;
    out.seed = series.seed;
    out.normalized = true;
    out.values.reserve(series.size());
    if (hi == lo) {
        std::cerr << "rqakit: warning: constant series, normalizing to all 0.5\n";
        out.values.assign(series.size(), 0.5);
        return out;
    }
    const double span = hi - lo;
    for (double v : series.values) {
        out.values.push_back((v - lo) / span);
    }
    return out;
}

namespace {

bool is_separator(char c) {
    return c == ',' || c == ' ' || c == '\t' || c == ';';
}

// Fields of one record, split on commas/blanks, empty fields skipped.
std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && is_separator(line[pos])) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && !is_separator(line[pos])) ++pos;
        if (pos > start) fields.push_back(line.substr(start, pos - start));
    }
    return fields;
}

} // namespace

TimeSeries ingest_csv(const std::filesystem::path& path, std::size_t column) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("ingest_csv: cannot open " + path.string());
    }
    TimeSeries out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (column >= fields.size()) {
            throw std::runtime_error("ingest_csv: line " + std::to_string(line_no) +
                                     ": no field at column " + std::to_string(column));
        }
        const auto field = fields[column];
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(field.data(), field.data() + field.size(), value);
        if (ec != std::errc{} || ptr != field.data() + field.size()) {
            throw std::runtime_error("ingest_csv: line " + std::to_string(line_no) +
                                     ": cannot parse '" + std::string(field) +
                                     "' as a number");
        }
        out.values.push_back(value);
    }
    if (out.size() < 2) {
        throw std::invalid_argument("ingest_csv: need at least 2 records, got " +
                                    std::to_string(out.size()));
    }
    return out;
}

} // namespace rqakit
