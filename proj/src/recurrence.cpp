#include "rqakit/recurrence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

namespace rqakit {

RecurrencePlot::RecurrencePlot(std::size_t size, double epsilon, std::string norm)
    : size_(size),
      words_per_row_((size + 63) / 64),
      epsilon_(epsilon),
      norm_(std::move(norm)),
      words_(size_ * words_per_row_, 0) {
    if (size_ < 2) {
        throw std::invalid_argument("RecurrencePlot: size must be at least 2");
    }
}

std::uint64_t RecurrencePlot::ones() const noexcept {
    std::uint64_t total = 0;
    for (std::uint64_t word : words_) {
        total += static_cast<std::uint64_t>(std::popcount(word));
    }
    return total;
}

RecurrencePlot build_rp(const TimeSeries& series, double epsilon,
                        const EmbeddingSpec& embedding) {
    if (!(epsilon > 0.0) || epsilon > 1.0) {
        throw std::invalid_argument("build_rp: epsilon must lie in (0, 1]");
    }
    if (embedding.dimension == 0 || embedding.delay == 0) {
        throw std::invalid_argument("build_rp: embedding dimension and delay must be >= 1");
    }
    if (series.size() < 2) {
        throw std::invalid_argument("build_rp: series needs at least 2 samples");
    }

    const TimeSeries& input = series.normalized ? series : normalize(series);
    const auto& x = input.values;
    const std::size_t m = x.size();
    const std::size_t dim = embedding.dimension;
    const std::size_t delay = embedding.delay;
    const std::size_t span = (dim - 1) * delay;
    if (span + 2 > m) {
        throw std::invalid_argument("build_rp: embedding span exceeds series length");
    }
    const std::size_t k = m - span;

    RecurrencePlot rp(k, epsilon, dim == 1 ? "abs" : "max");
    if (dim == 1) {
        for (std::size_t i = 0; i < k; ++i) {
            rp.set(i, i);
            for (std::size_t j = i + 1; j < k; ++j) {
                if (std::abs(x[i] - x[j]) <= epsilon) {
                    rp.set(i, j);
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < k; ++i) {
            rp.set(i, i);
            for (std::size_t j = i + 1; j < k; ++j) {
                double dist = 0.0;
                for (std::size_t d = 0; d < dim; ++d) {
                    dist = std::max(dist, std::abs(x[i + d * delay] - x[j + d * delay]));
                }
                if (dist <= epsilon) {
                    rp.set(i, j);
                }
            }
        }
    }
    return rp;
}

double recurrence_rate(const RecurrencePlot& rp) {
    const double k = static_cast<double>(rp.size());
    return static_cast<double>(rp.ones()) / (k * k);
}

std::vector<TimeSeries> windows(const TimeSeries& series, const WindowSpec& spec) {
    if (spec.window_size < 2 || spec.stride == 0) {
        throw std::invalid_argument("windows: window_size >= 2 and stride >= 1 required");
    }
    if (spec.window_size > series.size()) {
        throw std::invalid_argument("windows: window size " +
                                    std::to_string(spec.window_size) +
                                    " exceeds series length " +
                                    std::to_string(series.size()));
    }
    std::vector<TimeSeries> out;
    for (std::size_t start = 0; start + spec.window_size <= series.size();
         start += spec.stride) {
        TimeSeries w;
        w.seed = series.seed;
        w.values.assign(series.values.begin() + static_cast<std::ptrdiff_t>(start),
                        series.values.begin() +
                            static_cast<std::ptrdiff_t>(start + spec.window_size));
        out.push_back(std::move(w));
    }
    return out;
}

void write_pbm(const RecurrencePlot& rp, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_pbm: cannot open " + path.string());
    }
    const std::size_t k = rp.size();
    out << "P1\n" << k << ' ' << k << '\n';
    std::string row(k, '0');
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            row[j] = rp.get(i, j) ? '1' : '0';
        }
        out << row << '\n';
    }
    if (!out) {
        throw std::runtime_error("write_pbm: write failed for " + path.string());
    }
}

} // namespace rqakit
