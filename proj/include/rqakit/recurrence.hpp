#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rqakit/time_series.hpp"

namespace rqakit {

// Optional time-delay embedding (dimension, delay). The default (1, 1)
// keeps scalar states and reproduces the plain |x_i - x_j| recurrence.
struct EmbeddingSpec {
    std::size_t dimension = 1;
    std::size_t delay = 1;
};

// Symmetric binary recurrence matrix with unit diagonal. Rows are packed
// into 64-bit words, bit j of row i = R_ij (LSB first within a word).
// Immutable once built; safe to share across threads.
class RecurrencePlot {
public:
    RecurrencePlot(std::size_t size, double epsilon, std::string norm = "abs");

    std::size_t size() const noexcept { return size_; }
    double epsilon() const noexcept { return epsilon_; }
    const std::string& norm() const noexcept { return norm_; }
    std::size_t words_per_row() const noexcept { return words_per_row_; }

    bool get(std::size_t i, std::size_t j) const noexcept {
        return (words_[i * words_per_row_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    // Sets both (i, j) and (j, i).
    void set(std::size_t i, std::size_t j) noexcept {
        words_[i * words_per_row_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
        words_[j * words_per_row_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
    }

    std::span<const std::uint64_t> row_words(std::size_t i) const noexcept {
        return {words_.data() + i * words_per_row_, words_per_row_};
    }

    // Total number of recurrent cells (line of identity included).
    std::uint64_t ones() const noexcept;

private:
    std::size_t size_;
    std::size_t words_per_row_;
    double epsilon_;
    std::string norm_;
    std::vector<std::uint64_t> words_;
};

// R_ij = 1 iff dist(x_i, x_j) <= epsilon, epsilon in (0, 1]. The series
// is min-max rescaled first when not already normalized. Scalar states
// use absolute difference; embedded states use the max norm.
RecurrencePlot build_rp(const TimeSeries& series, double epsilon,
                        const EmbeddingSpec& embedding = {});

// Density of recurrent cells, ones / K^2. Counts the line of identity.
double recurrence_rate(const RecurrencePlot& rp);

struct WindowSpec {
    std::size_t window_size = 100;
    std::size_t stride = 100;
};

// Consecutive sub-series starting at 0, stride, 2*stride, ...; a final
// partial window is dropped. Windows carry normalized=false (a sub-range
// generally no longer spans [0, 1]), so build_rp rescales each window on
// its own.
std::vector<TimeSeries> windows(const TimeSeries& series, const WindowSpec& spec);

// Plain-text PBM (P1): header "P1\n<K> <K>\n", then K rows of K '0'/'1'
// characters, one row per line. '1' marks a recurrent cell.
void write_pbm(const RecurrencePlot& rp, const std::filesystem::path& path);

} // namespace rqakit
