#pragma once

#include <cstdint>
#include <filesystem>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "rqakit/recurrence.hpp"

namespace rqakit {

inline constexpr unsigned kMinMicrostateSide = 2;
inline constexpr unsigned kMaxMicrostateSide = 5;

// Counts of observed n x n microstate codes. Codes live in [0, 2^(n*n));
// counts are sparse since occupied codes are usually far fewer. `samples`
// is the number of block draws behind the counts.
struct MicrostateHistogram {
    unsigned n = 2;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0; // 0 for exhaustive enumeration
    std::unordered_map<std::uint32_t, std::uint64_t> counts;
};

// Code of the n x n block with top-left corner (i, j): block cell (r, c)
// maps to bit r*n + c, so bit 0 is the top-left cell.
std::uint32_t encode_microstate(const RecurrencePlot& rp, std::size_t i,
                                std::size_t j, unsigned n);

// Histogram of n_samples block codes with corners drawn uniformly (with
// replacement) over the full (K-n+1)^2 corner grid, line of identity
// included. The draws are split into `partitions` sub-streams derived
// from (seed, partition); the result depends on (seed, partitions) but
// not on `threads`, which only sets how many partitions run concurrently.
MicrostateHistogram sample_microstates(const RecurrencePlot& rp, unsigned n,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       unsigned partitions = 1, unsigned threads = 1);

// Histogram over every placement; samples = (K-n+1)^2. Refuses more than
// 1e7 placements.
MicrostateHistogram exhaustive_microstates(const RecurrencePlot& rp, unsigned n);

// S = -sum_i P_i ln P_i with P_i = count_i / samples. Codes are summed in
// ascending order for reproducibility.
double microstate_entropy(const MicrostateHistogram& hist);

// ln(2^(n*n)) = n^2 ln 2, the equally-probable upper bound.
double max_entropy(unsigned n);

// Probability mass per recurrent-cell count: mass[i] sums P over codes
// with popcount i, i = 0..n^2.
struct ClassBreakdown {
    std::vector<double> mass;
};

ClassBreakdown class_breakdown(const MicrostateHistogram& hist);

// Analytic recurrence rate of normalized uniform noise at threshold
// epsilon, border effects included: RR = 2*epsilon - epsilon^2.
double uniform_noise_rr(double epsilon);

// CSV of "code,count" pairs sorted by code.
void write_histogram_csv(const MicrostateHistogram& hist,
                         const std::filesystem::path& path);

// {"n", "n_bar", "entropy", "s_max", "class_mass"} report object.
nlohmann::json entropy_report(const MicrostateHistogram& hist);

} // namespace rqakit
