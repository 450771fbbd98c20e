#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "rqakit/recurrence.hpp"

namespace rqakit {

enum class LineKind { diagonal, vertical };

// Histogram of maximal run lengths in the recurrence matrix. Diagonal
// runs exclude the line of identity and count both triangles; vertical
// runs include the identity cells. Runs truncated by the matrix border
// count at their truncated length.
struct LineDistribution {
    LineKind kind = LineKind::diagonal;
    std::size_t matrix_size = 0;
    std::map<std::size_t, std::uint64_t> counts;

    // Sum of length * count over lengths >= min_length.
    std::uint64_t weighted_total(std::size_t min_length = 1) const;
    // Longest line present, 0 if the distribution is empty.
    std::size_t max_length() const;
};

LineDistribution diagonal_dist(const RecurrencePlot& rp);
LineDistribution vertical_dist(const RecurrencePlot& rp);

// Fraction of off-identity recurrent points on diagonal lines of length
// >= l_min. Returns 0 (with a warning) when the plot has no off-identity
// recurrences.
double determinism(const LineDistribution& diag, const RecurrencePlot& rp,
                   std::size_t l_min = 2);

// Fraction of recurrent points on vertical lines of length >= v_min.
double laminarity(const LineDistribution& vert, const RecurrencePlot& rp,
                  std::size_t v_min = 2);

// Shannon entropy (natural log) of the diagonal length distribution,
// normalized over lengths >= l_min. Empty distribution gives 0.
double diagonal_entropy(const LineDistribution& diag, std::size_t l_min = 2);

// 1 / l_max over off-identity diagonal lines; +infinity when no diagonal
// line exists at all.
double divergence(const LineDistribution& diag);

struct RqaSummary {
    double epsilon = 0.0;
    double rr = 0.0;
    double det = 0.0;
    double lam = 0.0;
    double entr = 0.0;
    double div = 0.0;
    std::size_t l_min = 2;
    std::size_t v_min = 2;
};

RqaSummary compute_rqa(const RecurrencePlot& rp, std::size_t l_min = 2,
                       std::size_t v_min = 2);

// One-row CSV serialization: epsilon,rr,det,lam,entr,div,l_min,v_min.
std::string rqa_csv_header();
std::string to_csv_row(const RqaSummary& summary);

} // namespace rqakit
