#include "rqakit/rqa.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>

namespace rqakit {

std::uint64_t LineDistribution::weighted_total(std::size_t min_length) const {
    std::uint64_t total = 0;
    for (const auto& [length, count] : counts) {
        if (length >= min_length) {
            total += length * count;
        }
    }
    return total;
}

std::size_t LineDistribution::max_length() const {
    return counts.empty() ? 0 : counts.rbegin()->first;
}

LineDistribution diagonal_dist(const RecurrencePlot& rp) {
    LineDistribution dist;
    dist.kind = LineKind::diagonal;
    dist.matrix_size = rp.size();
    const std::size_t k = rp.size();
    // Both triangles, offsets 1..K-1; the line of identity is skipped.
    for (std::size_t offset = 1; offset < k; ++offset) {
        std::size_t run_upper = 0;
        std::size_t run_lower = 0;
        for (std::size_t t = 0; t < k - offset; ++t) {
            if (rp.get(t, t + offset)) {
                ++run_upper;
            } else if (run_upper > 0) {
                ++dist.counts[run_upper];
                run_upper = 0;
            }
            if (rp.get(t + offset, t)) {
                ++run_lower;
            } else if (run_lower > 0) {
                ++dist.counts[run_lower];
                run_lower = 0;
            }
        }
        if (run_upper > 0) ++dist.counts[run_upper];
        if (run_lower > 0) ++dist.counts[run_lower];
    }
    return dist;
}

LineDistribution vertical_dist(const RecurrencePlot& rp) {
    LineDistribution dist;
    dist.kind = LineKind::vertical;
    dist.matrix_size = rp.size();
    const std::size_t k = rp.size();
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t run = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (rp.get(i, j)) {
                ++run;
            } else if (run > 0) {
                ++dist.counts[run];
                run = 0;
            }
        }
        if (run > 0) ++dist.counts[run];
    }
    return dist;
}

double determinism(const LineDistribution& diag, const RecurrencePlot& rp,
                   std::size_t l_min) {
    const std::uint64_t off_identity = rp.ones() - rp.size();
    if (off_identity == 0) {
        std::cerr << "rqakit: warning: no off-identity recurrences, DET = 0\n";
        return 0.0;
    }
    return static_cast<double>(diag.weighted_total(l_min)) /
           static_cast<double>(off_identity);
}

double laminarity(const LineDistribution& vert, const RecurrencePlot& rp,
                  std::size_t v_min) {
    const std::uint64_t total = rp.ones();
    if (total == 0) {
        return 0.0;
    }
    return static_cast<double>(vert.weighted_total(v_min)) /
           static_cast<double>(total);
}

double diagonal_entropy(const LineDistribution& diag, std::size_t l_min) {
    std::uint64_t total = 0;
    for (const auto& [length, count] : diag.counts) {
        if (length >= l_min) total += count;
    }
    if (total == 0) {
        return 0.0;
    }
    double entropy = 0.0;
    for (const auto& [length, count] : diag.counts) {
        if (length >= l_min && count > 0) {
            const double p = static_cast<double>(count) / static_cast<double>(total);
            entropy -= p * std::log(p);
        }
    }
    return entropy;
}

double divergence(const LineDistribution& diag) {
    const std::size_t longest = diag.max_length();
    if (longest == 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / static_cast<double>(longest);
}

RqaSummary compute_rqa(const RecurrencePlot& rp, std::size_t l_min,
                       std::size_t v_min) {
    const LineDistribution diag = diagonal_dist(rp);
    const LineDistribution vert = vertical_dist(rp);
    RqaSummary summary;
    summary.epsilon = rp.epsilon();
    summary.rr = recurrence_rate(rp);
    summary.det = determinism(diag, rp, l_min);
    summary.lam = laminarity(vert, rp, v_min);
    summary.entr = diagonal_entropy(diag, l_min);
    summary.div = divergence(diag);
    summary.l_min = l_min;
    summary.v_min = v_min;
    return summary;
}

std::string rqa_csv_header() {
    return "epsilon,rr,det,lam,entr,div,l_min,v_min";
}

std::string to_csv_row(const RqaSummary& s) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%zu,%zu",
                  s.epsilon, s.rr, s.det, s.lam, s.entr, s.div, s.l_min, s.v_min);
    return buf;
}

} // namespace rqakit
