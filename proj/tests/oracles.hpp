#pragma once

// Test-only reference implementations. Everything here recomputes results
// from a plain dense boolean matrix, independent of the bit-packed code
// paths under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "rqakit/recurrence.hpp"
#include "rqakit/rng.hpp"

namespace oracle {

struct DenseRp {
    std::size_t k = 0;
    std::vector<std::uint8_t> cells;

    explicit DenseRp(std::size_t size) : k(size), cells(size * size, 0) {}
    bool get(std::size_t i, std::size_t j) const { return cells[i * k + j] != 0; }
    void set(std::size_t i, std::size_t j) {
        cells[i * k + j] = 1;
        cells[j * k + i] = 1;
    }
    std::uint64_t ones() const {
        std::uint64_t total = 0;
        for (auto c : cells) total += c;
        return total;
    }
};

// Dense recurrence matrix built straight from the raw samples, with its
// own min-max rescale.
inline DenseRp dense_from_series(const std::vector<double>& raw, double eps) {
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    std::vector<double> x(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        x[i] = hi > lo ? (raw[i] - lo) / (hi - lo) : 0.5;
    }
    DenseRp m(raw.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            if (std::abs(x[i] - x[j]) <= eps) m.cells[i * m.k + j] = 1;
        }
    }
    return m;
}

// Maximal diagonal runs, both triangles, line of identity excluded.
inline std::map<std::size_t, std::uint64_t> diagonal_runs(const DenseRp& m) {
    std::map<std::size_t, std::uint64_t> counts;
    for (std::size_t offset = 1; offset < m.k; ++offset) {
        for (int lower = 0; lower < 2; ++lower) {
            std::size_t run = 0;
            for (std::size_t t = 0; t < m.k - offset; ++t) {
                const bool bit = lower ? m.get(t + offset, t) : m.get(t, t + offset);
                if (bit) {
                    ++run;
                } else if (run > 0) {
                    ++counts[run];
                    run = 0;
                }
            }
            if (run > 0) ++counts[run];
        }
    }
    return counts;
}

// Maximal vertical runs per column, line of identity included.
inline std::map<std::size_t, std::uint64_t> vertical_runs(const DenseRp& m) {
    std::map<std::size_t, std::uint64_t> counts;
    for (std::size_t j = 0; j < m.k; ++j) {
        std::size_t run = 0;
        for (std::size_t i = 0; i < m.k; ++i) {
            if (m.get(i, j)) {
                ++run;
            } else if (run > 0) {
                ++counts[run];
                run = 0;
            }
        }
        if (run > 0) ++counts[run];
    }
    return counts;
}

inline std::uint64_t weighted(const std::map<std::size_t, std::uint64_t>& counts,
                              std::size_t min_len) {
    std::uint64_t total = 0;
    for (const auto& [len, count] : counts) {
        if (len >= min_len) total += len * count;
    }
    return total;
}

inline double det(const DenseRp& m, std::size_t l_min) {
    const std::uint64_t denom = m.ones() - m.k;
    if (denom == 0) return 0.0;
    return static_cast<double>(weighted(diagonal_runs(m), l_min)) /
           static_cast<double>(denom);
}

inline double lam(const DenseRp& m, std::size_t v_min) {
    const std::uint64_t denom = m.ones();
    if (denom == 0) return 0.0;
    return static_cast<double>(weighted(vertical_runs(m), v_min)) /
           static_cast<double>(denom);
}

inline double entr(const DenseRp& m, std::size_t l_min) {
    const auto counts = diagonal_runs(m);
    std::uint64_t total = 0;
    for (const auto& [len, count] : counts) {
        if (len >= l_min) total += count;
    }
    if (total == 0) return 0.0;
    double entropy = 0.0;
    for (const auto& [len, count] : counts) {
        if (len >= l_min && count > 0) {
            const double p = static_cast<double>(count) / static_cast<double>(total);
            entropy -= p * std::log(p);
        }
    }
    return entropy;
}

inline double div(const DenseRp& m) {
    const auto counts = diagonal_runs(m);
    if (counts.empty()) return std::numeric_limits<double>::infinity();
    return 1.0 / static_cast<double>(counts.rbegin()->first);
}

inline std::uint32_t block_code(const DenseRp& m, std::size_t i, std::size_t j,
                                unsigned n) {
    std::uint32_t code = 0;
    unsigned bit = 0;
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned c = 0; c < n; ++c, ++bit) {
            if (m.get(i + r, j + c)) code |= std::uint32_t{1} << bit;
        }
    }
    return code;
}

inline std::map<std::uint32_t, std::uint64_t> exhaustive_codes(const DenseRp& m,
                                                               unsigned n) {
    std::map<std::uint32_t, std::uint64_t> counts;
    for (std::size_t i = 0; i + n <= m.k; ++i) {
        for (std::size_t j = 0; j + n <= m.k; ++j) {
            ++counts[block_code(m, i, j, n)];
        }
    }
    return counts;
}

// Total-variation distance between two count maps (each normalized by its
// own total).
template <typename MapA, typename MapB>
double tv_distance(const MapA& a, std::uint64_t total_a, const MapB& b,
                   std::uint64_t total_b) {
    std::map<std::uint32_t, std::pair<double, double>> merged;
    for (const auto& [code, count] : a) {
        merged[code].first = static_cast<double>(count) / static_cast<double>(total_a);
    }
    for (const auto& [code, count] : b) {
        merged[code].second = static_cast<double>(count) / static_cast<double>(total_b);
    }
    double tv = 0.0;
    for (const auto& [code, masses] : merged) {
        tv += std::abs(masses.first - masses.second);
    }
    return 0.5 * tv;
}

// Random symmetric recurrence matrix with unit diagonal, built in both
// representations from the same bit draws.
inline std::pair<rqakit::RecurrencePlot, DenseRp> random_rp_pair(std::size_t k,
                                                                 double density,
                                                                 std::uint64_t seed) {
    rqakit::RecurrencePlot packed(k, 0.5);
    DenseRp dense(k);
    rqakit::Xoshiro256pp rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        packed.set(i, i);
        dense.set(i, i);
        for (std::size_t j = i + 1; j < k; ++j) {
            if (rng.uniform01() < density) {
                packed.set(i, j);
                dense.set(i, j);
            }
        }
    }
    return {std::move(packed), std::move(dense)};
}

} // namespace oracle
