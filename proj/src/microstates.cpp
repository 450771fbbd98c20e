#include "rqakit/microstates.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "rqakit/rng.hpp"

namespace rqakit {

namespace {

void check_side(unsigned n) {
    if (n < kMinMicrostateSide || n > kMaxMicrostateSide) {
        throw std::invalid_argument("microstate side must lie in [" +
                                    std::to_string(kMinMicrostateSide) + ", " +
                                    std::to_string(kMaxMicrostateSide) + "], got " +
                                    std::to_string(n));
    }
}

} // namespace

std::uint32_t encode_microstate(const RecurrencePlot& rp, std::size_t i,
                                std::size_t j, unsigned n) {
    check_side(n);
    if (i + n > rp.size() || j + n > rp.size()) {
        throw std::out_of_range("encode_microstate: corner (" + std::to_string(i) +
                                ", " + std::to_string(j) + ") out of range for n = " +
                                std::to_string(n));
    }
    std::uint32_t code = 0;
    unsigned bit = 0;
    for (unsigned r = 0; r < n; ++r) {
        for (unsigned c = 0; c < n; ++c, ++bit) {
            if (rp.get(i + r, j + c)) {
                code |= std::uint32_t{1} << bit;
            }
        }
    }
    return code;
}

MicrostateHistogram sample_microstates(const RecurrencePlot& rp, unsigned n,
                                       std::uint64_t n_samples, std::uint64_t seed,
                                       unsigned partitions, unsigned threads) {
    check_side(n);
    if (rp.size() < n) {
        throw std::invalid_argument("sample_microstates: matrix size " +
                                    std::to_string(rp.size()) +
                                    " smaller than microstate side " +
                                    std::to_string(n));
    }
    if (n_samples == 0) {
        throw std::invalid_argument("sample_microstates: need at least 1 sample");
    }
    if (partitions == 0) partitions = 1;
    if (partitions > n_samples) partitions = static_cast<unsigned>(n_samples);

    const std::uint64_t corners = rp.size() - n + 1;
    const std::uint64_t base = n_samples / partitions;
    const std::uint64_t extra = n_samples % partitions;

    std::vector<std::unordered_map<std::uint32_t, std::uint64_t>> partial(partitions);
    auto run_partition = [&](std::size_t p) {
        Xoshiro256pp rng(derive_stream(seed, p));
        auto& counts = partial[p];
        const std::uint64_t quota = base + (p < extra ? 1 : 0);
        for (std::uint64_t s = 0; s < quota; ++s) {
            const std::size_t i = rng.uniform_below(corners);
            const std::size_t j = rng.uniform_below(corners);
            ++counts[encode_microstate(rp, i, j, n)];
        }
    };

    if (threads <= 1 || partitions == 1) {
        for (unsigned p = 0; p < partitions; ++p) run_partition(p);
    } else {
        const unsigned workers = std::min(threads, partitions);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::atomic<unsigned> next{0};
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (unsigned p = next.fetch_add(1); p < partitions;
                     p = next.fetch_add(1)) {
                    run_partition(p);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    MicrostateHistogram hist;
    hist.n = n;
    hist.samples = n_samples;
    hist.seed = seed;
    for (unsigned p = 0; p < partitions; ++p) {
        for (const auto& [code, count] : partial[p]) {
            hist.counts[code] += count;
        }
    }
    return hist;
}

MicrostateHistogram exhaustive_microstates(const RecurrencePlot& rp, unsigned n) {
    check_side(n);
    if (rp.size() < n) {
        throw std::invalid_argument("exhaustive_microstates: matrix smaller than microstate side");
    }
    const std::uint64_t corners = rp.size() - n + 1;
    if (corners * corners > 10'000'000ULL) {
        throw std::invalid_argument("exhaustive_microstates: " +
                                    std::to_string(corners * corners) +
                                    " placements exceed the 1e7 limit");
    }
    MicrostateHistogram hist;
    hist.n = n;
    hist.samples = corners * corners;
    for (std::size_t i = 0; i < corners; ++i) {
        for (std::size_t j = 0; j < corners; ++j) {
            ++hist.counts[encode_microstate(rp, i, j, n)];
        }
    }
    return hist;
}

double microstate_entropy(const MicrostateHistogram& hist) {
    if (hist.samples == 0) {
        return 0.0;
    }
    std::vector<std::pair<std::uint32_t, std::uint64_t>> sorted(hist.counts.begin(),
                                                                hist.counts.end());
    std::sort(sorted.begin(), sorted.end());
    const double total = static_cast<double>(hist.samples);
    double entropy = 0.0;
    for (const auto& [code, count] : sorted) {
        if (count == 0) continue;
        const double p = static_cast<double>(count) / total;
        entropy -= p * std::log(p);
    }
    return entropy;
}

double max_entropy(unsigned n) {
    check_side(n);
    return static_cast<double>(n) * static_cast<double>(n) * std::numbers::ln2;
}

ClassBreakdown class_breakdown(const MicrostateHistogram& hist) {
    ClassBreakdown breakdown;
    breakdown.mass.assign(static_cast<std::size_t>(hist.n) * hist.n + 1, 0.0);
    if (hist.samples == 0) {
        return breakdown;
    }
    const double total = static_cast<double>(hist.samples);
    for (const auto& [code, count] : hist.counts) {
        breakdown.mass[static_cast<std::size_t>(std::popcount(code))] +=
            static_cast<double>(count) / total;
    }
    return breakdown;
}

double uniform_noise_rr(double epsilon) {
    if (epsilon < 0.0 || epsilon > 1.0) {
        throw std::invalid_argument("uniform_noise_rr: epsilon must lie in [0, 1]");
    }
    return 2.0 * epsilon - epsilon * epsilon;
}

void write_histogram_csv(const MicrostateHistogram& hist,
                         const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("write_histogram_csv: cannot open " + path.string());
    }
    std::vector<std::pair<std::uint32_t, std::uint64_t>> sorted(hist.counts.begin(),
                                                                hist.counts.end());
    std::sort(sorted.begin(), sorted.end());
    out << "code,count\n";
    for (const auto& [code, count] : sorted) {
        out << code << ',' << count << '\n';
    }
}

nlohmann::json entropy_report(const MicrostateHistogram& hist) {
    return {{"n", hist.n},
            {"n_bar", hist.samples},
            {"entropy", microstate_entropy(hist)},
            {"s_max", max_entropy(hist.n)},
            {"class_mass", class_breakdown(hist).mass}};
}

} // namespace rqakit
