#include "rqakit/experiments.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "rqakit/rng.hpp"

namespace rqakit {

namespace {

constexpr const char* kSoftwareName = "rqakit";
constexpr const char* kSoftwareVersion = "0.1.0";

// Stream index for the rep'th shared white-noise series, outside the
// grid-point index range.
constexpr std::uint64_t kSharedSeriesBase = std::uint64_t{1} << 32;

std::vector<double> linear_grid(double lo, double hi, double step) {
    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double v = std::round((lo + static_cast<double>(k) * step) * 1e9) / 1e9;
        if (v > hi + 1e-12) break;
        grid.push_back(v);
    }
    return grid;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double mean_of(std::span<const double> v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

nlohmann::json base_provenance(const std::string& experiment,
                               const std::string& parameter,
                               std::span<const double> grid, std::uint64_t seed,
                               unsigned threads) {
    return {{"software", {{"name", kSoftwareName}, {"version", kSoftwareVersion}}},
            {"experiment", experiment},
            {"parameter", parameter},
            {"grid", std::vector<double>(grid.begin(), grid.end())},
            {"seed", seed},
            {"threads", threads},
            {"sampler_partitions", 1},
            {"timestamp_utc", timestamp_utc()}};
}

void check_n_list(std::span<const unsigned> n_list) {
    if (n_list.empty()) {
        throw std::invalid_argument("sweep: n_list must not be empty");
    }
    for (unsigned n : n_list) {
        if (n < kMinMicrostateSide || n > kMaxMicrostateSide) {
            throw std::invalid_argument("sweep: microstate side " + std::to_string(n) +
                                        " outside [2, 5]");
        }
    }
}

} // namespace

std::size_t SweepResult::column_index(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::out_of_range("SweepResult: no column named '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns.begin());
}

double SweepResult::value(std::size_t row, const std::string& column) const {
    return rows.at(row).values.at(column_index(column));
}

std::vector<double> default_epsilon_grid() { return linear_grid(0.02, 0.60, 0.02); }
std::vector<double> default_p_grid() { return linear_grid(0.0, 2.0, 0.05); }
std::vector<double> default_logistic_r_grid() { return linear_grid(2.5, 4.0, 0.002); }
std::vector<double> default_lorenz_r_grid() { return linear_grid(15.0, 50.0, 0.5); }

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    if (threads <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

SweepResult sweep_epsilon_white_noise(std::span<const double> eps_grid,
                                      std::span<const unsigned> n_list,
                                      std::size_t m, std::uint64_t n_samples,
                                      std::uint64_t seed, unsigned num_seeds,
                                      unsigned threads) {
    check_n_list(n_list);
    if (num_seeds == 0) num_seeds = 1;

    std::vector<TimeSeries> series;
    series.reserve(num_seeds);
    for (unsigned rep = 0; rep < num_seeds; ++rep) {
        series.push_back(
            normalize(gen_white_noise(m, derive_stream(seed, kSharedSeriesBase + rep))));
    }

    SweepResult result;
    result.experiment = "white_noise";
    result.parameter_name = "epsilon";
    result.columns = {"rr", "rr_analytic"};
    for (unsigned n : n_list) result.columns.push_back("s" + std::to_string(n));
    if (num_seeds > 1) {
        result.columns.push_back("rr_sd");
        for (unsigned n : n_list) result.columns.push_back("s" + std::to_string(n) + "_sd");
    }
    result.rows.resize(eps_grid.size());

    parallel_for(eps_grid.size(), threads, [&](std::size_t g) {
        const double eps = eps_grid[g];
        const std::uint64_t point_master = derive_stream(seed, g);
        std::vector<double> rr_reps(num_seeds);
        std::vector<std::vector<double>> s_reps(n_list.size(),
                                                std::vector<double>(num_seeds));
        for (unsigned rep = 0; rep < num_seeds; ++rep) {
            const RecurrencePlot rp = build_rp(series[rep], eps);
            rr_reps[rep] = recurrence_rate(rp);
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                const std::uint64_t sampler_seed =
                    derive_stream(point_master, 16ULL * rep + ni + 1);
                s_reps[ni][rep] = microstate_entropy(
                    sample_microstates(rp, n_list[ni], n_samples, sampler_seed));
            }
        }
        SweepRow& row = result.rows[g];
        row.parameter = eps;
        row.values.push_back(mean_of(rr_reps));
        row.values.push_back(uniform_noise_rr(eps));
        for (const auto& s : s_reps) row.values.push_back(mean_of(s));
        if (num_seeds > 1) {
            row.values.push_back(sample_sd(rr_reps));
            for (const auto& s : s_reps) row.values.push_back(sample_sd(s));
        }
    });

    result.provenance = base_provenance("white_noise", "epsilon", eps_grid, seed, threads);
    result.provenance["m"] = m;
    result.provenance["n_bar"] = n_samples;
    result.provenance["n_list"] = std::vector<unsigned>(n_list.begin(), n_list.end());
    result.provenance["num_seeds"] = num_seeds;
    result.provenance["seed_scheme"] =
        "series=derive(seed,2^32+rep); sampler=derive(derive(seed,point),16*rep+n_index+1)";
    return result;
}

SweepResult sweep_sine_noise(std::span<const double> p_grid,
                             std::span<const unsigned> n_list, double omega,
                             std::size_t m, std::uint64_t n_samples, double epsilon,
                             std::uint64_t seed, unsigned num_seeds,
                             unsigned threads) {
    check_n_list(n_list);
    if (num_seeds == 0) num_seeds = 1;

    SweepResult result;
    result.experiment = "sine";
    result.parameter_name = "p";
    result.columns = {"rr"};
    for (unsigned n : n_list) result.columns.push_back("s" + std::to_string(n));
    if (num_seeds > 1) {
        result.columns.push_back("rr_sd");
        for (unsigned n : n_list) result.columns.push_back("s" + std::to_string(n) + "_sd");
    }
    result.rows.resize(p_grid.size());

    parallel_for(p_grid.size(), threads, [&](std::size_t g) {
        const double p = p_grid[g];
        if (p < 0.0) throw std::invalid_argument("sweep_sine_noise: p must be >= 0");
        const std::uint64_t point_master = derive_stream(seed, g);
        std::vector<double> rr_reps(num_seeds);
        std::vector<std::vector<double>> s_reps(n_list.size(),
                                                std::vector<double>(num_seeds));
        for (unsigned rep = 0; rep < num_seeds; ++rep) {
            const std::uint64_t rep_master = derive_stream(point_master, rep);
            const TimeSeries y = normalize(
                gen_sine_noise(m, omega, p, derive_stream(rep_master, 0)));
            const RecurrencePlot rp = build_rp(y, epsilon);
            rr_reps[rep] = recurrence_rate(rp);
            for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
                s_reps[ni][rep] = microstate_entropy(sample_microstates(
                    rp, n_list[ni], n_samples, derive_stream(rep_master, ni + 1)));
            }
        }
        SweepRow& row = result.rows[g];
        row.parameter = p;
        row.values.push_back(mean_of(rr_reps));
        for (const auto& s : s_reps) row.values.push_back(mean_of(s));
        if (num_seeds > 1) {
            row.values.push_back(sample_sd(rr_reps));
            for (const auto& s : s_reps) row.values.push_back(sample_sd(s));
        }
    });

    result.provenance = base_provenance("sine", "p", p_grid, seed, threads);
    result.provenance["omega"] = omega;
    result.provenance["m"] = m;
    result.provenance["n_bar"] = n_samples;
    result.provenance["epsilon"] = epsilon;
    result.provenance["n_list"] = std::vector<unsigned>(n_list.begin(), n_list.end());
    result.provenance["num_seeds"] = num_seeds;
    result.provenance["seed_scheme"] =
        "rep=derive(derive(seed,point),rep); series=derive(rep,0); sampler=derive(rep,n_index+1)";
    return result;
}

LogisticSweepResult sweep_logistic(std::span<const double> r_grid,
                                   std::span<const unsigned> n_list,
                                   double noise_frac, std::size_t m,
                                   std::size_t transient, std::uint64_t n_samples,
                                   double epsilon, std::uint64_t seed,
                                   std::size_t bifurcation_samples,
                                   unsigned threads) {
    check_n_list(n_list);

    LogisticSweepResult sweep;
    SweepResult& result = sweep.table;
    result.experiment = "logistic";
    result.parameter_name = "r";
    result.columns = {"rr", "det", "lam", "entr", "div"};
    for (unsigned n : n_list) result.columns.push_back("s" + std::to_string(n));
    result.rows.resize(r_grid.size());
    sweep.bifurcation.resize(r_grid.size());

    parallel_for(r_grid.size(), threads, [&](std::size_t g) {
        const double r = r_grid[g];
        const std::uint64_t point_master = derive_stream(seed, g);
        const TimeSeries orbit =
            gen_logistic(r, m, transient, noise_frac, derive_stream(point_master, 0));
        const RecurrencePlot rp = build_rp(orbit, epsilon);
        const RqaSummary summary = compute_rqa(rp);

        SweepRow& row = result.rows[g];
        row.parameter = r;
        row.values = {summary.rr, summary.det, summary.lam, summary.entr, summary.div};
        for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
            row.values.push_back(microstate_entropy(sample_microstates(
                rp, n_list[ni], n_samples, derive_stream(point_master, ni + 1))));
        }

        BifurcationSample& bif = sweep.bifurcation[g];
        bif.parameter = r;
        const std::size_t keep = std::min(bifurcation_samples, orbit.size());
        bif.orbit.assign(orbit.values.end() - static_cast<std::ptrdiff_t>(keep),
                         orbit.values.end());
    });

    result.provenance = base_provenance("logistic", "r", r_grid, seed, threads);
    result.provenance["noise_frac"] = noise_frac;
    result.provenance["m"] = m;
    result.provenance["transient"] = transient;
    result.provenance["n_bar"] = n_samples;
    result.provenance["epsilon"] = epsilon;
    result.provenance["n_list"] = std::vector<unsigned>(n_list.begin(), n_list.end());
    result.provenance["bifurcation_samples"] = bifurcation_samples;
    result.provenance["seed_scheme"] =
        "series=derive(derive(seed,point),0); sampler=derive(derive(seed,point),n_index+1)";
    return sweep;
}

LorenzSweepResult sweep_lorenz(std::span<const double> r_grid,
                               const LorenzParams& base, unsigned n, std::size_t m,
                               std::uint64_t n_samples, double epsilon,
                               std::uint64_t seed, std::size_t bifurcation_samples,
                               unsigned threads) {
    const std::array n_list{n};
    check_n_list(n_list);
    if (m < 2) {
        throw std::invalid_argument("sweep_lorenz: m must be at least 2");
    }

    LorenzSweepResult sweep;
    SweepResult& result = sweep.table;
    result.experiment = "lorenz";
    result.parameter_name = "r";
    result.columns = {"rr", "s" + std::to_string(n)};
    result.rows.resize(r_grid.size());
    sweep.bifurcation.resize(r_grid.size());

    parallel_for(r_grid.size(), threads, [&](std::size_t g) {
        LorenzParams params = base;
        params.r = r_grid[g];
        params.keep_steps = m * params.stride;
        const std::uint64_t point_master = derive_stream(seed, g);
        const LorenzTrace trace = integrate_lorenz(params, derive_stream(point_master, 0));
        const RecurrencePlot rp = build_rp(normalize(trace.series), epsilon);

        SweepRow& row = result.rows[g];
        row.parameter = params.r;
        row.values = {recurrence_rate(rp),
                      microstate_entropy(sample_microstates(
                          rp, n, n_samples, derive_stream(point_master, 1)))};

        BifurcationSample& bif = sweep.bifurcation[g];
        bif.parameter = params.r;
        const std::size_t keep = std::min(bifurcation_samples, trace.z_maxima.size());
        bif.orbit.assign(trace.z_maxima.end() - static_cast<std::ptrdiff_t>(keep),
                         trace.z_maxima.end());
    });

    result.provenance = base_provenance("lorenz", "r", r_grid, seed, threads);
    result.provenance["sigma"] = base.sigma;
    result.provenance["b"] = base.b;
    result.provenance["h"] = base.h;
    result.provenance["transient_steps"] = base.transient_steps;
    result.provenance["stride"] = base.stride;
    result.provenance["component"] = static_cast<int>(base.component);
    result.provenance["m"] = m;
    result.provenance["n_bar"] = n_samples;
    result.provenance["epsilon"] = epsilon;
    result.provenance["n"] = n;
    result.provenance["bifurcation_samples"] = bifurcation_samples;
    result.provenance["seed_scheme"] =
        "integrator=derive(derive(seed,point),0); sampler=derive(derive(seed,point),1)";
    return sweep;
}

double logistic_lyapunov(double r, std::size_t iterations, std::size_t transient,
                         std::uint64_t seed) {
    if (!(r > 0.0) || r > 4.0) {
        throw std::invalid_argument("logistic_lyapunov: r must lie in (0, 4]");
    }
    if (iterations == 0) {
        throw std::invalid_argument("logistic_lyapunov: need at least 1 iteration");
    }
    Xoshiro256pp rng(seed);
    double x = rng.uniform01();
    while (x <= 0.0) x = rng.uniform01();
    for (std::size_t i = 0; i < transient; ++i) {
        x = r * x * (1.0 - x);
    }
    double sum = 0.0;
    std::size_t used = 0;
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < iterations; ++i) {
        const double deriv = std::abs(r * (1.0 - 2.0 * x));
        if (deriv == 0.0) {
            ++skipped;
        } else {
            sum += std::log(deriv);
            ++used;
        }
        x = r * x * (1.0 - x);
    }
    if (skipped > 0) {
        std::cerr << "rqakit: warning: logistic_lyapunov skipped " << skipped
                  << " zero-derivative terms\n";
    }
    if (used == 0) {
        return -std::numeric_limits<double>::infinity();
    }
    return sum / static_cast<double>(used);
}

namespace {

std::vector<double> average_ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

} // namespace

double spearman_rho(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("spearman_rho: size mismatch");
    }
    if (a.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    const double ma = mean_of(ra);
    const double mb = mean_of(rb);
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - ma;
        const double db = rb[i] - mb;
        cov += da * db;
        va += da * da;
        vb += db * db;
    }
    if (va == 0.0 || vb == 0.0) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return cov / std::sqrt(va * vb);
}

namespace {

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::ofstream open_for_write(const std::filesystem::path& path, const char* who) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error(std::string(who) + ": cannot open " + path.string());
    }
    return out;
}

} // namespace

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path, "write_sweep_csv");
    out << result.parameter_name;
    for (const auto& c : result.columns) out << ',' << c;
    out << '\n';
    for (const auto& row : result.rows) {
        out << format_value(row.parameter);
        for (double v : row.values) out << ',' << format_value(v);
        out << '\n';
    }
}

void write_provenance(const SweepResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path, "write_provenance");
    nlohmann::json j = result.provenance;
    j["columns"] = result.columns;
    j["rows"] = result.rows.size();
    out << j.dump(2) << '\n';
}

void write_bifurcation_csv(std::span<const BifurcationSample> samples,
                           const std::filesystem::path& path) {
    auto out = open_for_write(path, "write_bifurcation_csv");
    out << "parameter,value\n";
    for (const auto& sample : samples) {
        for (double v : sample.orbit) {
            out << format_value(sample.parameter) << ',' << format_value(v) << '\n';
        }
    }
}

void write_plot_script(const SweepResult& result, const std::string& csv_name,
                       const std::filesystem::path& path) {
    auto out = open_for_write(path, "write_plot_script");
    out << "# gnuplot script for the '" << result.experiment << "' sweep\n"
        << "set datafile separator ','\n"
        << "set key outside\n"
        << "set grid\n"
        << "set xlabel '" << result.parameter_name << "'\n"
        << "plot ";
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
        if (c > 0) out << ", \\\n     ";
        out << "'" << csv_name << "' using 1:" << (c + 2) << " with lines title '"
            << result.columns[c] << "'";
    }
    out << '\n';
}

} // namespace rqakit
