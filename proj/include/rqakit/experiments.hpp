#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rqakit/microstates.hpp"
#include "rqakit/rqa.hpp"
#include "rqakit/signals.hpp"

namespace rqakit {

struct SweepRow {
    double parameter = 0.0;
    std::vector<double> values;
};

// One experiment's table: a named parameter column plus a fixed set of
// value columns, rows sorted by parameter. `provenance` carries seeds,
// sizes, grids and a timestamp; the CSV itself stays timestamp-free so
// identical configs reproduce byte-identical files.
struct SweepResult {
    std::string experiment;
    std::string parameter_name;
    std::vector<std::string> columns;
    std::vector<SweepRow> rows;
    nlohmann::json provenance;

    // Column index by name; throws std::out_of_range on unknown names.
    std::size_t column_index(const std::string& name) const;
    double value(std::size_t row, const std::string& column) const;
};

// Post-transient orbit samples at one parameter value (bifurcation
// diagram raw material).
struct BifurcationSample {
    double parameter = 0.0;
    std::vector<double> orbit;
};

// Default grids for the bundled experiments.
std::vector<double> default_epsilon_grid();   // 0.02 .. 0.60 step 0.02
std::vector<double> default_p_grid();         // 0.00 .. 2.00 step 0.05
std::vector<double> default_logistic_r_grid(); // 2.5 .. 4.0 step 0.002
std::vector<double> default_lorenz_r_grid();  // 15 .. 50 step 0.5

// Runs body(0..count-1) on up to `threads` workers. Bodies must write
// only their own slot; execution order carries no state.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// Entropy and recurrence rate of white noise versus the threshold.
// One series per repeat is shared across the grid; columns are rr,
// rr_analytic and s<n> per requested side (plus _sd columns when
// num_seeds > 1).
SweepResult sweep_epsilon_white_noise(std::span<const double> eps_grid,
                                      std::span<const unsigned> n_list,
                                      std::size_t m, std::uint64_t n_samples,
                                      std::uint64_t seed, unsigned num_seeds = 1,
                                      unsigned threads = 1);

// Entropy of sin(omega t) + p u_t versus the noise weight p.
SweepResult sweep_sine_noise(std::span<const double> p_grid,
                             std::span<const unsigned> n_list, double omega,
                             std::size_t m, std::uint64_t n_samples, double epsilon,
                             std::uint64_t seed, unsigned num_seeds = 1,
                             unsigned threads = 1);

struct LogisticSweepResult {
    SweepResult table;
    std::vector<BifurcationSample> bifurcation;
};

// Classic quantifiers plus microstate entropy across the logistic
// parameter r; columns rr, det, lam, entr, div then s<n> per side.
// Bifurcation samples are the trailing `bifurcation_samples` orbit
// values at each r.
LogisticSweepResult sweep_logistic(std::span<const double> r_grid,
                                   std::span<const unsigned> n_list,
                                   double noise_frac, std::size_t m,
                                   std::size_t transient, std::uint64_t n_samples,
                                   double epsilon, std::uint64_t seed,
                                   std::size_t bifurcation_samples = 100,
                                   unsigned threads = 1);

struct LorenzSweepResult {
    SweepResult table;
    std::vector<BifurcationSample> bifurcation;
};

// Microstate entropy across the Lorenz Rayleigh number; bifurcation
// samples are trailing local maxima of z(t).
LorenzSweepResult sweep_lorenz(std::span<const double> r_grid,
                               const LorenzParams& base, unsigned n, std::size_t m,
                               std::uint64_t n_samples, double epsilon,
                               std::uint64_t seed,
                               std::size_t bifurcation_samples = 100,
                               unsigned threads = 1);

// Lyapunov exponent of the logistic map from the orbit average of
// ln|r(1 - 2x)|. Terms with derivative exactly zero are skipped with a
// warning; -infinity if every term was skipped.
double logistic_lyapunov(double r, std::size_t iterations, std::size_t transient,
                         std::uint64_t seed);

// Spearman rank correlation with average ranks on ties. NaN when either
// side is constant.
double spearman_rho(std::span<const double> a, std::span<const double> b);

void write_sweep_csv(const SweepResult& result, const std::filesystem::path& path);
void write_provenance(const SweepResult& result, const std::filesystem::path& path);
void write_bifurcation_csv(std::span<const BifurcationSample> samples,
                           const std::filesystem::path& path);

// gnuplot script plotting every value column against the parameter,
// referencing the CSV by the given (relative) name.
void write_plot_script(const SweepResult& result, const std::string& csv_name,
                       const std::filesystem::path& path);

} // namespace rqakit
