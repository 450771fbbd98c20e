// Command-line front end: signal generation, recurrence plots, classic
// recurrence quantifiers, microstate entropy and the experiment sweeps.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid arguments/config.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqakit/experiments.hpp"
#include "rqakit/microstates.hpp"
#include "rqakit/recurrence.hpp"
#include "rqakit/rqa.hpp"
#include "rqakit/signals.hpp"

namespace fs = std::filesystem;
using namespace rqakit;

namespace {

struct GenOptions {
    std::string signal;
    std::size_t length = 1000;
    std::uint64_t seed = 1;
    std::string output;
    bool normalize_output = false;
    // sine
    double omega = 0.033;
    double p = 0.0;
    // logistic
    double r = 4.0;
    std::size_t transient = 1000;
    double noise_frac = 0.0;
    // lorenz
    LorenzParams lorenz;
};

struct RpOptions {
    std::string input;
    std::size_t column = 0;
    double epsilon = 0.14;
    std::size_t dimension = 1;
    std::size_t delay = 1;
    std::string pbm_path;
};

struct RqaOptions {
    std::string input;
    std::size_t column = 0;
    double epsilon = 0.14;
    std::size_t l_min = 2;
    std::size_t v_min = 2;
    std::size_t dimension = 1;
    std::size_t delay = 1;
    std::size_t window = 0; // 0 = whole series
    std::size_t stride = 0; // 0 = window size
    std::string output;
};

struct EntropyOptions {
    std::string input;
    std::size_t column = 0;
    double epsilon = 0.14;
    unsigned n = 4;
    std::uint64_t samples = 10000; // 0 = exhaustive
    std::uint64_t seed = 1;
    unsigned partitions = 1;
    unsigned threads = 1;
    std::string output;
    std::string histogram_path;
};

struct SweepOptions {
    std::string experiment;
    std::uint64_t seed = 1;
    std::string out_dir = "runs";
    bool force = false;
    unsigned threads = 1;
    std::size_t m = 1000;
    std::uint64_t samples = 0; // 0 = per-experiment default
    double epsilon = 0.14;
    std::vector<unsigned> n_list; // empty = per-experiment default
    double grid_min = 0.0;
    double grid_max = 0.0;
    double grid_step = 0.0; // 0 = default grid
    unsigned num_seeds = 1;
    double noise_frac = 0.0;
    double omega = 0.033;
    std::size_t transient = 1000;
    std::size_t bifurcation_samples = 100;
    bool plot_script = false;
    LorenzParams lorenz;
};

void note_artifact(const fs::path& path, const std::string& what) {
    std::cout << "wrote " << path.string() << " (" << what << ")\n";
}

void write_series_csv(const TimeSeries& series, const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string());
    }
    char buf[64];
    for (double v : series.values) {
        std::snprintf(buf, sizeof buf, "%.17g\n", v);
        out << buf;
    }
}

int run_gen(const GenOptions& opt) {
    TimeSeries series;
    if (opt.signal == "white") {
        series = gen_white_noise(opt.length, opt.seed);
    } else if (opt.signal == "sine") {
        series = gen_sine_noise(opt.length, opt.omega, opt.p, opt.seed);
    } else if (opt.signal == "logistic") {
        series = gen_logistic(opt.r, opt.length, opt.transient, opt.noise_frac, opt.seed);
    } else {
        LorenzParams params = opt.lorenz;
        series = gen_lorenz(params, opt.seed);
    }
    if (opt.normalize_output) {
        series = normalize(series);
    }
    write_series_csv(series, opt.output);
    note_artifact(opt.output, std::to_string(series.size()) + " samples");
    return 0;
}

int run_rp(const RpOptions& opt) {
    const TimeSeries series = ingest_csv(opt.input, opt.column);
    const RecurrencePlot rp =
        build_rp(series, opt.epsilon, {opt.dimension, opt.delay});
    std::cout << "rp: K=" << rp.size() << " epsilon=" << rp.epsilon()
              << " rr=" << recurrence_rate(rp) << '\n';
    if (!opt.pbm_path.empty()) {
        write_pbm(rp, opt.pbm_path);
        note_artifact(opt.pbm_path, std::to_string(rp.size()) + "x" +
                                        std::to_string(rp.size()) + " bitmap");
    }
    return 0;
}

int run_rqa(const RqaOptions& opt) {
    const TimeSeries series = ingest_csv(opt.input, opt.column);
    std::vector<TimeSeries> pieces;
    if (opt.window == 0) {
        pieces.push_back(series);
    } else {
        pieces = windows(series, {opt.window, opt.stride == 0 ? opt.window : opt.stride});
    }
    std::string body = rqa_csv_header() + "\n";
    for (const auto& piece : pieces) {
        const RecurrencePlot rp =
            build_rp(piece, opt.epsilon, {opt.dimension, opt.delay});
        body += to_csv_row(compute_rqa(rp, opt.l_min, opt.v_min)) + "\n";
    }
    if (opt.output.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + opt.output);
        out << body;
        note_artifact(opt.output, std::to_string(pieces.size()) + " row(s)");
    }
    return 0;
}

int run_entropy(const EntropyOptions& opt) {
    const TimeSeries series = ingest_csv(opt.input, opt.column);
    const RecurrencePlot rp = build_rp(series, opt.epsilon);
    const MicrostateHistogram hist =
        opt.samples == 0
            ? exhaustive_microstates(rp, opt.n)
            : sample_microstates(rp, opt.n, opt.samples, opt.seed, opt.partitions,
                                 opt.threads);
    const nlohmann::json report = entropy_report(hist);
    if (opt.output.empty()) {
        std::cout << report.dump(2) << '\n';
    } else {
        std::ofstream out(opt.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + opt.output);
        out << report.dump(2) << '\n';
        note_artifact(opt.output, "entropy report");
    }
    if (!opt.histogram_path.empty()) {
        write_histogram_csv(hist, opt.histogram_path);
        note_artifact(opt.histogram_path,
                      std::to_string(hist.counts.size()) + " occupied codes");
    }
    std::cout << "entropy: S=" << microstate_entropy(hist)
              << " s_max=" << max_entropy(opt.n) << " n_bar=" << hist.samples << '\n';
    return 0;
}

std::vector<double> sweep_grid(const SweepOptions& opt) {
    if (opt.grid_step > 0.0) {
        std::vector<double> grid;
        for (std::size_t k = 0;; ++k) {
            const double v =
                std::round((opt.grid_min + static_cast<double>(k) * opt.grid_step) * 1e9) /
                1e9;
            if (v > opt.grid_max + 1e-12) break;
            grid.push_back(v);
        }
        if (grid.empty()) {
            throw std::runtime_error("sweep: empty parameter grid");
        }
        return grid;
    }
    if (opt.experiment == "white_noise") return default_epsilon_grid();
    if (opt.experiment == "sine") return default_p_grid();
    if (opt.experiment == "logistic") return default_logistic_r_grid();
    return default_lorenz_r_grid();
}

int run_sweep(const SweepOptions& opt) {
    const std::vector<double> grid = sweep_grid(opt);
    std::vector<unsigned> n_list = opt.n_list;
    if (n_list.empty()) {
        n_list = opt.experiment == "lorenz" ? std::vector<unsigned>{4}
                                            : std::vector<unsigned>{2, 3, 4};
    }
    const std::uint64_t n_bar =
        opt.samples != 0 ? opt.samples : (opt.experiment == "lorenz" ? 100000 : 10000);

    const fs::path run_dir = fs::path(opt.out_dir) /
                             (opt.experiment + "-seed" + std::to_string(opt.seed));
    if (fs::exists(run_dir) && !opt.force) {
        throw std::runtime_error("run directory " + run_dir.string() +
                                 " already exists (use --force to overwrite)");
    }
    fs::create_directories(run_dir);

    SweepResult table;
    std::vector<BifurcationSample> bifurcation;
    if (opt.experiment == "white_noise") {
        table = sweep_epsilon_white_noise(grid, n_list, opt.m, n_bar, opt.seed,
                                          opt.num_seeds, opt.threads);
    } else if (opt.experiment == "sine") {
        table = sweep_sine_noise(grid, n_list, opt.omega, opt.m, n_bar, opt.epsilon,
                                 opt.seed, opt.num_seeds, opt.threads);
    } else if (opt.experiment == "logistic") {
        auto sweep = sweep_logistic(grid, n_list, opt.noise_frac, opt.m, opt.transient,
                                    n_bar, opt.epsilon, opt.seed,
                                    opt.bifurcation_samples, opt.threads);
        table = std::move(sweep.table);
        bifurcation = std::move(sweep.bifurcation);
    } else {
        if (n_list.size() != 1) {
            throw std::runtime_error("sweep lorenz: exactly one microstate side expected");
        }
        auto sweep = sweep_lorenz(grid, opt.lorenz, n_list[0], opt.m, n_bar, opt.epsilon,
                                  opt.seed, opt.bifurcation_samples, opt.threads);
        table = std::move(sweep.table);
        bifurcation = std::move(sweep.bifurcation);
    }

    const fs::path csv_path = run_dir / "sweep.csv";
    write_sweep_csv(table, csv_path);
    note_artifact(csv_path, std::to_string(table.rows.size()) + " rows");

    const fs::path prov_path = run_dir / "provenance.json";
    write_provenance(table, prov_path);
    note_artifact(prov_path, "provenance");

    if (!bifurcation.empty()) {
        const fs::path bif_path = run_dir / "bifurcation.csv";
        write_bifurcation_csv(bifurcation, bif_path);
        note_artifact(bif_path, "bifurcation samples");
    }
    if (opt.plot_script) {
        const fs::path plot_path = run_dir / "plot.gp";
        write_plot_script(table, "sweep.csv", plot_path);
        note_artifact(plot_path, "gnuplot script");
    }
    return 0;
}

void add_lorenz_options(CLI::App* cmd, LorenzParams& params) {
    cmd->add_option("--sigma", params.sigma, "Lorenz Prandtl number")
        ->capture_default_str();
    cmd->add_option("--b", params.b, "Lorenz geometric factor")->capture_default_str();
    cmd->add_option("--rayleigh", params.r, "Lorenz Rayleigh number")
        ->capture_default_str();
    cmd->add_option("--dt", params.h, "integration step")->capture_default_str();
    cmd->add_option("--transient-steps", params.transient_steps,
                    "integration steps discarded before sampling")
        ->capture_default_str();
    cmd->add_option("--keep-steps", params.keep_steps, "integration steps kept")
        ->capture_default_str();
    cmd->add_option("--stride", params.stride, "decimation stride")
        ->capture_default_str();
    std::map<std::string, LorenzComponent> components{{"x", LorenzComponent::x},
                                                      {"y", LorenzComponent::y},
                                                      {"z", LorenzComponent::z}};
    cmd->add_option("--component", params.component, "recorded component")
        ->transform(CLI::CheckedTransformer(components, CLI::ignore_case))
        ->default_str("x");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"recurrence microstate entropy toolkit"};
    app.set_version_flag("--version", "rqakit 0.1.0");
    app.set_config("--config", "", "read options from an INI-style file "
                                   "(sections per subcommand; flags override)");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(0, 1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a test signal");
    gen_cmd->configurable();
    gen_cmd->add_option("--signal", gen.signal, "signal family")
        ->required()
        ->check(CLI::IsMember({"white", "sine", "logistic", "lorenz"}));
    gen_cmd->add_option("-M,--length", gen.length, "number of samples")
        ->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "generator seed")->capture_default_str();
    gen_cmd->add_option("-o,--output", gen.output, "output CSV (one value per line)")
        ->required();
    gen_cmd->add_flag("--normalize", gen.normalize_output,
                      "min-max rescale to [0,1] before writing");
    gen_cmd->add_option("--omega", gen.omega, "sine angular frequency")
        ->capture_default_str();
    gen_cmd->add_option("--p", gen.p, "sine noise weight")->capture_default_str();
    gen_cmd->add_option("--r", gen.r, "logistic parameter")->capture_default_str();
    gen_cmd->add_option("--transient", gen.transient, "discarded leading iterations")
        ->capture_default_str();
    gen_cmd->add_option("--noise-frac", gen.noise_frac,
                        "logistic additive noise amplitude")
        ->capture_default_str();
    add_lorenz_options(gen_cmd, gen.lorenz);

    RpOptions rp;
    auto* rp_cmd = app.add_subcommand("rp", "build a recurrence plot");
    rp_cmd->configurable();
    rp_cmd->add_option("--input", rp.input, "input CSV")->required()
        ->check(CLI::ExistingFile);
    rp_cmd->add_option("--column", rp.column, "input column index")
        ->capture_default_str();
    rp_cmd->add_option("--epsilon", rp.epsilon, "recurrence threshold in (0,1]")
        ->capture_default_str();
    rp_cmd->add_option("--dimension", rp.dimension, "embedding dimension")
        ->capture_default_str();
    rp_cmd->add_option("--delay", rp.delay, "embedding delay")->capture_default_str();
    rp_cmd->add_option("--export-pbm", rp.pbm_path, "write the plot as a P1 bitmap");

    RqaOptions rqa;
    auto* rqa_cmd = app.add_subcommand("rqa", "classic recurrence quantifiers");
    rqa_cmd->configurable();
    rqa_cmd->add_option("--input", rqa.input, "input CSV")->required()
        ->check(CLI::ExistingFile);
    rqa_cmd->add_option("--column", rqa.column, "input column index")
        ->capture_default_str();
    rqa_cmd->add_option("--epsilon", rqa.epsilon, "recurrence threshold")
        ->capture_default_str();
    rqa_cmd->add_option("--lmin", rqa.l_min, "minimal diagonal line length")
        ->capture_default_str();
    rqa_cmd->add_option("--vmin", rqa.v_min, "minimal vertical line length")
        ->capture_default_str();
    rqa_cmd->add_option("--dimension", rqa.dimension, "embedding dimension")
        ->capture_default_str();
    rqa_cmd->add_option("--delay", rqa.delay, "embedding delay")->capture_default_str();
    rqa_cmd->add_option("--window", rqa.window,
                        "window size (0 = analyze the whole series)")
        ->capture_default_str();
    rqa_cmd->add_option("--stride", rqa.stride, "window stride (0 = window size)")
        ->capture_default_str();
    rqa_cmd->add_option("-o,--output", rqa.output, "output CSV (default stdout)");

    EntropyOptions ent;
    auto* ent_cmd = app.add_subcommand("entropy", "microstate entropy of a series");
    ent_cmd->configurable();
    ent_cmd->add_option("--input", ent.input, "input CSV")->required()
        ->check(CLI::ExistingFile);
    ent_cmd->add_option("--column", ent.column, "input column index")
        ->capture_default_str();
    ent_cmd->add_option("--epsilon", ent.epsilon, "recurrence threshold")
        ->capture_default_str();
    ent_cmd->add_option("--n", ent.n, "microstate side length (2..5)")
        ->capture_default_str();
    ent_cmd->add_option("--samples", ent.samples,
                        "number of sampled blocks (0 = exhaustive)")
        ->capture_default_str();
    ent_cmd->add_option("--seed", ent.seed, "sampler seed")->capture_default_str();
    ent_cmd->add_option("--partitions", ent.partitions,
                        "sampler sub-streams (part of the determinism contract)")
        ->capture_default_str();
    ent_cmd->add_option("--threads", ent.threads, "sampler worker threads")
        ->envname("RQAKIT_THREADS")
        ->capture_default_str();
    ent_cmd->add_option("-o,--output", ent.output, "entropy report JSON (default stdout)");
    ent_cmd->add_option("--histogram", ent.histogram_path,
                        "also write the code histogram CSV");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter sweep experiment");
    sweep_cmd->configurable();
    sweep_cmd->add_option("--experiment", sweep.experiment, "experiment id")
        ->required()
        ->check(CLI::IsMember({"white_noise", "sine", "logistic", "lorenz"}));
    sweep_cmd->add_option("--seed", sweep.seed, "master seed")->capture_default_str();
    sweep_cmd->add_option("--out-dir", sweep.out_dir, "output root directory")
        ->envname("RQAKIT_OUT_DIR")
        ->capture_default_str();
    sweep_cmd->add_flag("--force", sweep.force, "overwrite an existing run directory");
    sweep_cmd->add_option("--threads", sweep.threads, "grid worker threads")
        ->envname("RQAKIT_THREADS")
        ->capture_default_str();
    sweep_cmd->add_option("--m", sweep.m, "series length per grid point")
        ->capture_default_str();
    sweep_cmd->add_option("--samples", sweep.samples,
                          "microstate samples per point (0 = experiment default)")
        ->capture_default_str();
    sweep_cmd->add_option("--epsilon", sweep.epsilon, "recurrence threshold")
        ->capture_default_str();
    sweep_cmd->add_option("--n-list", sweep.n_list,
                          "microstate sides (default 2 3 4; lorenz: 4)");
    sweep_cmd->add_option("--grid-min", sweep.grid_min, "sweep grid start");
    sweep_cmd->add_option("--grid-max", sweep.grid_max, "sweep grid end");
    sweep_cmd->add_option("--grid-step", sweep.grid_step,
                          "sweep grid step (0 = experiment default grid)");
    sweep_cmd->add_option("--num-seeds", sweep.num_seeds,
                          "averaged repeats (white_noise/sine)")
        ->capture_default_str();
    sweep_cmd->add_option("--noise", sweep.noise_frac, "logistic noise amplitude")
        ->capture_default_str();
    sweep_cmd->add_option("--omega", sweep.omega, "sine angular frequency")
        ->capture_default_str();
    sweep_cmd->add_option("--transient", sweep.transient,
                          "logistic transient iterations")
        ->capture_default_str();
    sweep_cmd->add_option("--bifurcation-samples", sweep.bifurcation_samples,
                          "orbit samples kept per grid point")
        ->capture_default_str();
    sweep_cmd->add_flag("--plot-script", sweep.plot_script,
                        "emit a gnuplot script next to the CSV");
    add_lorenz_options(sweep_cmd, sweep.lorenz);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "rqakit: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(gen_cmd)) return run_gen(gen);
        if (app.got_subcommand(rp_cmd)) return run_rp(rp);
        if (app.got_subcommand(rqa_cmd)) return run_rqa(rqa);
        if (app.got_subcommand(ent_cmd)) return run_entropy(ent);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(sweep);
        std::cout << app.help();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "rqakit: error: " << e.what() << '\n';
        return 1;
    }
}
