// Python bindings for the core operations: signal generators, recurrence
// plots, classic quantifiers, microstate entropy and the sweep harness.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rqakit/experiments.hpp"
#include "rqakit/microstates.hpp"
#include "rqakit/recurrence.hpp"
#include "rqakit/rqa.hpp"
#include "rqakit/signals.hpp"

namespace py = pybind11;
using namespace rqakit;

namespace {

py::dict summary_dict(const RqaSummary& s) {
    py::dict d;
    d["epsilon"] = s.epsilon;
    d["rr"] = s.rr;
    d["det"] = s.det;
    d["lam"] = s.lam;
    d["entr"] = s.entr;
    d["div"] = s.div;
    d["l_min"] = s.l_min;
    d["v_min"] = s.v_min;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Recurrence microstate entropy toolkit";

    py::class_<TimeSeries>(m, "TimeSeries")
        .def(py::init<>())
        .def(py::init([](std::vector<double> values) {
                 TimeSeries s;
                 s.values = std::move(values);
                 return s;
             }),
             py::arg("values"))
        .def_readwrite("values", &TimeSeries::values)
        .def_readwrite("seed", &TimeSeries::seed)
        .def_readwrite("normalized", &TimeSeries::normalized)
        .def("__len__", &TimeSeries::size);

    py::enum_<LorenzComponent>(m, "LorenzComponent")
        .value("x", LorenzComponent::x)
        .value("y", LorenzComponent::y)
        .value("z", LorenzComponent::z);

    py::class_<LorenzParams>(m, "LorenzParams")
        .def(py::init<>())
        .def_readwrite("r", &LorenzParams::r)
        .def_readwrite("sigma", &LorenzParams::sigma)
        .def_readwrite("b", &LorenzParams::b)
        .def_readwrite("h", &LorenzParams::h)
        .def_readwrite("transient_steps", &LorenzParams::transient_steps)
        .def_readwrite("keep_steps", &LorenzParams::keep_steps)
        .def_readwrite("stride", &LorenzParams::stride)
        .def_readwrite("component", &LorenzParams::component);

    m.def("gen_white_noise", &gen_white_noise, py::arg("n"), py::arg("seed"));
    m.def("gen_sine_noise", &gen_sine_noise, py::arg("n"), py::arg("omega"),
          py::arg("p"), py::arg("seed"));
    m.def("gen_logistic", &gen_logistic, py::arg("r"), py::arg("n"),
          py::arg("transient") = 1000, py::arg("noise_frac") = 0.0,
          py::arg("seed") = 1);
    m.def("gen_lorenz", &gen_lorenz, py::arg("params"), py::arg("seed"));
    m.def("normalize", &normalize, py::arg("series"));
    m.def("ingest_csv", &ingest_csv, py::arg("path"), py::arg("column") = 0);

    py::class_<EmbeddingSpec>(m, "EmbeddingSpec")
        .def(py::init<>())
        .def_readwrite("dimension", &EmbeddingSpec::dimension)
        .def_readwrite("delay", &EmbeddingSpec::delay);

    py::class_<RecurrencePlot>(m, "RecurrencePlot")
        .def_property_readonly("size", &RecurrencePlot::size)
        .def_property_readonly("epsilon", &RecurrencePlot::epsilon)
        .def_property_readonly("norm", &RecurrencePlot::norm)
        .def("get", &RecurrencePlot::get, py::arg("i"), py::arg("j"))
        .def("ones", &RecurrencePlot::ones);

    m.def("build_rp", &build_rp, py::arg("series"), py::arg("epsilon"),
          py::arg("embedding") = EmbeddingSpec{});
    m.def("recurrence_rate", &recurrence_rate, py::arg("rp"));
    m.def("write_pbm", &write_pbm, py::arg("rp"), py::arg("path"));

    py::class_<WindowSpec>(m, "WindowSpec")
        .def(py::init<std::size_t, std::size_t>(), py::arg("window_size"),
             py::arg("stride"))
        .def_readwrite("window_size", &WindowSpec::window_size)
        .def_readwrite("stride", &WindowSpec::stride);
    m.def("windows", &windows, py::arg("series"), py::arg("spec"));

    m.def(
        "compute_rqa",
        [](const RecurrencePlot& rp, std::size_t l_min, std::size_t v_min) {
            return summary_dict(compute_rqa(rp, l_min, v_min));
        },
        py::arg("rp"), py::arg("l_min") = 2, py::arg("v_min") = 2);

    py::class_<MicrostateHistogram>(m, "MicrostateHistogram")
        .def_readonly("n", &MicrostateHistogram::n)
        .def_readonly("samples", &MicrostateHistogram::samples)
        .def_readonly("seed", &MicrostateHistogram::seed)
        .def_readonly("counts", &MicrostateHistogram::counts);

    m.def("encode_microstate", &encode_microstate, py::arg("rp"), py::arg("i"),
          py::arg("j"), py::arg("n"));
    m.def("sample_microstates", &sample_microstates, py::arg("rp"), py::arg("n"),
          py::arg("n_samples"), py::arg("seed"), py::arg("partitions") = 1,
          py::arg("threads") = 1);
    m.def("exhaustive_microstates", &exhaustive_microstates, py::arg("rp"),
          py::arg("n"));
    m.def("microstate_entropy", &microstate_entropy, py::arg("hist"));
    m.def("max_entropy", &max_entropy, py::arg("n"));
    m.def(
        "class_breakdown",
        [](const MicrostateHistogram& hist) { return class_breakdown(hist).mass; },
        py::arg("hist"));
    m.def("uniform_noise_rr", &uniform_noise_rr, py::arg("epsilon"));

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("parameter", &SweepRow::parameter)
        .def_readonly("values", &SweepRow::values);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("experiment", &SweepResult::experiment)
        .def_readonly("parameter_name", &SweepResult::parameter_name)
        .def_readonly("columns", &SweepResult::columns)
        .def_readonly("rows", &SweepResult::rows)
        .def("value", &SweepResult::value, py::arg("row"), py::arg("column"))
        .def("write_csv", [](const SweepResult& r, const std::filesystem::path& p) {
            write_sweep_csv(r, p);
        });

    py::class_<BifurcationSample>(m, "BifurcationSample")
        .def_readonly("parameter", &BifurcationSample::parameter)
        .def_readonly("orbit", &BifurcationSample::orbit);

    m.def(
        "sweep_epsilon_white_noise",
        [](std::vector<double> grid, std::vector<unsigned> n_list, std::size_t m_,
           std::uint64_t n_samples, std::uint64_t seed, unsigned num_seeds,
           unsigned threads) {
            return sweep_epsilon_white_noise(grid, n_list, m_, n_samples, seed,
                                             num_seeds, threads);
        },
        py::arg("eps_grid"), py::arg("n_list"), py::arg("m"), py::arg("n_samples"),
        py::arg("seed"), py::arg("num_seeds") = 1, py::arg("threads") = 1);

    m.def(
        "sweep_sine_noise",
        [](std::vector<double> grid, std::vector<unsigned> n_list, double omega,
           std::size_t m_, std::uint64_t n_samples, double epsilon,
           std::uint64_t seed, unsigned num_seeds, unsigned threads) {
            return sweep_sine_noise(grid, n_list, omega, m_, n_samples, epsilon, seed,
                                    num_seeds, threads);
        },
        py::arg("p_grid"), py::arg("n_list"), py::arg("omega"), py::arg("m"),
        py::arg("n_samples"), py::arg("epsilon"), py::arg("seed"),
        py::arg("num_seeds") = 1, py::arg("threads") = 1);

    m.def(
        "sweep_logistic",
        [](std::vector<double> grid, std::vector<unsigned> n_list, double noise_frac,
           std::size_t m_, std::size_t transient, std::uint64_t n_samples,
           double epsilon, std::uint64_t seed, std::size_t bifurcation_samples,
           unsigned threads) {
            auto sweep = sweep_logistic(grid, n_list, noise_frac, m_, transient,
                                        n_samples, epsilon, seed,
                                        bifurcation_samples, threads);
            return py::make_tuple(sweep.table, sweep.bifurcation);
        },
        py::arg("r_grid"), py::arg("n_list"), py::arg("noise_frac"), py::arg("m"),
        py::arg("transient"), py::arg("n_samples"), py::arg("epsilon"),
        py::arg("seed"), py::arg("bifurcation_samples") = 100,
        py::arg("threads") = 1);

    m.def(
        "sweep_lorenz",
        [](std::vector<double> grid, const LorenzParams& base, unsigned n,
           std::size_t m_, std::uint64_t n_samples, double epsilon,
           std::uint64_t seed, std::size_t bifurcation_samples, unsigned threads) {
            auto sweep = sweep_lorenz(grid, base, n, m_, n_samples, epsilon, seed,
                                      bifurcation_samples, threads);
            return py::make_tuple(sweep.table, sweep.bifurcation);
        },
        py::arg("r_grid"), py::arg("base"), py::arg("n"), py::arg("m"),
        py::arg("n_samples"), py::arg("epsilon"), py::arg("seed"),
        py::arg("bifurcation_samples") = 100, py::arg("threads") = 1);

    m.def("logistic_lyapunov", &logistic_lyapunov, py::arg("r"),
          py::arg("iterations") = 20000, py::arg("transient") = 1000,
          py::arg("seed") = 1);
    m.def(
        "spearman_rho",
        [](std::vector<double> a, std::vector<double> b) {
            return spearman_rho(a, b);
        },
        py::arg("a"), py::arg("b"));

    m.def("default_epsilon_grid", &default_epsilon_grid);
    m.def("default_p_grid", &default_p_grid);
    m.def("default_logistic_r_grid", &default_logistic_r_grid);
    m.def("default_lorenz_r_grid", &default_lorenz_r_grid);
}
