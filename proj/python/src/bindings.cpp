#include "eqsim/comms.hpp"
#include "eqsim/config.hpp"
#include "eqsim/equalizer.hpp"
#include "eqsim/errors.hpp"
#include "eqsim/filters.hpp"
#include "eqsim/rng.hpp"
#include "eqsim/validate.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace eqsim;

PYBIND11_MODULE(_core, m) {
    m.doc() = "adaptive-filter channel equalization experiments (C++ core)";

    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("stream_id"))
        .def_property_readonly("seed", &RngStream::seed)
        .def_property_readonly("stream_id", &RngStream::stream_id)
        .def("next_u64", &RngStream::next_u64)
        .def("next_unit", &RngStream::next_unit);

    m.def("gaussian_complex", &gaussian_complex, py::arg("rng"), py::arg("variance"));

    py::enum_<Variant>(m, "Variant")
        .value("lms", Variant::lms)
        .value("nlms", Variant::nlms)
        .value("apa", Variant::apa)
        .value("rapa", Variant::rapa)
        .value("pra", Variant::pra)
        .value("vss_nlms", Variant::vss_nlms)
        .value("vss_apa", Variant::vss_apa)
        .value("vsspr", Variant::vsspr);

    py::enum_<PsiMode::Kind>(m, "PsiKind")
        .value("fixed", PsiMode::Kind::fixed)
        .value("from_snr", PsiMode::Kind::from_snr)
        .value("adaptive", PsiMode::Kind::adaptive);

    py::class_<PsiMode>(m, "PsiMode")
        .def(py::init<>())
        .def_readwrite("kind", &PsiMode::kind)
        .def_readwrite("value", &PsiMode::value)
        .def_readwrite("snr_linear", &PsiMode::snr_linear);

    py::class_<AlgorithmSpec>(m, "AlgorithmSpec")
        .def(py::init<>())
        .def_readwrite("variant", &AlgorithmSpec::variant)
        .def_readwrite("label", &AlgorithmSpec::label)
        .def_readwrite("projection_order", &AlgorithmSpec::projection_order)
        .def_readwrite("mu", &AlgorithmSpec::mu)
        .def_readwrite("mu_max", &AlgorithmSpec::mu_max)
        .def_readwrite("eps", &AlgorithmSpec::eps)
        .def_readwrite("beta", &AlgorithmSpec::beta)
        .def_readwrite("alpha", &AlgorithmSpec::alpha)
        .def_readwrite("psi", &AlgorithmSpec::psi)
        .def("validate", &AlgorithmSpec::validate)
        .def_property_readonly("display_name", &AlgorithmSpec::display_name);

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("output", &StepRecord::output)
        .def_readonly("prior_error", &StepRecord::prior_error)
        .def_readonly("mu_used", &StepRecord::mu_used)
        .def_readonly("updated", &StepRecord::updated);

    py::class_<FilterState>(m, "FilterState")
        .def(py::init<AlgorithmSpec, std::size_t, double>(), py::arg("spec"),
             py::arg("num_taps"), py::arg("noise_variance") = 0.0)
        .def("predict", &FilterState::predict, py::arg("x_new"))
        .def("step", &FilterState::step, py::arg("x_new"), py::arg("d_new"))
        .def("set_weights", &FilterState::set_weights, py::arg("weights"))
        .def_property_readonly("weights", &FilterState::weights)
        .def_property_readonly("psi", &FilterState::psi)
        .def_property_readonly("iteration", &FilterState::iteration);

    py::class_<Constellation>(m, "Constellation")
        .def_readonly("order", &Constellation::order)
        .def_readonly("side", &Constellation::side)
        .def_readonly("scale", &Constellation::scale)
        .def_readonly("points", &Constellation::points);

    m.def("make_constellation", &make_constellation, py::arg("order"));
    m.def("draw_symbols", &draw_symbols, py::arg("constellation"), py::arg("n"), py::arg("rng"));
    m.def("slice_symbol", &slice, py::arg("z"), py::arg("constellation"));
    m.def("slice_index", &slice_index, py::arg("z"), py::arg("constellation"));

    py::class_<ChannelModel>(m, "ChannelModel")
        .def(py::init<>())
        .def(py::init([](CVec taps) { return ChannelModel{std::move(taps)}; }), py::arg("taps"))
        .def_readwrite("taps", &ChannelModel::taps);

    m.def("apply_channel", &apply_channel, py::arg("symbols"), py::arg("channel"));
    m.def(
        "add_awgn",
        [](const CVec& sig, double snr_db, RngStream& rng) {
            AwgnResult r = add_awgn(sig, snr_db, rng);
            return py::make_tuple(r.signal, r.sigma_v2);
        },
        py::arg("signal"), py::arg("snr_db"), py::arg("rng"));
    m.def("symbol_error_rate", &symbol_error_rate, py::arg("decisions"), py::arg("truth"),
          py::arg("skip") = 0);

    py::class_<ScatterSpec>(m, "ScatterSpec")
        .def(py::init<>())
        .def_readwrite("algorithm", &ScatterSpec::algorithm)
        .def_readwrite("begin", &ScatterSpec::begin)
        .def_readwrite("end", &ScatterSpec::end);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("channel", &ExperimentConfig::channel)
        .def_readwrite("snr_db", &ExperimentConfig::snr_db)
        .def_readwrite("num_taps", &ExperimentConfig::num_taps)
        .def_readwrite("delay", &ExperimentConfig::delay)
        .def_readwrite("train_symbols", &ExperimentConfig::train_symbols)
        .def_readwrite("dd_symbols", &ExperimentConfig::dd_symbols)
        .def_readwrite("train_constellation", &ExperimentConfig::train_constellation)
        .def_readwrite("dd_constellation", &ExperimentConfig::dd_constellation)
        .def_readwrite("realizations", &ExperimentConfig::realizations)
        .def_readwrite("base_seed", &ExperimentConfig::base_seed)
        .def_readwrite("snr_sweep", &ExperimentConfig::snr_sweep)
        .def_readwrite("algorithms", &ExperimentConfig::algorithms)
        .def_readwrite("scatter", &ExperimentConfig::scatter)
        .def("validate", &ExperimentConfig::validate)
        .def("to_json", [](const ExperimentConfig& c) { return config_to_json(c); });

    m.def("default_config", &default_config);
    m.def("parse_config_text", &parse_config_text, py::arg("text"));
    m.def("preset_names", &preset_names);
    m.def("preset_text", &preset_text, py::arg("name"));

    py::class_<RealizationTrace>(m, "RealizationTrace")
        .def_readonly("sq_error", &RealizationTrace::sq_error)
        .def_readonly("mu_trace", &RealizationTrace::mu_trace)
        .def_readonly("decisions", &RealizationTrace::decisions)
        .def_readonly("truth", &RealizationTrace::truth)
        .def_readonly("received", &RealizationTrace::received)
        .def_readonly("outputs", &RealizationTrace::outputs);

    m.def(
        "run_equalizer_realization",
        [](const ExperimentConfig& cfg, const AlgorithmSpec& spec, std::uint64_t seed,
           std::uint64_t stream) {
            return run_equalizer_realization(cfg, spec, RngStream(seed, stream));
        },
        py::arg("config"), py::arg("spec"), py::arg("seed"), py::arg("stream") = 0);

    py::class_<LearningResult>(m, "LearningResult")
        .def_readonly("labels", &LearningResult::labels)
        .def_readonly("mse_db", &LearningResult::mse_db)
        .def_readonly("tail_mean_sq", &LearningResult::tail_mean_sq)
        .def_readonly("mu_low", &LearningResult::mu_low)
        .def_readonly("mu_high", &LearningResult::mu_high)
        .def_readonly("tail_len", &LearningResult::tail_len);

    m.def("run_learning_experiment", &run_learning_experiment, py::arg("config"),
          py::arg("jobs") = 1, py::arg("tail_len") = 500,
          py::call_guard<py::gil_scoped_release>());

    py::class_<SerSweepResult>(m, "SerSweepResult")
        .def_readonly("labels", &SerSweepResult::labels)
        .def_readonly("snr_db", &SerSweepResult::snr_db)
        .def_readonly("ser", &SerSweepResult::ser)
        .def_readonly("per_realization", &SerSweepResult::per_realization)
        .def_readonly("mu_low", &SerSweepResult::mu_low)
        .def_readonly("mu_high", &SerSweepResult::mu_high);

    m.def("run_ser_sweep", &run_ser_sweep, py::arg("config"), py::arg("snr_list"),
          py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());

    py::class_<SysIdScenario>(m, "SysIdScenario")
        .def(py::init<>())
        .def_readwrite("h_true", &SysIdScenario::h_true)
        .def_readwrite("input_variance", &SysIdScenario::input_variance)
        .def_readwrite("noise_variance", &SysIdScenario::noise_variance);

    m.def(
        "run_sysid_validation",
        [](const SysIdScenario& sc, const AlgorithmSpec& spec, std::size_t n, std::uint64_t seed,
           std::uint64_t stream, const CVec& initial_weights) {
            return run_sysid_validation(sc, spec, n, RngStream(seed, stream), initial_weights);
        },
        py::arg("scenario"), py::arg("spec"), py::arg("n"), py::arg("seed"),
        py::arg("stream") = 0, py::arg("initial_weights") = CVec{});

    m.def("run_validation_suite", [](std::uint64_t seed) {
        py::list out;
        for (const CheckResult& r : run_validation_suite(seed))
            out.append(py::make_tuple(r.group, r.pass, r.detail));
        return out;
    });

#ifdef EQSIM_VERSION
    m.attr("__version__") = EQSIM_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
