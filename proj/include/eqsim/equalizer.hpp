#ifndef EQSIM_EQUALIZER_HPP
#define EQSIM_EQUALIZER_HPP

#include "eqsim/comms.hpp"
#include "eqsim/filters.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eqsim {

struct ScatterSpec {
    std::string algorithm = "vsspr";
    std::size_t begin = 4500;
    std::size_t end = 5500;
};

struct ExperimentConfig {
    ChannelModel channel{{Cplx{0.5, 0.0}, Cplx{1.2, 0.0}, Cplx{1.5, 0.0}, Cplx{-1.0, 0.0}}};
    double snr_db = 30.0;
    std::size_t num_taps = 35;   // equalizer length M
    std::size_t delay = 15;      // reference delay
    std::size_t train_symbols = 500;
    std::size_t dd_symbols = 5000;
    std::size_t train_constellation = 4;
    std::size_t dd_constellation = 256;
    std::size_t realizations = 300;
    std::uint64_t base_seed = 20260808;
    std::vector<double> snr_sweep = {10, 12, 14, 16, 18, 20, 22, 24, 26, 28, 30};
    std::vector<AlgorithmSpec> algorithms; // empty -> default catalog, see config.cpp
    ScatterSpec scatter;

    std::size_t total_symbols() const { return train_symbols + dd_symbols; }
    void validate() const;
};

// Everything one realization produced, all series of length train+dd.
struct RealizationTrace {
    std::vector<double> sq_error; // |e(n)|^2, adaptation error
    std::vector<double> mu_trace; // step size applied (0 on held iterations)
    CVec decisions;               // sliced outputs
    CVec truth;                   // transmitted symbols delayed by the reference delay
    CVec received;                // equalizer input u(n)
    CVec outputs;                 // equalizer output s_hat(n)
};

struct LearningCurve {
    std::vector<double> mse_db;
    std::size_t realizations = 0;
};

// Training mode uses the delayed replica, decision-directed mode the slicer
// output. The caller passes s_delayed = 0 while n < delay.
inline Cplx desired_signal(std::size_t n, std::size_t n_train, Cplx s_delayed, Cplx sliced_output) {
    return n < n_train ? s_delayed : sliced_output;
}

// One full training + decision-directed pass, deterministic in the stream.
RealizationTrace run_equalizer_realization(const ExperimentConfig& cfg, const AlgorithmSpec& spec,
                                           RngStream rng);

LearningCurve average_learning_curve(std::span<const RealizationTrace> traces);

enum class ScatterKind { pre, post };
CVec scatter_capture(const RealizationTrace& trace, ScatterKind which, std::size_t begin,
                     std::size_t end);

// Trial-averaged results for every configured algorithm, folded in
// realization order so the outcome does not depend on scheduling.
struct LearningResult {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> mse_db;       // [algorithm][iteration]
    std::vector<std::vector<double>> tail_mean_sq; // [algorithm][realization], mean |e|^2 of tail
    std::vector<double> mu_low;                    // [algorithm] smallest step applied
    std::vector<double> mu_high;                   // [algorithm] largest step applied
    std::size_t tail_len = 500;
};

LearningResult run_learning_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                       std::size_t tail_len = 500);

struct SerSweepResult {
    std::vector<std::string> labels;
    std::vector<double> snr_db;                                // sorted ascending
    std::vector<std::vector<double>> ser;                      // [algorithm][snr]
    std::vector<std::vector<std::vector<double>>> per_realization; // [algorithm][snr][realization]
    std::vector<double> mu_low, mu_high;                       // across the whole sweep
};

SerSweepResult run_ser_sweep(const ExperimentConfig& cfg, std::vector<double> snr_list,
                             std::size_t jobs);

// Drives a filter against a known true system with i.i.d. Gaussian input and
// returns the squared weight error per iteration. initial_weights (when
// non-empty) warm-starts the filter.
std::vector<double> run_sysid_validation(const SysIdScenario& scenario, const AlgorithmSpec& spec,
                                         std::size_t n, RngStream rng,
                                         const CVec& initial_weights = {});

} // namespace eqsim

#endif // EQSIM_EQUALIZER_HPP
