#include "eqsim/equalizer.hpp"

#include "eqsim/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace eqsim {

namespace {

bool has_nonzero_tap(const CVec& taps) {
    for (const Cplx& t : taps)
        if (t != Cplx{0.0, 0.0}) return true;
    return false;
}

// Runs fn(i) for i in [0, count) on `jobs` threads. Exceptions are rethrown
// on the caller; results must be written to index-addressed slots so the
// fold stays deterministic.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::max<std::size_t>(1, std::min(jobs, count));
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

AlgorithmSpec bind_psi_snr(AlgorithmSpec spec, double snr_db) {
    // from-snr mode tracks the experiment operating point unless pinned
    if (spec.psi.kind == PsiMode::Kind::from_snr && spec.psi.snr_linear <= 0.0)
        spec.psi.snr_linear = std::pow(10.0, snr_db / 10.0);
    return spec;
}

} // namespace

void ExperimentConfig::validate() const {
    if (!has_nonzero_tap(channel.taps)) throw config_error("channel: needs at least one nonzero tap");
    if (num_taps < 1) throw config_error("equalizer_taps: must be at least 1");
    if (realizations < 1) throw config_error("realizations: must be at least 1");
    if (train_symbols == 0) throw config_error("train_symbols: must be positive");
    if (delay >= train_symbols) throw config_error("delay: must be smaller than train_symbols");
    if (train_constellation != 4 && train_constellation != 16 && train_constellation != 256)
        throw config_error("train_constellation: must be 4, 16 or 256");
    if (dd_constellation != 4 && dd_constellation != 16 && dd_constellation != 256)
        throw config_error("dd_constellation: must be 4, 16 or 256");
    if (algorithms.empty()) throw config_error("algorithms: list is empty");
    for (const auto& a : algorithms) {
        a.validate();
        if (a.effective_order() > num_taps)
            throw config_error("projection_order: cannot exceed equalizer_taps");
    }
    if (scatter.begin > scatter.end || scatter.end > total_symbols())
        throw config_error("scatter: span out of bounds");
}

RealizationTrace run_equalizer_realization(const ExperimentConfig& cfg, const AlgorithmSpec& spec,
                                           RngStream rng) {
    const std::size_t total = cfg.total_symbols();
    const Constellation train_c = make_constellation(cfg.train_constellation);
    const Constellation dd_c = make_constellation(cfg.dd_constellation);

    CVec symbols = draw_symbols(train_c, cfg.train_symbols, rng);
    {
        CVec dd = draw_symbols(dd_c, cfg.dd_symbols, rng);
        symbols.insert(symbols.end(), dd.begin(), dd.end());
    }

    AwgnResult rx = add_awgn(apply_channel(symbols, cfg.channel), cfg.snr_db, rng);

    FilterState state(bind_psi_snr(spec, cfg.snr_db), cfg.num_taps, rx.sigma_v2);

    RealizationTrace trace;
    trace.sq_error.resize(total);
    trace.mu_trace.resize(total);
    trace.decisions.resize(total);
    trace.truth.resize(total);
    trace.received = rx.signal;
    trace.outputs.resize(total);

    for (std::size_t n = 0; n < total; ++n) {
        const Cplx out = state.predict(rx.signal[n]);
        const Cplx s_delayed = n >= cfg.delay ? symbols[n - cfg.delay] : Cplx{0.0, 0.0};
        // the decision targets the constellation the delayed symbol was drawn from
        const bool delayed_is_training = n < cfg.delay + cfg.train_symbols;
        const Cplx sliced = slice(out, delayed_is_training ? train_c : dd_c);
        const Cplx d = desired_signal(n, cfg.train_symbols, s_delayed, sliced);

        StepRecord rec;
        try {
            rec = state.step(rx.signal[n], d);
        } catch (const numeric_error& err) {
            throw numeric_error(std::string(err.what()) + " (equalizer iteration " +
                                std::to_string(n) + ")");
        }

        trace.sq_error[n] = std::norm(rec.prior_error);
        trace.mu_trace[n] = rec.mu_used;
        trace.decisions[n] = sliced;
        trace.truth[n] = s_delayed;
        trace.outputs[n] = rec.output;
    }
    return trace;
}

LearningCurve average_learning_curve(std::span<const RealizationTrace> traces) {
    if (traces.empty()) throw std::invalid_argument("average_learning_curve: no traces");
    const std::size_t len = traces.front().sq_error.size();
    for (const auto& t : traces)
        if (t.sq_error.size() != len)
            throw std::invalid_argument("average_learning_curve: trace length mismatch");

    LearningCurve curve;
    curve.realizations = traces.size();
    curve.mse_db.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        double acc = 0.0;
        for (const auto& t : traces) acc += t.sq_error[i];
        const double mean = acc / static_cast<double>(traces.size());
        curve.mse_db[i] = 10.0 * std::log10(std::max(mean, 1e-300));
    }
    return curve;
}

CVec scatter_capture(const RealizationTrace& trace, ScatterKind which, std::size_t begin,
                     std::size_t end) {
    const CVec& src = which == ScatterKind::pre ? trace.received : trace.outputs;
    if (begin > end || end > src.size())
        throw std::invalid_argument("scatter_capture: span out of bounds");
    return CVec(src.begin() + static_cast<std::ptrdiff_t>(begin),
                src.begin() + static_cast<std::ptrdiff_t>(end));
}

LearningResult run_learning_experiment(const ExperimentConfig& cfg, std::size_t jobs,
                                       std::size_t tail_len) {
    cfg.validate();
    const std::size_t total = cfg.total_symbols();
    tail_len = std::min(tail_len, total);

    LearningResult result;
    result.tail_len = tail_len;

    struct Slot {
        std::vector<double> sq_error;
        double tail_mean = 0.0;
        double mu_low = 0.0;
        double mu_high = 0.0;
    };

    for (const AlgorithmSpec& spec : cfg.algorithms) {
        std::vector<Slot> slots(cfg.realizations);
        parallel_for(cfg.realizations, jobs, [&](std::size_t r) {
            RealizationTrace t =
                run_equalizer_realization(cfg, spec, RngStream(cfg.base_seed, r));
            Slot s;
            s.sq_error = std::move(t.sq_error);
            double acc = 0.0;
            for (std::size_t i = total - tail_len; i < total; ++i) acc += s.sq_error[i];
            s.tail_mean = acc / static_cast<double>(tail_len);
            auto [lo, hi] = std::minmax_element(t.mu_trace.begin(), t.mu_trace.end());
            s.mu_low = *lo;
            s.mu_high = *hi;
            slots[r] = std::move(s);
        });

        std::vector<double> sum(total, 0.0);
        std::vector<double> tails(cfg.realizations);
        double mu_low = slots.front().mu_low;
        double mu_high = slots.front().mu_high;
        for (std::size_t r = 0; r < cfg.realizations; ++r) {
            for (std::size_t i = 0; i < total; ++i) sum[i] += slots[r].sq_error[i];
            tails[r] = slots[r].tail_mean;
            mu_low = std::min(mu_low, slots[r].mu_low);
            mu_high = std::max(mu_high, slots[r].mu_high);
        }
        std::vector<double> mse_db(total);
        for (std::size_t i = 0; i < total; ++i)
            mse_db[i] =
                10.0 * std::log10(std::max(sum[i] / static_cast<double>(cfg.realizations), 1e-300));

        result.labels.push_back(spec.display_name());
        result.mse_db.push_back(std::move(mse_db));
        result.tail_mean_sq.push_back(std::move(tails));
        result.mu_low.push_back(mu_low);
        result.mu_high.push_back(mu_high);
    }
    return result;
}

SerSweepResult run_ser_sweep(const ExperimentConfig& cfg, std::vector<double> snr_list,
                             std::size_t jobs) {
    cfg.validate();
    if (snr_list.empty()) throw config_error("ser sweep: empty snr list");
    std::sort(snr_list.begin(), snr_list.end());
    snr_list.erase(std::unique(snr_list.begin(), snr_list.end()), snr_list.end());

    SerSweepResult result;
    result.snr_db = snr_list;
    const std::size_t skip = cfg.train_symbols;

    for (const AlgorithmSpec& spec : cfg.algorithms) {
        result.labels.push_back(spec.display_name());
        std::vector<double> means(snr_list.size());
        std::vector<std::vector<double>> per_real(snr_list.size());
        double mu_low = std::numeric_limits<double>::infinity();
        double mu_high = -std::numeric_limits<double>::infinity();

        for (std::size_t si = 0; si < snr_list.size(); ++si) {
            ExperimentConfig point = cfg;
            point.snr_db = snr_list[si];
            std::vector<double> sers(cfg.realizations);
            std::vector<double> lo(cfg.realizations), hi(cfg.realizations);
            parallel_for(cfg.realizations, jobs, [&](std::size_t r) {
                RealizationTrace t =
                    run_equalizer_realization(point, spec, RngStream(cfg.base_seed, r));
                sers[r] = symbol_error_rate(t.decisions, t.truth, skip);
                auto [l, h] = std::minmax_element(t.mu_trace.begin(), t.mu_trace.end());
                lo[r] = *l;
                hi[r] = *h;
            });
            double acc = 0.0;
            for (std::size_t r = 0; r < cfg.realizations; ++r) {
                acc += sers[r];
                mu_low = std::min(mu_low, lo[r]);
                mu_high = std::max(mu_high, hi[r]);
            }
            means[si] = acc / static_cast<double>(cfg.realizations);
            per_real[si] = std::move(sers);
        }
        result.ser.push_back(std::move(means));
        result.per_realization.push_back(std::move(per_real));
        result.mu_low.push_back(mu_low);
        result.mu_high.push_back(mu_high);
    }
    return result;
}

std::vector<double> run_sysid_validation(const SysIdScenario& scenario, const AlgorithmSpec& spec,
                                         std::size_t n, RngStream rng,
                                         const CVec& initial_weights) {
    if (scenario.h_true.empty()) throw config_error("sysid: empty true filter");
    if (!(squared_norm(scenario.h_true) > 0.0)) throw config_error("sysid: zero true filter");

    const std::size_t M = scenario.h_true.size();
    FilterState state(spec, M, scenario.noise_variance);
    if (!initial_weights.empty()) state.set_weights(initial_weights);
    RegressorWindow ref(M);

    std::vector<double> trace(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Cplx x = gaussian_complex(rng, scenario.input_variance);
        ref.push(x);
        const Cplx d = dot_plain(ref.samples(), std::span<const Cplx>(scenario.h_true)) +
                       gaussian_complex(rng, scenario.noise_variance);
        state.step(x, d);
        trace[k] = msd(state.weights(), scenario);
    }
    return trace;
}

} // namespace eqsim
