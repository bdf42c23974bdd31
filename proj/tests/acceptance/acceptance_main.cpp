// Release acceptance: reproduces the reference experiments at full scale and
// re-runs the analytic invariant suites, printing one verdict line per
// criterion. Exit status 0 only if every criterion holds.

#include "eqsim/config.hpp"
#include "eqsim/csv.hpp"
#include "eqsim/equalizer.hpp"
#include "eqsim/errors.hpp"
#include "eqsim/manifest.hpp"
#include "eqsim/validate.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace eqsim;

namespace {

int g_failures = 0;

void verdict(int criterion, bool pass, const std::string& text) {
    if (!pass) ++g_failures;
    std::printf("criterion %d: %s — %s\n", criterion, pass ? "PASS" : "FAIL", text.c_str());
    std::fflush(stdout);
}

std::size_t jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

double mean(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / double(v.size());
}

double std_error(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return std::sqrt(acc / double(v.size() - 1) / double(v.size()));
}

double db(double x) { return 10.0 * std::log10(std::max(x, 1e-300)); }

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

struct LearnOutcome {
    LearningResult res;
    ExperimentConfig cfg;
};

// ---- criterion 1: learning-curve reproduction at the reference scale ----
LearnOutcome criterion_learning_curves() {
    ExperimentConfig cfg = parse_config_text(preset_text("paper-fig3"));
    LearningResult res = run_learning_experiment(cfg, jobs(), 500);

    const auto index_of = [&](const std::string& name) {
        for (std::size_t a = 0; a < res.labels.size(); ++a)
            if (res.labels[a] == name) return a;
        throw config_error("acceptance: missing algorithm " + name);
    };
    const std::size_t iv = index_of("vsspr"), in = index_of("nlms"), ip = index_of("pra"),
                      ia = index_of("apa");

    // steady-state margin with paired per-realization tail means, in dB
    bool margins_ok = true;
    std::string margin_txt;
    for (const std::size_t other : {in, ip}) {
        std::vector<double> diff(cfg.realizations);
        for (std::size_t r = 0; r < cfg.realizations; ++r)
            diff[r] = db(res.tail_mean_sq[other][r]) - db(res.tail_mean_sq[iv][r]);
        const double m = mean(diff), se = std_error(diff);
        margins_ok = margins_ok && m > 2.0 * se && m > 0.0;
        margin_txt += res.labels[other] + "+" + fmt(m) + "dB(2SE=" + fmt(2 * se) + ") ";
    }

    // convergence: first iteration at or under own steady state + 3 dB,
    // searched after the reference delay (the pre-delay region has a zero
    // training reference and is excluded from statistics)
    std::vector<std::size_t> conv(res.labels.size());
    for (std::size_t a = 0; a < res.labels.size(); ++a) {
        const double target = db(mean(res.tail_mean_sq[a])) + 3.0;
        std::size_t hit = cfg.total_symbols();
        for (std::size_t i = cfg.delay; i < res.mse_db[a].size(); ++i)
            if (res.mse_db[a][i] <= target) {
                hit = i;
                break;
            }
        conv[a] = hit;
    }
    const bool conv_ok = conv[iv] < conv[in] && conv[iv] < conv[ip] && conv[iv] < conv[ia];

    verdict(1, margins_ok && conv_ok,
            "steady-state margin " + margin_txt + "| within-3dB iterations vsspr=" +
                std::to_string(conv[iv]) + " nlms=" + std::to_string(conv[in]) +
                " pra=" + std::to_string(conv[ip]) + " apa=" + std::to_string(conv[ia]));
    return {std::move(res), std::move(cfg)};
}

// ---- criterion 2: SER orderings on both sweeps ----
std::vector<std::pair<double, double>> criterion_ser(int number) {
    std::vector<std::pair<double, double>> vss_mu_ranges;
    bool all_ok = true;
    std::string txt;

    for (const std::string preset : {std::string("paper-fig4a"), std::string("paper-fig4b")}) {
        ExperimentConfig cfg = parse_config_text(preset_text(preset));
        SerSweepResult res = run_ser_sweep(cfg, cfg.snr_sweep, jobs());

        const auto index_of = [&](const std::string& name) {
            for (std::size_t a = 0; a < res.labels.size(); ++a)
                if (res.labels[a] == name) return a;
            throw config_error("acceptance: missing algorithm " + name);
        };
        const std::size_t iv = index_of("vsspr"), in = index_of("nlms");

        // per algorithm: SER monotone nonincreasing in SNR within paired noise
        bool monotone = true;
        for (std::size_t a = 0; a < res.labels.size(); ++a)
            for (std::size_t s = 0; s + 1 < res.snr_db.size(); ++s) {
                std::vector<double> d(cfg.realizations);
                for (std::size_t r = 0; r < cfg.realizations; ++r)
                    d[r] = res.per_realization[a][s + 1][r] - res.per_realization[a][s][r];
                if (mean(d) > 2.0 * std_error(d) + 1e-12) monotone = false;
            }

        // vsspr <= nlms at 95% one-sided confidence at every SNR point
        bool dominated = true;
        for (std::size_t s = 0; s < res.snr_db.size(); ++s) {
            std::vector<double> d(cfg.realizations);
            for (std::size_t r = 0; r < cfg.realizations; ++r)
                d[r] = res.per_realization[iv][s][r] - res.per_realization[in][s][r];
            if (mean(d) > 1.645 * std_error(d) + 1e-12) dominated = false;
        }

        all_ok = all_ok && monotone && dominated;
        txt += preset + "(qam" + std::to_string(cfg.dd_constellation) + "): monotone " +
               (monotone ? "ok" : "VIOLATED") + ", vsspr<=nlms " +
               (dominated ? "ok" : "VIOLATED") + "; ";
        vss_mu_ranges.emplace_back(res.mu_low[iv], res.mu_high[iv]);
    }

    verdict(number, all_ok, txt);
    return vss_mu_ranges;
}

void criterion_from_check(int number, const CheckResult& r) {
    verdict(number, r.pass, r.group + ": " + r.detail);
}

void criterion_reductions(int number, std::uint64_t seed) {
    const CheckResult a = check_reduction_lms(seed, 10000);
    const CheckResult b = check_reduction_nlms(seed, 10000);
    const CheckResult c = check_reduction_pra_apa(seed, 10000);
    verdict(number, a.pass && b.pass && c.pass,
            "lms: " + a.detail + "; nlms: " + b.detail + "; pra/r-apa: " + c.detail);
}

void criterion_optimal_step(int number, std::uint64_t seed) {
    const CheckResult a = check_optimal_step(seed, 10000);
    const CheckResult b = check_msd_descent(seed, 500, 200);
    verdict(number, a.pass && b.pass, a.detail + "; " + b.detail);
}

void criterion_step_safety(int number, const LearnOutcome& learn,
                           const std::vector<std::pair<double, double>>& sweep_ranges) {
    double lo = 0.0, hi = 0.0;
    for (std::size_t a = 0; a < learn.res.labels.size(); ++a)
        if (learn.res.labels[a] == "vsspr") {
            lo = learn.res.mu_low[a];
            hi = learn.res.mu_high[a];
        }
    bool in_range = lo >= 0.0 && hi < 1.7;
    for (const auto& [l, h] : sweep_ranges) in_range = in_range && l >= 0.0 && h < 1.7;

    bool gate = false;
    try {
        parse_config_text(R"({"algorithms": [{"name": "vsspr", "mu_max": 2.5}]})");
    } catch (const config_error&) {
        gate = true;
    }
    bool gate2 = false;
    try {
        parse_config_text(R"({"algorithms": [{"name": "vsspr", "mu_max": 2.0}]})");
    } catch (const config_error&) {
        gate2 = true;
    }

    verdict(number, in_range && gate && gate2,
            "all recorded mu(n) in [0, 1.7): max seen " + fmt(hi, 4) +
                "; config gate rejects mu_max >= 2: " + (gate && gate2 ? "yes" : "NO"));
}

// ---- criterion 8: manifest replay determinism ----
void criterion_determinism(int number) {
    ExperimentConfig cfg = parse_config_text(preset_text("paper-fig3"));
    cfg.realizations = 5; // replay mechanism check; full runs share every code path

    const auto render = [](const ExperimentConfig& c, std::size_t njobs) {
        const LearningResult res = run_learning_experiment(c, njobs, 500);
        std::vector<std::string> header{"iteration"};
        for (const auto& label : res.labels) header.push_back("mse_db_" + label);
        CsvWriter csv(std::move(header));
        for (std::size_t i = 0; i < c.total_symbols(); ++i) {
            std::vector<std::string> row{format_count(i)};
            for (const auto& curve : res.mse_db) row.push_back(format_number(curve[i]));
            csv.add_row(row);
        }
        return csv.text();
    };

    const std::string first = render(cfg, 1);

    // round-trip the resolved config through a manifest document
    RunManifest m;
    m.command = "learn";
    m.config_json = config_to_json(cfg);
    m.base_seed = cfg.base_seed;
    m.started_utc = m.finished_utc = current_utc_timestamp();
    m.outputs = {"learning_curve.csv"};
    const std::string path = "acceptance_manifest_tmp.json";
    write_manifest(path, m);
    const ExperimentConfig replayed = parse_config_file(path);
    std::remove(path.c_str());

    const std::string second = render(replayed, jobs());

    verdict(number, first == second,
            std::string("manifest replay reproduced the CSV byte for byte (") +
                std::to_string(first.size()) + " bytes, sequential vs parallel)");
}

} // namespace

int main() {
    const std::uint64_t seed = 20260808;
    const auto t0 = std::chrono::steady_clock::now();

    try {
        const LearnOutcome learn = criterion_learning_curves();
        const auto sweep_ranges = criterion_ser(2);
        criterion_reductions(3, seed);
        criterion_from_check(4, check_projection(seed, 1000));
        criterion_optimal_step(5, seed);
        criterion_from_check(6, check_psi_estimate(seed, 10000));
        criterion_step_safety(7, learn, sweep_ranges);
        criterion_determinism(8);
    } catch (const std::exception& e) {
        std::printf("acceptance aborted: %s\n", e.what());
        return 1;
    }

    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
        std::chrono::steady_clock::now() - t0);
    std::printf("%s (%d failures, %llds)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                g_failures, static_cast<long long>(dt.count()));
    return g_failures == 0 ? 0 : 1;
}
