#include "eqsim/config.hpp"
#include "eqsim/csv.hpp"
#include "eqsim/equalizer.hpp"
#include "eqsim/errors.hpp"
#include "eqsim/manifest.hpp"
#include "eqsim/svg.hpp"
#include "eqsim/validate.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <thread>

namespace fs = std::filesystem;
using namespace eqsim;

namespace {

struct Options {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 0;
    bool svg = false;
};

ExperimentConfig load_config(const Options& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty())
        cfg = parse_config_file(opt.config_path);
    else if (!opt.preset.empty())
        cfg = parse_config_text(preset_text(opt.preset));
    else
        cfg = default_config();
    if (opt.seed) cfg.base_seed = *opt.seed;
    cfg.validate();
    return cfg;
}

std::size_t job_count(const Options& opt) {
    if (opt.jobs > 0) return opt.jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw io_error("cannot create output directory '" + dir + "': " + ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

void finish_manifest(const Options& opt, const ExperimentConfig& cfg, const std::string& command,
                     RunManifest m) {
    m.command = command;
    m.config_json = config_to_json(cfg);
    m.base_seed = cfg.base_seed;
    m.finished_utc = current_utc_timestamp();
    write_manifest(join_path(opt.out_dir, "manifest.json"), m);
}

int cmd_learn(const Options& opt) {
    const ExperimentConfig cfg = load_config(opt);
    ensure_out_dir(opt.out_dir);
    RunManifest manifest;
    manifest.started_utc = current_utc_timestamp();

    const LearningResult res = run_learning_experiment(cfg, job_count(opt));

    std::vector<std::string> header{"iteration"};
    for (const auto& label : res.labels) header.push_back("mse_db_" + label);
    CsvWriter csv(std::move(header));
    const std::size_t total = cfg.total_symbols();
    for (std::size_t i = 0; i < total; ++i) {
        std::vector<std::string> row{format_count(i)};
        for (const auto& curve : res.mse_db) row.push_back(format_number(curve[i]));
        csv.add_row(row);
    }
    const std::string csv_path = join_path(opt.out_dir, "learning_curve.csv");
    csv.save(csv_path);
    manifest.outputs.push_back("learning_curve.csv");

    if (opt.svg) {
        std::vector<SvgSeries> series;
        std::vector<double> xs(total);
        for (std::size_t i = 0; i < total; ++i) xs[i] = static_cast<double>(i);
        for (std::size_t a = 0; a < res.labels.size(); ++a)
            series.push_back({res.labels[a], xs, res.mse_db[a]});
        write_file_atomic(join_path(opt.out_dir, "learning_curve.svg"),
                          svg_line_chart("learning curves (trial-averaged)", "iteration",
                                         "MSE [dB]", series, /*log_y=*/false,
                                         static_cast<double>(cfg.train_symbols),
                                         "decision-directed"));
        manifest.outputs.push_back("learning_curve.svg");
    }

    finish_manifest(opt, cfg, "learn", std::move(manifest));
    std::cout << "wrote " << csv_path << " (" << cfg.realizations << " realizations, "
              << res.labels.size() << " algorithms)\n";
    return 0;
}

int cmd_ser(const Options& opt) {
    const ExperimentConfig cfg = load_config(opt);
    ensure_out_dir(opt.out_dir);
    RunManifest manifest;
    manifest.started_utc = current_utc_timestamp();

    const SerSweepResult res = run_ser_sweep(cfg, cfg.snr_sweep, job_count(opt));

    std::vector<std::string> header{"snr_db"};
    for (const auto& label : res.labels)
        header.push_back("ser_" + label + "_qam" + std::to_string(cfg.dd_constellation));
    CsvWriter csv(std::move(header));
    for (std::size_t si = 0; si < res.snr_db.size(); ++si) {
        std::vector<std::string> row{format_number(res.snr_db[si])};
        for (std::size_t a = 0; a < res.labels.size(); ++a)
            row.push_back(format_number(res.ser[a][si]));
        csv.add_row(row);
    }
    const std::string csv_path = join_path(opt.out_dir, "ser.csv");
    csv.save(csv_path);
    manifest.outputs.push_back("ser.csv");

    if (opt.svg) {
        std::vector<SvgSeries> series;
        for (std::size_t a = 0; a < res.labels.size(); ++a)
            series.push_back({res.labels[a], res.snr_db, res.ser[a]});
        write_file_atomic(join_path(opt.out_dir, "ser.svg"),
                          svg_line_chart("symbol error rate vs SNR", "SNR [dB]", "SER", series,
                                         /*log_y=*/true));
        manifest.outputs.push_back("ser.svg");
    }

    finish_manifest(opt, cfg, "ser", std::move(manifest));
    std::cout << "wrote " << csv_path << " (" << res.snr_db.size() << " SNR points)\n";
    return 0;
}

int cmd_scatter(const Options& opt) {
    const ExperimentConfig cfg = load_config(opt);
    ensure_out_dir(opt.out_dir);
    RunManifest manifest;
    manifest.started_utc = current_utc_timestamp();

    const AlgorithmSpec* spec = nullptr;
    for (const auto& a : cfg.algorithms)
        if (a.display_name() == cfg.scatter.algorithm) spec = &a;
    if (!spec)
        throw config_error("scatter.algorithm '" + cfg.scatter.algorithm +
                           "' is not in the configured algorithm list");

    const RealizationTrace trace =
        run_equalizer_realization(cfg, *spec, RngStream(cfg.base_seed, 0));
    const CVec rx = scatter_capture(trace, ScatterKind::pre, cfg.scatter.begin, cfg.scatter.end);
    const CVec eq = scatter_capture(trace, ScatterKind::post, cfg.scatter.begin, cfg.scatter.end);
    const CVec tx(trace.truth.begin() + static_cast<std::ptrdiff_t>(cfg.scatter.begin),
                  trace.truth.begin() + static_cast<std::ptrdiff_t>(cfg.scatter.end));

    CsvWriter csv({"kind", "re", "im"});
    const auto emit = [&](const char* kind, const CVec& pts) {
        for (const Cplx& p : pts)
            csv.add_row({kind, format_number(p.real()), format_number(p.imag())});
    };
    emit("tx", tx);
    emit("rx", rx);
    emit("eq", eq);
    const std::string csv_path = join_path(opt.out_dir, "scatter.csv");
    csv.save(csv_path);
    manifest.outputs.push_back("scatter.csv");

    if (opt.svg) {
        write_file_atomic(join_path(opt.out_dir, "scatter.svg"),
                          svg_scatter_chart("constellation before/after equalization (" +
                                                cfg.scatter.algorithm + ")",
                                            {{"tx", tx}, {"rx", rx}, {"eq", eq}}));
        manifest.outputs.push_back("scatter.svg");
    }

    finish_manifest(opt, cfg, "scatter", std::move(manifest));
    std::cout << "wrote " << csv_path << " (" << tx.size() << " points per kind)\n";
    return 0;
}

int cmd_validate(const Options& opt) {
    const ExperimentConfig cfg = load_config(opt); // only the seed matters here
    RunManifest manifest;
    manifest.started_utc = current_utc_timestamp();

    const auto results = run_validation_suite(cfg.base_seed);

    std::string report;
    bool all_pass = true;
    for (const auto& r : results) {
        report += "group=" + r.group + " status=" + (r.pass ? "PASS" : "FAIL") +
                  " detail=\"" + r.detail + "\"\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << report;
    std::cout << (all_pass ? "validation passed" : "validation FAILED") << " (" << results.size()
              << " groups)\n";

    if (!opt.out_dir.empty()) {
        ensure_out_dir(opt.out_dir);
        write_file_atomic(join_path(opt.out_dir, "validation.txt"), report);
        manifest.outputs.push_back("validation.txt");
        finish_manifest(opt, cfg, "validate", std::move(manifest));
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive equalizer experiments: variable step-size partial-rank filtering"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    Options opt;
    auto* config_opt =
        app.add_option("--config", opt.config_path, "JSON config (or a manifest to replay)");
    app.add_option("--preset", opt.preset, "bundled preset name")
        ->check(CLI::IsMember(preset_names()))
        ->excludes(config_opt);
    app.add_option("--out", opt.out_dir, "output directory (default: out)");
    app.add_option("--seed", opt.seed, "override the base seed");
    app.add_option("--jobs", opt.jobs, "worker threads (default: all cores)");
    app.add_flag("--svg", opt.svg, "also emit SVG charts");

    auto* learn = app.add_subcommand("learn", "trial-averaged learning curves");
    auto* ser = app.add_subcommand("ser", "symbol error rate vs SNR sweep");
    auto* scatter = app.add_subcommand("scatter", "tx/rx/equalized constellation points");
    auto* validate = app.add_subcommand("validate", "run the invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (learn->parsed()) return cmd_learn(opt);
        if (ser->parsed()) return cmd_ser(opt);
        if (scatter->parsed()) return cmd_scatter(opt);
        if (validate->parsed()) return cmd_validate(opt);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
