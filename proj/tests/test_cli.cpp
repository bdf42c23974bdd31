#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqsim/config.hpp"
#include "eqsim/csv.hpp"
#include "eqsim/errors.hpp"
#include "eqsim/manifest.hpp"
#include "eqsim/svg.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

using namespace eqsim;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const AlgorithmSpec& find_alg(const ExperimentConfig& cfg, const std::string& name) {
    for (const auto& a : cfg.algorithms)
        if (a.display_name() == name) return a;
    REQUIRE(false);
    return cfg.algorithms.front();
}

} // namespace

TEST_CASE("empty config text yields the documented defaults") {
    const ExperimentConfig cfg = parse_config_text("  \n\t ");
    CHECK(cfg.snr_db == 30.0);
    CHECK(cfg.num_taps == 35);
    CHECK(cfg.delay == 15);
    CHECK(cfg.train_symbols == 500);
    CHECK(cfg.dd_symbols == 5000);
    CHECK(cfg.train_constellation == 4);
    CHECK(cfg.dd_constellation == 256);
    CHECK(cfg.realizations == 300);
    REQUIRE(cfg.algorithms.size() == 4);
    REQUIRE(cfg.channel.taps.size() == 4);
    CHECK(cfg.channel.taps[0] == Cplx{0.5, 0.0});
    CHECK(cfg.channel.taps[1] == Cplx{1.2, 0.0});
    CHECK(cfg.channel.taps[2] == Cplx{1.5, 0.0});
    CHECK(cfg.channel.taps[3] == Cplx{-1.0, 0.0});
}

TEST_CASE("the learning-curve preset pins the reference parameters") {
    const ExperimentConfig cfg = parse_config_text(preset_text("paper-fig3"));
    CHECK(cfg.realizations == 300);

    const AlgorithmSpec& nlms = find_alg(cfg, "nlms");
    CHECK(nlms.mu == 0.4);
    CHECK(nlms.effective_order() == 1);

    const AlgorithmSpec& pra = find_alg(cfg, "pra");
    CHECK(pra.mu == 0.4);
    CHECK(pra.projection_order == 4);
    CHECK(pra.alpha == 1);

    const AlgorithmSpec& apa = find_alg(cfg, "apa");
    CHECK(apa.mu == 0.06);
    CHECK(apa.projection_order == 4);

    const AlgorithmSpec& vsspr = find_alg(cfg, "vsspr");
    CHECK(vsspr.mu_max == 1.7);
    CHECK(vsspr.projection_order == 4);
    CHECK(vsspr.psi.kind == PsiMode::Kind::fixed);
    CHECK(vsspr.psi.value == 0.0001);
    CHECK(vsspr.beta == 0.99);
    CHECK(vsspr.eps == 1e-4);
}

TEST_CASE("sweep presets differ only where they should") {
    const ExperimentConfig a = parse_config_text(preset_text("paper-fig4a"));
    CHECK(a.dd_constellation == 16);
    CHECK(a.realizations == 50);
    CHECK(a.snr_sweep.size() == 8);
    CHECK(a.snr_sweep.front() == 10.0);
    CHECK(a.snr_sweep.back() == 24.0);

    const ExperimentConfig b = parse_config_text(preset_text("paper-fig4b"));
    CHECK(b.dd_constellation == 256);
    CHECK(b.snr_sweep.front() == 16.0);
    CHECK(b.snr_sweep.back() == 30.0);

    const ExperimentConfig s = parse_config_text(preset_text("paper-fig6"));
    CHECK(s.realizations == 1);
    CHECK(s.scatter.algorithm == "vsspr");
    CHECK(s.scatter.begin == 4500);
    CHECK(s.scatter.end == 5500);

    CHECK_THROWS_AS(preset_text("nope"), config_error);
}

TEST_CASE("shipped preset files match the embedded texts") {
    for (const std::string& name : preset_names()) {
        const std::string path = std::string(EQSIM_PRESET_DIR) + "/" + name + ".json";
        CHECK(read_file(path) == preset_text(name));
    }
}

TEST_CASE("config rejection diagnostics") {
    SUBCASE("unstable mu_max names the bound") {
        try {
            parse_config_text(R"({"algorithms": [{"name": "vsspr", "mu_max": 2.5}]})");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("stability") != std::string::npos);
        }
    }
    SUBCASE("unknown keys are named") {
        try {
            parse_config_text(R"({"snr_dbx": 10})");
            FAIL("expected config_error");
        } catch (const config_error& e) {
            CHECK(std::string(e.what()).find("snr_dbx") != std::string::npos);
        }
        CHECK_THROWS_AS(parse_config_text(R"({"algorithms": [{"name": "nlms", "muu": 1}]})"),
                        config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"scatter": {"from": 0}})"), config_error);
    }
    SUBCASE("schema violations") {
        CHECK_THROWS_AS(parse_config_text("not json"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"snr_db": "loud"})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"channel": []})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"channel": [0.0]})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"delay": 600})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"dd_constellation": 64})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"algorithms": [{"name": "zf"}]})"), config_error);
        CHECK_THROWS_AS(parse_config_text(R"({"realizations": -3})"), config_error);
    }
    SUBCASE("missing file") { CHECK_THROWS_AS(parse_config_file("/nonexistent/x.json"), config_error); }
}

TEST_CASE("config snapshots round trip") {
    for (const std::string& name : preset_names()) {
        const ExperimentConfig cfg = parse_config_text(preset_text(name));
        const std::string snap = config_to_json(cfg);
        const ExperimentConfig again = parse_config_text(snap);
        CHECK(config_to_json(again) == snap);
    }
    // complex taps survive the round trip
    const ExperimentConfig cfg = parse_config_text(R"({"channel": [[0.5, -0.25], 1.0]})");
    CHECK(cfg.channel.taps[0] == Cplx{0.5, -0.25});
    const ExperimentConfig rt = parse_config_text(config_to_json(cfg));
    CHECK(rt.channel.taps[0] == Cplx{0.5, -0.25});
}

TEST_CASE("a manifest stands in for its config") {
    const ExperimentConfig cfg = parse_config_text(preset_text("paper-fig4a"));
    RunManifest m;
    m.command = "ser";
    m.config_json = config_to_json(cfg);
    m.base_seed = cfg.base_seed;
    m.started_utc = m.finished_utc = current_utc_timestamp();
    m.outputs = {"ser.csv"};
    const std::string path = "test_manifest_tmp.json";
    write_manifest(path, m);

    const ExperimentConfig replay = parse_config_file(path);
    CHECK(config_to_json(replay) == config_to_json(cfg));
    std::remove(path.c_str());
}

TEST_CASE("csv formatting is pinned at 17 significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(-2.5) == "-2.5");
    CHECK(format_number(1e300) == "1.0000000000000001e+300");
    CHECK(format_count(42) == "42");

    CsvWriter w({"a", "b"});
    w.add_row({format_count(1), format_number(0.5)});
    CHECK(w.text() == "a,b\n1,0.5\n");
    CHECK_THROWS_AS(w.add_row({"only-one"}), std::invalid_argument);

    const std::string path = "test_csv_tmp.csv";
    w.save(path);
    CHECK(read_file(path) == w.text());
    std::remove(path.c_str());
}

TEST_CASE("svg charts are self-contained documents") {
    const std::string line = svg_line_chart("t", "x", "y", {{"s", {0, 1, 2}, {3.0, 1.0, 2.0}}});
    CHECK(line.rfind("<svg", 0) == 0);
    CHECK(line.find("</svg>") != std::string::npos);
    CHECK(line.find("polyline") != std::string::npos);
    CHECK(line.find("http://www.w3.org/2000/svg") != std::string::npos);

    const std::string sc = svg_scatter_chart("t", {{"g", {Cplx{0.0, 1.0}, Cplx{1.0, -1.0}}}});
    CHECK(sc.find("circle") != std::string::npos);

    const std::string logy =
        svg_line_chart("t", "x", "y", {{"s", {0, 1}, {1e-3, 1e-1}}}, true);
    CHECK(logy.find("1e") != std::string::npos);
}
