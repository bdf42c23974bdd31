#include "eqsim/config.hpp"

#include "eqsim/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace eqsim {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& context) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known) throw config_error("unknown key '" + context + it.key() + "'");
    }
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw config_error(std::string("key '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::size_t get_count(const json& j, const char* key, std::size_t fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer() || v.is_number_float() || v.get<double>() < 0)
        throw config_error(std::string("key '") + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::string get_string(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw config_error(std::string("key '") + key + "' must be a string");
    return j.at(key).get<std::string>();
}

CVec parse_channel(const json& j) {
    if (!j.is_array() || j.empty()) throw config_error("key 'channel' must be a non-empty array");
    CVec taps;
    taps.reserve(j.size());
    for (const json& t : j) {
        if (t.is_number()) {
            taps.emplace_back(t.get<double>(), 0.0);
        } else if (t.is_array() && t.size() == 2 && t[0].is_number() && t[1].is_number()) {
            taps.emplace_back(t[0].get<double>(), t[1].get<double>());
        } else {
            throw config_error("key 'channel' entries must be numbers or [re, im] pairs");
        }
    }
    return taps;
}

PsiMode parse_psi(const json& j) {
    reject_unknown(j, {"mode", "value", "snr_db"}, "psi.");
    PsiMode psi;
    const std::string mode = get_string(j, "mode", "fixed");
    if (mode == "fixed") {
        psi.kind = PsiMode::Kind::fixed;
        psi.value = get_number(j, "value", 1e-4);
    } else if (mode == "from-snr") {
        psi.kind = PsiMode::Kind::from_snr;
        if (j.contains("snr_db"))
            psi.snr_linear = std::pow(10.0, get_number(j, "snr_db", 0.0) / 10.0);
        else
            psi.snr_linear = 0.0; // bind to the run's SNR
        if (j.contains("value")) throw config_error("psi.value only applies to mode 'fixed'");
    } else if (mode == "adaptive") {
        psi.kind = PsiMode::Kind::adaptive;
        if (j.contains("value") || j.contains("snr_db"))
            throw config_error("psi mode 'adaptive' takes no parameters");
    } else {
        throw config_error("psi.mode must be 'fixed', 'from-snr' or 'adaptive'");
    }
    return psi;
}

AlgorithmSpec parse_algorithm(const json& j) {
    if (!j.is_object()) throw config_error("algorithms entries must be objects");
    reject_unknown(j,
                   {"name", "label", "mu", "mu_max", "projection_order", "eps", "beta", "alpha",
                    "psi"},
                   "algorithms.");
    if (!j.contains("name")) throw config_error("algorithms entry missing 'name'");

    AlgorithmSpec spec;
    spec.variant = variant_from_name(get_string(j, "name", ""));
    spec.label = get_string(j, "label", "");
    spec.projection_order = get_count(j, "projection_order", spec.scalar_weighting() ? 1 : 4);
    spec.mu = get_number(j, "mu", 0.4);
    spec.mu_max = get_number(j, "mu_max", 1.7);
    spec.eps = get_number(j, "eps", 1e-4);
    spec.beta = get_number(j, "beta", 0.99);
    spec.alpha = static_cast<int>(get_count(j, "alpha", 1));
    if (j.contains("psi")) spec.psi = parse_psi(j.at("psi"));
    spec.validate();
    return spec;
}

json psi_to_json(const PsiMode& psi) {
    json j;
    switch (psi.kind) {
        case PsiMode::Kind::fixed:
            j["mode"] = "fixed";
            j["value"] = psi.value;
            break;
        case PsiMode::Kind::from_snr:
            j["mode"] = "from-snr";
            if (psi.snr_linear > 0.0) j["snr_db"] = 10.0 * std::log10(psi.snr_linear);
            break;
        case PsiMode::Kind::adaptive:
            j["mode"] = "adaptive";
            break;
    }
    return j;
}

json algorithm_to_json(const AlgorithmSpec& a) {
    json j;
    j["name"] = variant_name(a.variant);
    if (!a.label.empty()) j["label"] = a.label;
    j["projection_order"] = a.projection_order;
    j["mu"] = a.mu;
    j["mu_max"] = a.mu_max;
    j["eps"] = a.eps;
    j["beta"] = a.beta;
    j["alpha"] = a.alpha;
    j["psi"] = psi_to_json(a.psi);
    return j;
}

ExperimentConfig parse_config_json(const json& j);

} // namespace

ExperimentConfig default_config() {
    ExperimentConfig cfg;

    AlgorithmSpec nlms;
    nlms.variant = Variant::nlms;
    nlms.projection_order = 1;
    nlms.mu = 0.4;

    AlgorithmSpec pra;
    pra.variant = Variant::pra;
    pra.projection_order = 4;
    pra.mu = 0.4;

    AlgorithmSpec apa;
    apa.variant = Variant::apa;
    apa.projection_order = 4;
    apa.mu = 0.06;

    AlgorithmSpec vsspr;
    vsspr.variant = Variant::vsspr;
    vsspr.projection_order = 4;
    vsspr.mu_max = 1.7;
    vsspr.beta = 0.99;
    vsspr.psi.kind = PsiMode::Kind::fixed;
    vsspr.psi.value = 1e-4;

    cfg.algorithms = {nlms, pra, apa, vsspr};
    return cfg;
}

namespace {

ExperimentConfig parse_config_json(const json& doc) {
    if (!doc.is_object()) throw config_error("config root must be an object");

    // a manifest embeds the resolved config it ran with
    if (doc.contains("config") && doc.contains("command"))
        return parse_config_json(doc.at("config"));

    reject_unknown(doc,
                   {"channel", "snr_db", "equalizer_taps", "delay", "train_symbols", "dd_symbols",
                    "train_constellation", "dd_constellation", "realizations", "base_seed",
                    "snr_sweep", "algorithms", "scatter"},
                   "");

    ExperimentConfig cfg = default_config();
    if (doc.contains("channel")) cfg.channel.taps = parse_channel(doc.at("channel"));
    cfg.snr_db = get_number(doc, "snr_db", cfg.snr_db);
    cfg.num_taps = get_count(doc, "equalizer_taps", cfg.num_taps);
    cfg.delay = get_count(doc, "delay", cfg.delay);
    cfg.train_symbols = get_count(doc, "train_symbols", cfg.train_symbols);
    cfg.dd_symbols = get_count(doc, "dd_symbols", cfg.dd_symbols);
    cfg.train_constellation = get_count(doc, "train_constellation", cfg.train_constellation);
    cfg.dd_constellation = get_count(doc, "dd_constellation", cfg.dd_constellation);
    cfg.realizations = get_count(doc, "realizations", cfg.realizations);
    if (doc.contains("base_seed")) {
        const json& s = doc.at("base_seed");
        if (!s.is_number_unsigned() && !s.is_number_integer())
            throw config_error("key 'base_seed' must be an unsigned integer");
        cfg.base_seed = s.get<std::uint64_t>();
    }
    if (doc.contains("snr_sweep")) {
        const json& sweep = doc.at("snr_sweep");
        if (!sweep.is_array() || sweep.empty())
            throw config_error("key 'snr_sweep' must be a non-empty array of numbers");
        cfg.snr_sweep.clear();
        for (const json& v : sweep) {
            if (!v.is_number()) throw config_error("key 'snr_sweep' must hold numbers");
            cfg.snr_sweep.push_back(v.get<double>());
        }
    }
    if (doc.contains("algorithms")) {
        const json& algs = doc.at("algorithms");
        if (!algs.is_array() || algs.empty())
            throw config_error("key 'algorithms' must be a non-empty array");
        cfg.algorithms.clear();
        for (const json& a : algs) cfg.algorithms.push_back(parse_algorithm(a));
    }
    if (doc.contains("scatter")) {
        const json& sc = doc.at("scatter");
        if (!sc.is_object()) throw config_error("key 'scatter' must be an object");
        reject_unknown(sc, {"algorithm", "begin", "end"}, "scatter.");
        cfg.scatter.algorithm = get_string(sc, "algorithm", cfg.scatter.algorithm);
        cfg.scatter.begin = get_count(sc, "begin", cfg.scatter.begin);
        cfg.scatter.end = get_count(sc, "end", cfg.scatter.end);
    }

    cfg.validate();
    return cfg;
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        ExperimentConfig cfg = default_config();
        cfg.validate();
        return cfg;
    }
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config_json(doc);
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    json channel = json::array();
    for (const Cplx& t : cfg.channel.taps) {
        if (t.imag() == 0.0)
            channel.push_back(t.real());
        else
            channel.push_back(json::array({t.real(), t.imag()}));
    }
    j["channel"] = channel;
    j["snr_db"] = cfg.snr_db;
    j["equalizer_taps"] = cfg.num_taps;
    j["delay"] = cfg.delay;
    j["train_symbols"] = cfg.train_symbols;
    j["dd_symbols"] = cfg.dd_symbols;
    j["train_constellation"] = cfg.train_constellation;
    j["dd_constellation"] = cfg.dd_constellation;
    j["realizations"] = cfg.realizations;
    j["base_seed"] = cfg.base_seed;
    j["snr_sweep"] = cfg.snr_sweep;
    json algs = json::array();
    for (const AlgorithmSpec& a : cfg.algorithms) algs.push_back(algorithm_to_json(a));
    j["algorithms"] = algs;
    j["scatter"] = {{"algorithm", cfg.scatter.algorithm},
                    {"begin", cfg.scatter.begin},
                    {"end", cfg.scatter.end}};
    return j.dump(2) + "\n";
}

namespace {

constexpr const char* kPresetFig3 = R"json({
  "channel": [0.5, 1.2, 1.5, -1.0],
  "snr_db": 30,
  "equalizer_taps": 35,
  "delay": 15,
  "train_symbols": 500,
  "dd_symbols": 5000,
  "train_constellation": 4,
  "dd_constellation": 256,
  "realizations": 300,
  "base_seed": 20260808,
  "algorithms": [
    {"name": "nlms", "mu": 0.4},
    {"name": "pra", "mu": 0.4, "projection_order": 4},
    {"name": "apa", "mu": 0.06, "projection_order": 4},
    {"name": "vsspr", "mu_max": 1.7, "projection_order": 4, "beta": 0.99,
     "psi": {"mode": "fixed", "value": 0.0001}}
  ]
}
)json";

constexpr const char* kPresetFig4a = R"json({
  "channel": [0.5, 1.2, 1.5, -1.0],
  "snr_db": 30,
  "equalizer_taps": 35,
  "delay": 15,
  "train_symbols": 500,
  "dd_symbols": 5000,
  "train_constellation": 4,
  "dd_constellation": 16,
  "realizations": 50,
  "base_seed": 20260808,
  "snr_sweep": [10, 12, 14, 16, 18, 20, 22, 24],
  "algorithms": [
    {"name": "nlms", "mu": 0.4},
    {"name": "pra", "mu": 0.4, "projection_order": 4},
    {"name": "apa", "mu": 0.06, "projection_order": 4},
    {"name": "vsspr", "mu_max": 1.7, "projection_order": 4, "beta": 0.99,
     "psi": {"mode": "fixed", "value": 0.0001}}
  ]
}
)json";

constexpr const char* kPresetFig4b = R"json({
  "channel": [0.5, 1.2, 1.5, -1.0],
  "snr_db": 30,
  "equalizer_taps": 35,
  "delay": 15,
  "train_symbols": 500,
  "dd_symbols": 5000,
  "train_constellation": 4,
  "dd_constellation": 256,
  "realizations": 50,
  "base_seed": 20260808,
  "snr_sweep": [16, 18, 20, 22, 24, 26, 28, 30],
  "algorithms": [
    {"name": "nlms", "mu": 0.4},
    {"name": "pra", "mu": 0.4, "projection_order": 4},
    {"name": "apa", "mu": 0.06, "projection_order": 4},
    {"name": "vsspr", "mu_max": 1.7, "projection_order": 4, "beta": 0.99,
     "psi": {"mode": "fixed", "value": 0.0001}}
  ]
}
)json";

constexpr const char* kPresetFig6 = R"json({
  "channel": [0.5, 1.2, 1.5, -1.0],
  "snr_db": 30,
  "equalizer_taps": 35,
  "delay": 15,
  "train_symbols": 500,
  "dd_symbols": 5000,
  "train_constellation": 4,
  "dd_constellation": 256,
  "realizations": 1,
  "base_seed": 20260808,
  "scatter": {"algorithm": "vsspr", "begin": 4500, "end": 5500},
  "algorithms": [
    {"name": "nlms", "mu": 0.4},
    {"name": "pra", "mu": 0.4, "projection_order": 4},
    {"name": "apa", "mu": 0.06, "projection_order": 4},
    {"name": "vsspr", "mu_max": 1.7, "projection_order": 4, "beta": 0.99,
     "psi": {"mode": "fixed", "value": 0.0001}}
  ]
}
)json";

} // namespace

std::vector<std::string> preset_names() {
    return {"paper-fig3", "paper-fig4a", "paper-fig4b", "paper-fig6"};
}

bool is_preset(const std::string& name) {
    for (const auto& n : preset_names())
        if (n == name) return true;
    return false;
}

std::string preset_text(const std::string& name) {
    if (name == "paper-fig3") return kPresetFig3;
    if (name == "paper-fig4a") return kPresetFig4a;
    if (name == "paper-fig4b") return kPresetFig4b;
    if (name == "paper-fig6") return kPresetFig6;
    throw config_error("unknown preset '" + name + "' (have: paper-fig3, paper-fig4a, paper-fig4b, paper-fig6)");
}

} // namespace eqsim
