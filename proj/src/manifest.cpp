#include "eqsim/manifest.hpp"

#include "eqsim/csv.hpp"
#include "eqsim/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <ctime>

namespace eqsim {

std::string current_utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    nlohmann::json j;
    j["tool"] = "eqsim";
    j["version"] = kToolVersion;
    j["command"] = m.command;
    j["base_seed"] = m.base_seed;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    j["outputs"] = m.outputs;
    try {
        j["config"] = nlohmann::json::parse(m.config_json);
    } catch (const nlohmann::json::parse_error&) {
        throw io_error("manifest: config snapshot is not valid JSON");
    }
    write_file_atomic(path, j.dump(2) + "\n");
}

} // namespace eqsim
