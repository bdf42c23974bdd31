#ifndef EQSIM_MANIFEST_HPP
#define EQSIM_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace eqsim {

inline constexpr const char* kToolVersion = "0.1.0";

// Record written atomically next to every output set. Re-running the same
// subcommand with the manifest as --config reproduces the outputs byte for
// byte (timestamps are bookkeeping; only the config snapshot and seed drive
// the numbers).
struct RunManifest {
    std::string command;
    std::string config_json; // resolved snapshot
    std::uint64_t base_seed = 0;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
};

std::string current_utc_timestamp();

void write_manifest(const std::string& path, const RunManifest& m);

} // namespace eqsim

#endif // EQSIM_MANIFEST_HPP
