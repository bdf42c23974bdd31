#ifndef EQSIM_CONFIG_HPP
#define EQSIM_CONFIG_HPP

#include "eqsim/equalizer.hpp"

#include <string>
#include <vector>

namespace eqsim {

// Parses a JSON config document. Missing keys take documented defaults,
// unknown keys are rejected with a diagnostic naming the key, and every
// invariant is checked. A manifest document (a previous run's record) is
// accepted too: its embedded config snapshot is used, which is what makes
// manifest replay exact.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Fully resolved JSON snapshot of a config; parse_config_text of the result
// reproduces the config exactly.
std::string config_to_json(const ExperimentConfig& cfg);

std::vector<std::string> preset_names();
bool is_preset(const std::string& name);
// JSON text of a bundled preset; throws config_error for unknown names.
std::string preset_text(const std::string& name);

ExperimentConfig default_config();

} // namespace eqsim

#endif // EQSIM_CONFIG_HPP
