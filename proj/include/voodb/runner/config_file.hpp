#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "voodb/engine/experiment.hpp"

namespace voodb::runner {

// `SWEEP KEY = v1,v2,...`: one report section per value.
struct Sweep {
    std::string key;
    std::vector<std::string> values;
    int line = 0;
};

struct ExperimentConfig {
    engine::ExperimentSetup setup;
    // BUFFSIZE given as a percentage of the database page count; resolved
    // once the initial placement is known.
    std::optional<double> buffer_percent;
    std::vector<Sweep> sweeps;
};

// Every key the parser accepts, in serialization order.
const std::vector<std::string>& config_keys();

// Applies one `KEY = value` assignment. Keys and enum values are
// case-insensitive. Throws ConfigError tagged with `line`.
void set_value(ExperimentConfig& config, std::string_view key, std::string_view value, int line = 0);

// Current value of a key, in the syntax the parser reads back.
std::string get_value(const ExperimentConfig& config, std::string_view key);

// Line-oriented `KEY = value` text with `#` comments, applied on top of
// `base`. Throws ConfigError with the offending line number.
ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base = {});
ExperimentConfig load_config(const std::string& path, const ExperimentConfig& base = {});

// All keys with defaults expanded, followed by any SWEEP directives.
std::string serialize_config(const ExperimentConfig& config);

struct SweepPoint {
    std::vector<std::pair<std::string, std::string>> assignments;  // empty without sweeps
    ExperimentConfig config;

    std::string label() const;  // "KEY=value KEY2=value"
};

// Cartesian product of the SWEEP directives, first directive outermost.
std::vector<SweepPoint> expand_sweeps(const ExperimentConfig& config);

// Resolves percentage buffer sizes against the database the setup builds.
engine::ExperimentSetup resolve(const ExperimentConfig& config, const engine::ExperimentBase& base);

struct PresetInfo {
    std::string name;
    std::string description;
};

const std::vector<PresetInfo>& presets();
// Throws ConfigError for an unknown name.
ExperimentConfig preset(std::string_view name);

}  // namespace voodb::runner
