#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "voodb/engine/experiment.hpp"
#include "voodb/runner/adaptive.hpp"
#include "voodb/runner/config_file.hpp"
#include "voodb/runner/report.hpp"

namespace voodb::runner {

struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> replications;
    std::optional<double> adaptive;  // relative precision for the pilot-study mode
    unsigned jobs = 1;
};

struct Section {
    SweepPoint point;
    engine::ExperimentSetup setup;  // as run, buffer size resolved
    engine::ExperimentReport report;
    std::optional<AdaptiveOutcome> adaptive;  // report moved out, statistics kept
};

// One section per sweep point, in sweep order.
std::vector<Section> run_config(const ExperimentConfig& config, const RunOptions& options = {});

// Reports back to back; with sweeps each is preceded by `# KEY=value ...`.
void write_sections(std::ostream& out, const std::vector<Section>& sections, ReportFormat format);

}  // namespace voodb::runner
