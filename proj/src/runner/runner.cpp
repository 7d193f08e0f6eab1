#include "voodb/runner/runner.hpp"

#include <ostream>

namespace voodb::runner {

std::vector<Section> run_config(const ExperimentConfig& config, const RunOptions& options) {
    ExperimentConfig effective = config;
    if (options.seed) effective.setup.seed = *options.seed;
    if (options.replications) effective.setup.replications = *options.replications;

    std::vector<Section> sections;
    for (auto& point : expand_sweeps(effective)) {
        Section s;
        const auto base = engine::build_base(point.config.setup);
        s.setup = resolve(point.config, base);
        if (options.adaptive) {
            auto outcome = run_adaptive(s.setup, *options.adaptive, options.jobs);
            s.report = std::move(outcome.report);
            outcome.report = {};
            s.adaptive = std::move(outcome);
        } else {
            s.report = engine::run_experiment(s.setup, options.jobs);
        }
        s.point = std::move(point);
        sections.push_back(std::move(s));
    }
    return sections;
}

void write_sections(std::ostream& out, const std::vector<Section>& sections, ReportFormat format) {
    for (const auto& s : sections) {
        if (!s.point.assignments.empty()) out << "# " << s.point.label() << '\n';
        write_report(out, s.report, format);
    }
}

}  // namespace voodb::runner
