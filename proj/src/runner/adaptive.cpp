#include "voodb/runner/adaptive.hpp"

#include "voodb/errors.hpp"
#include "voodb/sim/statistics.hpp"

namespace voodb::runner {

AdaptiveOutcome run_adaptive(const engine::ExperimentSetup& setup, double relative_precision,
                             unsigned jobs) {
    if (!(relative_precision > 0.0)) throw Error("adaptive precision must be positive");
    AdaptiveOutcome outcome;

    const auto pilot_seeds = engine::replication_seeds(setup.seed, kPilotReplications);
    const auto pilot = engine::run_experiment(setup, pilot_seeds, jobs);
    const auto& io = pilot.metric("io_count");
    outcome.pilot_mean = io.mean;
    outcome.pilot_half_width = io.half_width.value_or(0.0);
    outcome.target_half_width = relative_precision * io.mean;
    if (outcome.pilot_half_width > 0.0 && outcome.target_half_width > 0.0) {
        outcome.required = static_cast<std::uint32_t>(sim::required_replications(
            kPilotReplications, outcome.pilot_half_width, outcome.target_half_width));
    }
    if (outcome.required > kPilotReplications) outcome.additional = outcome.required - kPilotReplications;
    if (outcome.additional == 0) {
        outcome.report = pilot;
        return outcome;
    }

    std::vector<std::uint64_t> more(outcome.additional);
    for (std::uint32_t i = 0; i < outcome.additional; ++i) {
        more[i] = engine::replication_seed(setup.seed, kPilotReplications + i);
    }
    auto rest = engine::run_experiment(setup, more, jobs);
    auto all = pilot.replications;
    all.insert(all.end(), rest.replications.begin(), rest.replications.end());
    outcome.report = engine::summarize(std::move(all));
    return outcome;
}

}  // namespace voodb::runner
