#pragma once

#include <cstdint>

#include "voodb/engine/experiment.hpp"

namespace voodb::runner {

inline constexpr std::uint32_t kPilotReplications = 10;

struct AdaptiveOutcome {
    engine::ExperimentReport report;
    double pilot_mean = 0.0;        // io_count mean after the pilot
    double pilot_half_width = 0.0;  // io_count half-width after the pilot
    double target_half_width = 0.0; // h* = relative_precision * pilot mean
    std::uint32_t required = 0;     // n* = n(h/h*)^2
    std::uint32_t additional = 0;   // max(0, n* - n) replications added to the pilot
};

// Pilot study of n = kPilotReplications replications. n* = n(h/h*)^2 is the
// total the target needs, h* being `relative_precision` times the pilot
// io_count mean (0.05: within 5% of the mean); the pilot is topped up to n*.
// Throws Error unless the precision is positive.
AdaptiveOutcome run_adaptive(const engine::ExperimentSetup& setup, double relative_precision,
                             unsigned jobs = 1);

}  // namespace voodb::runner
