#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voodb/clustering/clustering.hpp"
#include "voodb/engine/config.hpp"
#include "voodb/engine/engine.hpp"
#include "voodb/sim/statistics.hpp"
#include "voodb/workload/database.hpp"
#include "voodb/workload/transaction.hpp"

namespace voodb::engine {

struct ExperimentSetup {
    VoodbConfig system;
    workload::WorkloadParams workload;
    workload::DatabaseParams database;
    std::uint64_t seed = 1;              // database seed and replication-seed root
    std::uint32_t replications = 100;
};

// Present when the clustering policy is not None: the measured run
// collects usage statistics, the users then demand a reorganization, and
// the same transaction stream is replayed on the reorganized base starting
// from an empty buffer.
struct ClusteringOutcome {
    std::uint64_t pre_clustering_io = 0;   // buffer misses of the measured run
    std::uint64_t clustering_overhead_io = 0;
    std::uint64_t post_clustering_io = 0;  // buffer misses of the replay
    std::vector<clustering::ClusterReport> reorganizations;
    std::vector<clustering::Cluster> final_clusters;
    Metrics post;

    friend bool operator==(const ClusteringOutcome&, const ClusteringOutcome&) = default;
};

struct ReplicationResult {
    std::uint64_t seed = 0;
    Metrics metrics;  // warm run (pre-clustering when clustering is on)
    std::uint32_t peak_admitted = 0;
    std::uint64_t events = 0;
    std::optional<ClusteringOutcome> clustering;

    friend bool operator==(const ReplicationResult&, const ReplicationResult&) = default;
};

// Database and initial placement shared by every replication.
struct ExperimentBase {
    workload::Database db;
    workload::Placement placement;
};

ExperimentBase build_base(const ExperimentSetup& setup);

ReplicationResult run_replication(const ExperimentSetup& setup, const ExperimentBase& base,
                                  std::uint64_t replication_seed);

// Seed of replication i (0-based) under a root seed.
std::uint64_t replication_seed(std::uint64_t root, std::uint32_t index) noexcept;
std::vector<std::uint64_t> replication_seeds(std::uint64_t root, std::uint32_t count);

struct MetricSummary {
    std::string name;
    double mean = 0.0;
    std::optional<double> half_width;  // absent when n < 2 or not applicable
    std::size_t n = 0;
};

struct ClusteringSection {
    MetricSummary pre_clustering_io;
    MetricSummary clustering_overhead_io;
    MetricSummary post_clustering_io;
    double gain = 0.0;  // mean pre / mean post
    clustering::ClusterSummary clusters;
};

struct ExperimentReport {
    std::vector<MetricSummary> metrics;
    std::optional<ClusteringSection> clustering;
    std::vector<ReplicationResult> replications;

    const MetricSummary& metric(std::string_view name) const;
};

// Aggregates per-replication results into means and 95% half-widths.
ExperimentReport summarize(std::vector<ReplicationResult> replications);

// Runs one replication per seed; `jobs` > 1 runs them on worker threads.
// Results are ordered by seed position either way.
ExperimentReport run_experiment(const ExperimentSetup& setup, std::span<const std::uint64_t> seeds,
                                unsigned jobs = 1);
ExperimentReport run_experiment(const ExperimentSetup& setup, unsigned jobs = 1);

}  // namespace voodb::engine
