#include "voodb/engine/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "voodb/errors.hpp"
#include "voodb/sim/random.hpp"

namespace voodb::engine {

ExperimentBase build_base(const ExperimentSetup& setup) {
    setup.system.validate();
    setup.workload.validate();
    ExperimentBase base;
    base.db = workload::generate_database(setup.database, setup.seed);
    base.placement = workload::place_objects(base.db, setup.system.initial_placement, setup.system.page_size);
    return base;
}

ReplicationResult run_replication(const ExperimentSetup& setup, const ExperimentBase& base,
                                  std::uint64_t replication_seed) {
    ReplicationResult result;
    result.seed = replication_seed;

    const bool clustered = setup.system.clustering.kind != clustering::ClusteringKind::None;
    Engine engine(setup.system, base.db, base.placement, replication_seed);
    WorkloadSource source(setup.workload, base.db, replication_seed);
    const PhaseOptions options{setup.workload.cold_transactions, setup.workload.hot_transactions, clustered};

    PhaseResult pre = engine.run_phase(source, options);
    result.metrics = pre.measured;
    result.peak_admitted = pre.peak_admitted;
    result.events = pre.events;
    if (!clustered) return result;

    ClusteringOutcome outcome;
    outcome.reorganizations = pre.reorganizations;
    outcome.clustering_overhead_io = pre.measured.clustering_overhead_io + pre.cold.clustering_overhead_io;
    if (!engine.clustering_policy()->stats().empty()) {
        auto final_reorg = engine.reorganize();
        outcome.reorganizations.push_back(final_reorg.report);
        outcome.clustering_overhead_io += final_reorg.report.overhead_io;
        outcome.final_clusters = std::move(final_reorg.clusters);
    }

    engine.reset_buffer();
    WorkloadSource replay(setup.workload, base.db, replication_seed);
    const PhaseResult post = engine.run_phase(
        replay, {setup.workload.cold_transactions, setup.workload.hot_transactions, false});
    outcome.pre_clustering_io = pre.measured.buffer_misses;
    outcome.post_clustering_io = post.measured.buffer_misses;
    outcome.post = post.measured;
    result.events += post.events;
    result.clustering = std::move(outcome);
    return result;
}

std::uint64_t replication_seed(std::uint64_t root, std::uint32_t index) noexcept {
    return sim::derive_seed(root, 1000u + index);
}

std::vector<std::uint64_t> replication_seeds(std::uint64_t root, std::uint32_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::uint32_t i = 0; i < count; ++i) seeds[i] = replication_seed(root, i);
    return seeds;
}

const MetricSummary& ExperimentReport::metric(std::string_view name) const {
    for (const auto& m : metrics) {
        if (m.name == name) return m;
    }
    throw Error("report has no metric '" + std::string(name) + "'");
}

namespace {

MetricSummary summarize_series(std::string name, const std::vector<double>& samples) {
    MetricSummary s;
    s.name = std::move(name);
    s.n = samples.size();
    s.mean = sim::mean(samples);
    if (samples.size() >= 2) s.half_width = sim::confidence_half_width(samples, 0.95).half_width;
    return s;
}

using Extractor = std::function<double(const ReplicationResult&)>;

const std::vector<std::pair<std::string, Extractor>>& metric_extractors() {
    static const std::vector<std::pair<std::string, Extractor>> extractors = {
        {"transactions", [](const auto& r) { return static_cast<double>(r.metrics.transactions); }},
        {"io_count", [](const auto& r) { return static_cast<double>(r.metrics.io_count); }},
        {"buffer_hits", [](const auto& r) { return static_cast<double>(r.metrics.buffer_hits); }},
        {"buffer_misses", [](const auto& r) { return static_cast<double>(r.metrics.buffer_misses); }},
        {"hit_ratio", [](const auto& r) { return r.metrics.hit_ratio(); }},
        {"response_time", [](const auto& r) { return r.metrics.mean_response_time(); }},
        {"lock_time", [](const auto& r) { return r.metrics.lock_time; }},
        {"disk_time", [](const auto& r) { return r.metrics.disk_time; }},
        {"network_time", [](const auto& r) { return r.metrics.network_time; }},
    };
    return extractors;
}

}  // namespace

ExperimentReport summarize(std::vector<ReplicationResult> replications) {
    ExperimentReport report;
    for (const auto& [name, extract] : metric_extractors()) {
        std::vector<double> samples;
        samples.reserve(replications.size());
        for (const auto& r : replications) samples.push_back(extract(r));
        report.metrics.push_back(summarize_series(name, samples));
    }

    const bool clustered = !replications.empty() &&
                           std::all_of(replications.begin(), replications.end(),
                                       [](const auto& r) { return r.clustering.has_value(); });
    if (clustered) {
        std::vector<double> pre, overhead, post;
        std::vector<clustering::ClusterReport> reorgs;
        for (const auto& r : replications) {
            pre.push_back(static_cast<double>(r.clustering->pre_clustering_io));
            overhead.push_back(static_cast<double>(r.clustering->clustering_overhead_io));
            post.push_back(static_cast<double>(r.clustering->post_clustering_io));
            reorgs.insert(reorgs.end(), r.clustering->reorganizations.begin(),
                          r.clustering->reorganizations.end());
        }
        ClusteringSection section;
        section.pre_clustering_io = summarize_series("pre_clustering_io", pre);
        section.clustering_overhead_io = summarize_series("clustering_overhead_io", overhead);
        section.post_clustering_io = summarize_series("post_clustering_io", post);
        const double pre_mean = section.pre_clustering_io.mean;
        const double post_mean = section.post_clustering_io.mean;
        if (post_mean > 0.0) {
            section.gain = pre_mean / post_mean;
        } else {
            section.gain = pre_mean > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
        }
        section.clusters = clustering::summarize(reorgs);
        report.clustering = section;
    }
    report.replications = std::move(replications);
    return report;
}

ExperimentReport run_experiment(const ExperimentSetup& setup, std::span<const std::uint64_t> seeds,
                                unsigned jobs) {
    const ExperimentBase base = build_base(setup);
    std::vector<ReplicationResult> results(seeds.size());

    if (jobs <= 1 || seeds.size() <= 1) {
        for (std::size_t i = 0; i < seeds.size(); ++i) results[i] = run_replication(setup, base, seeds[i]);
        return summarize(std::move(results));
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            try {
                results[i] = run_replication(setup, base, seeds[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> workers;
    const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(seeds.size()));
    for (unsigned w = 0; w < n; ++w) workers.emplace_back(worker);
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
    return summarize(std::move(results));
}

ExperimentReport run_experiment(const ExperimentSetup& setup, unsigned jobs) {
    const auto seeds = replication_seeds(setup.seed, setup.replications);
    return run_experiment(setup, seeds, jobs);
}

}  // namespace voodb::engine
