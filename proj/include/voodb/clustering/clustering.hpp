#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "voodb/types.hpp"
#include "voodb/workload/database.hpp"
#include "voodb/workload/placement.hpp"

namespace voodb::clustering {

enum class ClusteringKind { None, CoAccess };

// Physical OIDs encode the page, so moving objects forces a full-base
// reference-update scan.
enum class OidMode { Logical, Physical };

struct ClusteringParams {
    ClusteringKind kind = ClusteringKind::None;
    // Accesses since the last reorganization that trigger the next one;
    // 0 leaves only external demands.
    std::uint64_t trigger_threshold = 10'000;
    // Minimum co-access weight for two objects to be linked into a cluster.
    std::uint64_t link_threshold = 2;
    OidMode oid_mode = OidMode::Logical;
};

std::string to_string(ClusteringKind kind);
std::string to_string(OidMode mode);

// Observation window since the last reorganization.
class UsageStats {
public:
    void record(Oid oid, std::optional<Oid> previous);
    void clear();

    std::uint64_t window_accesses() const noexcept { return window_accesses_; }
    std::uint64_t access_count(Oid oid) const;
    // Count for the ordered pair (first accessed immediately before second).
    std::uint64_t pair_count(Oid first, Oid second) const;
    bool empty() const noexcept { return window_accesses_ == 0; }

    const std::unordered_map<Oid, std::uint64_t>& access_counts() const noexcept { return access_counts_; }
    const std::unordered_map<std::uint64_t, std::uint64_t>& pair_counts() const noexcept {
        return pair_counts_;
    }

    static std::uint64_t pair_key(Oid first, Oid second) noexcept {
        return (std::uint64_t{first.value} << 32) | second.value;
    }

private:
    std::unordered_map<Oid, std::uint64_t> access_counts_;
    std::unordered_map<std::uint64_t, std::uint64_t> pair_counts_;
    std::uint64_t window_accesses_ = 0;
};

// Per-transaction state: co-access pairs never span two traces.
struct AccessContext {
    std::optional<Oid> previous;
};

struct Cluster {
    std::uint32_t id = 0;
    std::vector<Oid> members;  // layout order

    friend bool operator==(const Cluster&, const Cluster&) = default;
};

struct ClusterReport {
    std::size_t n_clusters = 0;
    double mean_objects_per_cluster = 0.0;
    std::uint64_t overhead_io = 0;
    std::uint64_t pages_read = 0;
    std::uint64_t pages_written = 0;
    std::uint64_t scan_pages = 0;  // physical-OID reference update pass

    friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

struct ReclusterResult {
    ClusterReport report;
    std::vector<Cluster> clusters;
};

// record/trigger/recluster contract shared by every clustering policy.
class ClusteringPolicy {
public:
    virtual ~ClusteringPolicy() = default;

    virtual void record_access(Oid oid, AccessContext& context) = 0;
    virtual bool should_trigger() const = 0;
    // External reorganization request (from the users).
    virtual void demand() = 0;
    virtual ReclusterResult recluster(const workload::Database& db, workload::Placement& placement) = 0;
    virtual const UsageStats& stats() const = 0;
    virtual std::string name() const = 0;
};

class NoClustering final : public ClusteringPolicy {
public:
    void record_access(Oid, AccessContext&) override {}
    bool should_trigger() const override { return false; }
    void demand() override {}
    ReclusterResult recluster(const workload::Database&, workload::Placement&) override { return {}; }
    const UsageStats& stats() const override { return stats_; }
    std::string name() const override { return "NONE"; }

private:
    UsageStats stats_;
};

// Statistics + trigger + regroup, in the spirit of dynamic statistical
// clustering: clusters are connected components of the co-access graph
// restricted to links of weight >= link_threshold. Each cluster is laid out
// as a greedy heaviest-link chain and packed onto fresh pages; objects
// outside every cluster stay where they are.
class CoAccessClustering final : public ClusteringPolicy {
public:
    explicit CoAccessClustering(const ClusteringParams& params);

    void record_access(Oid oid, AccessContext& context) override;
    bool should_trigger() const override;
    void demand() override { demanded_ = true; }
    ReclusterResult recluster(const workload::Database& db, workload::Placement& placement) override;
    const UsageStats& stats() const override { return stats_; }
    std::string name() const override { return "COACCESS"; }

    const ClusteringParams& params() const noexcept { return params_; }

    // Clusters the current statistics would produce, without moving anything.
    std::vector<Cluster> form_clusters() const;

private:
    ClusteringParams params_;
    UsageStats stats_;
    bool demanded_ = false;
};

std::unique_ptr<ClusteringPolicy> make_policy(const ClusteringParams& params);

struct ClusterSummary {
    std::size_t reorganizations = 0;
    double mean_clusters = 0.0;
    double mean_objects_per_cluster = 0.0;  // over reorganizations that formed clusters
    std::uint64_t total_overhead_io = 0;
};

// Zero reorganizations give an all-zero summary.
ClusterSummary summarize(std::span<const ClusterReport> reports);

// One cluster per line: `cluster_id oid oid ...`.
void write_cluster_dump(std::ostream& out, std::span<const Cluster> clusters);

}  // namespace voodb::clustering
