#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "voodb/buffer/buffer_pool.hpp"
#include "voodb/clustering/clustering.hpp"
#include "voodb/engine/config.hpp"
#include "voodb/sim/random.hpp"
#include "voodb/sim/simulator.hpp"
#include "voodb/workload/database.hpp"
#include "voodb/workload/placement.hpp"
#include "voodb/workload/transaction.hpp"

namespace voodb::engine {

// Totals over a set of transactions. Times in ms.
struct Metrics {
    std::uint64_t transactions = 0;
    std::uint64_t io_count = 0;  // buffer_misses + clustering_overhead_io + write_backs
    std::uint64_t buffer_hits = 0;
    std::uint64_t buffer_misses = 0;
    std::uint64_t clustering_overhead_io = 0;
    std::uint64_t write_backs = 0;
    std::uint64_t object_accesses = 0;
    std::uint64_t lock_acquisitions = 0;
    std::uint64_t network_bytes = 0;
    double response_time = 0.0;  // summed over transactions
    double lock_time = 0.0;
    double disk_time = 0.0;
    double network_time = 0.0;

    double mean_response_time() const noexcept {
        return transactions == 0 ? 0.0 : response_time / static_cast<double>(transactions);
    }
    double hit_ratio() const noexcept {
        const auto requests = buffer_hits + buffer_misses;
        return requests == 0 ? 0.0 : static_cast<double>(buffer_hits) / static_cast<double>(requests);
    }

    Metrics& operator+=(const Metrics& o);
    friend bool operator==(const Metrics&, const Metrics&) = default;
};

struct TransactionRequest {
    workload::TransactionSpec spec;
    workload::AccessTrace trace;
};

// Supplies transactions to the users, one per call, in issue order.
class TransactionSource {
public:
    virtual ~TransactionSource() = default;
    virtual TransactionRequest next() = 0;
};

// Draws from the OCB workload mix with its own workload and traversal streams.
class WorkloadSource final : public TransactionSource {
public:
    WorkloadSource(const workload::WorkloadParams& params, const workload::Database& db,
                   std::uint64_t seed, workload::TraversalSet traversals = {});
    TransactionRequest next() override;

    const std::vector<Oid>& roots() const noexcept { return roots_; }

private:
    workload::WorkloadParams params_;
    const workload::Database* db_;
    workload::TraversalSet traversals_;
    sim::RandomStream draw_rng_;
    sim::RandomStream walk_rng_;
    std::vector<Oid> roots_;  // empty: whole base
};

// Replays fixed traces in order, cycling when exhausted.
class FixedSource final : public TransactionSource {
public:
    explicit FixedSource(std::vector<workload::AccessTrace> traces);
    TransactionRequest next() override;

private:
    std::vector<workload::AccessTrace> traces_;
    std::size_t cursor_ = 0;
};

struct TransactionRecord {
    std::uint64_t index = 0;  // issue order within the phase
    std::uint32_t user = 0;
    workload::TransactionKind kind = workload::TransactionKind::SetAccess;
    SimTime submitted = 0.0;
    SimTime committed = 0.0;
    Metrics delta;

    friend bool operator==(const TransactionRecord&, const TransactionRecord&) = default;
};

struct PhaseResult {
    Metrics measured;  // warm-run transactions only
    Metrics cold;      // cold-run transactions
    std::vector<TransactionRecord> transactions;  // warm-run, commit order
    std::vector<clustering::ClusterReport> reorganizations;
    std::uint32_t peak_admitted = 0;
    std::uint64_t events = 0;
    SimTime end_time = 0.0;

    friend bool operator==(const PhaseResult&, const PhaseResult&) = default;
};

struct PhaseOptions {
    std::uint32_t cold_transactions = 0;
    std::uint32_t hot_transactions = 0;
    // Feed accesses to the clustering policy and honour its triggers.
    bool clustering_active = true;
};

// The transaction pipeline of one replication. Users submit closed-loop
// transactions; the database scheduler admits at most MULTILVL of them; the
// transaction manager locks each object on first touch, resolves it to a
// page through the object manager, and asks the buffer manager for the
// page; misses go to the disk controller and, depending on the system class,
// over the network. After each access the clustering manager updates its
// statistics; reorganizations run atomically at transaction commit.
class Engine final : public sim::ActiveResource {
public:
    Engine(const VoodbConfig& config, const workload::Database& db, workload::Placement placement,
           std::uint64_t seed);
    Engine(const VoodbConfig& config, const workload::Database& db, workload::Placement placement,
           std::unique_ptr<clustering::ClusteringPolicy> policy, std::uint64_t seed);

    PhaseResult run_phase(TransactionSource& source, const PhaseOptions& options);

    // External reorganization request served immediately.
    clustering::ReclusterResult reorganize();

    void reset_buffer() { buffer_.reset(); }

    const workload::Placement& placement() const noexcept { return placement_; }
    const buffer::BufferPool& buffer() const noexcept { return buffer_; }
    clustering::ClusteringPolicy* clustering_policy() noexcept { return policy_.get(); }
    sim::Simulator& simulator() noexcept { return sim_; }

    void handle(sim::Simulator& sim, const sim::Event& event) override;
    std::string name() const override { return "transaction-pipeline"; }

private:
    enum EventKind : std::uint32_t { kSubmit, kBegin, kHoldDone };
    enum class Stage : std::uint8_t { Lock, Fetch, Ship, Done };
    enum class After : std::uint8_t { Access, CommitShip, Release };

    struct Txn {
        std::uint64_t id = 0;
        std::uint64_t index = 0;
        std::uint32_t user = 0;
        bool cold = false;
        TransactionRequest request;
        std::size_t pos = 0;
        Stage stage = Stage::Lock;
        bool missed = false;
        std::unordered_set<Oid> locked;
        clustering::AccessContext context;
        SimTime submitted = 0.0;
        // Pending hold.
        sim::PassiveResource* holding = nullptr;
        SimTime hold_duration = 0.0;
        After after = After::Access;
        Metrics delta;
    };

    void submit(std::uint32_t user);
    void advance(Txn& t);
    void begin_commit(Txn& t);
    void release_locks(Txn& t);
    void finish(Txn& t);
    // Reserves `r` for `duration`; returns false when the hold was skipped
    // because it costs no time.
    bool hold(Txn& t, sim::PassiveResource& r, SimTime duration, After after);
    void maybe_reorganize(bool measured);

    VoodbConfig config_;
    const workload::Database* db_;
    workload::Placement placement_;
    buffer::BufferPool buffer_;
    std::unique_ptr<clustering::ClusteringPolicy> policy_;

    sim::Simulator sim_;
    std::uint32_t self_ = 0;
    sim::PassiveResource* processor_ = nullptr;
    sim::PassiveResource* disk_ = nullptr;
    sim::PassiveResource* network_ = nullptr;
    sim::PassiveResource* scheduler_ = nullptr;

    // Per-phase state.
    TransactionSource* source_ = nullptr;
    PhaseOptions options_{};
    PhaseResult* result_ = nullptr;
    std::uint64_t issued_ = 0;
    std::uint64_t completed_ = 0;
    std::uint64_t next_txn_id_ = 0;
    std::unordered_map<std::uint64_t, Txn> active_;
};

}  // namespace voodb::engine
