#include "voodb/engine/engine.hpp"

#include "voodb/errors.hpp"

namespace voodb::engine {

Metrics& Metrics::operator+=(const Metrics& o) {
    transactions += o.transactions;
    io_count += o.io_count;
    buffer_hits += o.buffer_hits;
    buffer_misses += o.buffer_misses;
    clustering_overhead_io += o.clustering_overhead_io;
    write_backs += o.write_backs;
    object_accesses += o.object_accesses;
    lock_acquisitions += o.lock_acquisitions;
    network_bytes += o.network_bytes;
    response_time += o.response_time;
    lock_time += o.lock_time;
    disk_time += o.disk_time;
    network_time += o.network_time;
    return *this;
}

WorkloadSource::WorkloadSource(const workload::WorkloadParams& params, const workload::Database& db,
                               std::uint64_t seed, workload::TraversalSet traversals)
    : params_(params),
      db_(&db),
      traversals_(std::move(traversals)),
      draw_rng_(seed, sim::StreamId::Workload),
      walk_rng_(seed, sim::StreamId::Traversal) {
    params_.validate();
    if (params_.hot_roots > 0) {
        sim::RandomStream root_rng(seed, sim::StreamId::RootSet);
        roots_ = workload::choose_root_set(db, params_.hot_roots, root_rng);
    }
}

TransactionRequest WorkloadSource::next() {
    TransactionRequest req;
    req.spec = workload::draw_transaction(params_, draw_rng_, *db_, roots_);
    req.trace = traversals_.expand(req.spec, *db_, walk_rng_);
    return req;
}

FixedSource::FixedSource(std::vector<workload::AccessTrace> traces) : traces_(std::move(traces)) {
    if (traces_.empty()) throw ModelError("fixed transaction source needs at least one trace");
}

TransactionRequest FixedSource::next() {
    TransactionRequest req;
    req.trace = traces_[cursor_];
    if (!req.trace.empty()) req.spec.root = req.trace.front().oid;
    cursor_ = (cursor_ + 1) % traces_.size();
    return req;
}

Engine::Engine(const VoodbConfig& config, const workload::Database& db, workload::Placement placement,
               std::uint64_t seed)
    : Engine(config, db, std::move(placement), clustering::make_policy(config.clustering), seed) {}

Engine::Engine(const VoodbConfig& config, const workload::Database& db, workload::Placement placement,
               std::unique_ptr<clustering::ClusteringPolicy> policy, std::uint64_t seed)
    : config_(config),
      db_(&db),
      placement_(std::move(placement)),
      buffer_(config.buffer_pages, config.replacement, sim::RandomStream(seed, sim::StreamId::BufferPolicy)),
      policy_(policy ? std::move(policy) : std::make_unique<clustering::NoClustering>()) {
    config_.validate();
    if (placement_.page_size() != config_.page_size) {
        throw ConfigError("placement page size differs from PGSIZE");
    }
    self_ = sim_.attach(*this);
    processor_ = &sim_.add_resource("processor", 1);
    disk_ = &sim_.add_resource("disk", 1);
    network_ = &sim_.add_resource("network", 1);
    scheduler_ = &sim_.add_resource("database-scheduler", config_.multiprogramming_level);
}

PhaseResult Engine::run_phase(TransactionSource& source, const PhaseOptions& options) {
    PhaseResult result;
    source_ = &source;
    options_ = options;
    result_ = &result;
    issued_ = 0;
    completed_ = 0;
    scheduler_->reset();

    const std::uint64_t total =
        std::uint64_t{options.cold_transactions} + std::uint64_t{options.hot_transactions};
    const std::uint64_t events_before = sim_.events_processed();
    if (total > 0) {
        for (std::uint32_t u = 0; u < config_.users; ++u) sim_.schedule(sim_.now(), self_, kSubmit, u);
        sim_.run([&] { return completed_ == total; });
    }
    if (!sim_.queue().empty()) throw ModelError("events left over after the phase completed");

    result.peak_admitted = scheduler_->peak_in_use();
    result.events = sim_.events_processed() - events_before;
    result.end_time = sim_.now();
    source_ = nullptr;
    result_ = nullptr;
    return result;
}

clustering::ReclusterResult Engine::reorganize() {
    policy_->demand();
    return policy_->recluster(*db_, placement_);
}

void Engine::handle(sim::Simulator&, const sim::Event& event) {
    switch (event.kind) {
        case kSubmit:
            submit(static_cast<std::uint32_t>(event.payload));
            return;
        case kBegin:
            advance(active_.at(event.payload));
            return;
        case kHoldDone: {
            Txn& t = active_.at(event.payload);
            sim::PassiveResource* r = t.holding;
            t.holding = nullptr;
            if (auto next = r->release(t.id)) {
                const Txn& w = active_.at(*next);
                sim_.schedule_in(w.hold_duration, self_, kHoldDone, w.id);
            }
            switch (t.after) {
                case After::Access: advance(t); return;
                case After::CommitShip: release_locks(t); return;
                case After::Release: finish(t); return;
            }
            return;
        }
        default:
            throw ModelError("transaction pipeline got unknown event kind " + std::to_string(event.kind));
    }
}

void Engine::submit(std::uint32_t user) {
    const std::uint64_t total =
        std::uint64_t{options_.cold_transactions} + std::uint64_t{options_.hot_transactions};
    if (issued_ >= total) return;

    const std::uint64_t id = next_txn_id_++;
    Txn& t = active_[id];
    t.id = id;
    t.index = issued_++;
    t.user = user;
    t.cold = t.index < options_.cold_transactions;
    t.request = source_->next();
    t.submitted = sim_.now();
    t.locked.reserve(t.request.trace.size());
    if (scheduler_->acquire(id)) advance(t);
}

bool Engine::hold(Txn& t, sim::PassiveResource& r, SimTime duration, After after) {
    // Zero-cost activities complete in place.
    if (!(duration > 0.0)) return false;
    t.holding = &r;
    t.hold_duration = duration;
    t.after = after;
    if (r.acquire(t.id)) sim_.schedule_in(duration, self_, kHoldDone, t.id);
    return true;
}

void Engine::advance(Txn& t) {
    const auto& trace = t.request.trace;
    while (t.pos < trace.size()) {
        const Oid oid = trace[t.pos].oid;
        switch (t.stage) {
            case Stage::Lock:
                t.stage = Stage::Fetch;
                if (t.locked.insert(oid).second) {
                    ++t.delta.lock_acquisitions;
                    t.delta.lock_time += config_.lock_acquire_ms;
                    if (hold(t, *processor_, config_.lock_acquire_ms, After::Access)) return;
                }
                [[fallthrough]];
            case Stage::Fetch: {
                if (!db_->contains(oid)) {
                    throw ModelError("transaction " + std::to_string(t.id) +
                                     " references unresolvable oid " + std::to_string(oid.value));
                }
                const PageId page = placement_.page_of(oid);
                ++t.delta.object_accesses;
                const auto r = buffer_.request_page(page);
                t.stage = Stage::Ship;
                t.missed = !r.hit;
                if (r.hit) {
                    ++t.delta.buffer_hits;
                } else {
                    ++t.delta.buffer_misses;
                    ++t.delta.io_count;
                    const SimTime d = disk_access_time(config_);
                    t.delta.disk_time += d;
                    if (hold(t, *disk_, d, After::Access)) return;
                }
                [[fallthrough]];
            }
            case Stage::Ship: {
                std::uint64_t bytes = 0;
                if (config_.system_class == SystemClass::PageServer && t.missed) {
                    bytes = config_.page_size;
                } else if (config_.system_class == SystemClass::ObjectServer) {
                    bytes = db_->object(oid).size;
                }
                t.stage = Stage::Done;
                if (bytes > 0) {
                    const SimTime n = network_transfer_time(config_, bytes);
                    t.delta.network_bytes += bytes;
                    t.delta.network_time += n;
                    if (hold(t, *network_, n, After::Access)) return;
                }
                [[fallthrough]];
            }
            case Stage::Done:
                if (options_.clustering_active) policy_->record_access(oid, t.context);
                ++t.pos;
                t.stage = Stage::Lock;
                break;
        }
    }
    begin_commit(t);
}

void Engine::begin_commit(Txn& t) {
    if (config_.system_class == SystemClass::DbServer) {
        std::uint64_t bytes = 0;
        for (Oid oid : t.locked) bytes += db_->object(oid).size;
        if (bytes > 0) {
            const SimTime n = network_transfer_time(config_, bytes);
            t.delta.network_bytes += bytes;
            t.delta.network_time += n;
            if (hold(t, *network_, n, After::CommitShip)) return;
        }
    }
    release_locks(t);
}

void Engine::release_locks(Txn& t) {
    const SimTime cost = static_cast<double>(t.locked.size()) * config_.lock_release_ms;
    t.delta.lock_time += cost;
    if (hold(t, *processor_, cost, After::Release)) return;
    finish(t);
}

void Engine::finish(Txn& t) {
    t.delta.transactions = 1;
    t.delta.response_time = sim_.now() - t.submitted;
    if (auto next = scheduler_->release(t.id)) sim_.schedule(sim_.now(), self_, kBegin, *next);

    if (t.cold) {
        result_->cold += t.delta;
    } else {
        result_->measured += t.delta;
        TransactionRecord rec;
        rec.index = t.index;
        rec.user = t.user;
        rec.kind = t.request.spec.kind;
        rec.submitted = t.submitted;
        rec.committed = sim_.now();
        rec.delta = t.delta;
        result_->transactions.push_back(rec);
    }
    ++completed_;
    maybe_reorganize(!t.cold);

    const std::uint32_t user = t.user;
    active_.erase(t.id);
    const std::uint64_t total =
        std::uint64_t{options_.cold_transactions} + std::uint64_t{options_.hot_transactions};
    if (issued_ < total) sim_.schedule(sim_.now(), self_, kSubmit, user);
}

void Engine::maybe_reorganize(bool measured) {
    if (!options_.clustering_active || !policy_->should_trigger()) return;
    const auto res = policy_->recluster(*db_, placement_);
    result_->reorganizations.push_back(res.report);
    Metrics& m = measured ? result_->measured : result_->cold;
    m.clustering_overhead_io += res.report.overhead_io;
    m.io_count += res.report.overhead_io;
}

}  // namespace voodb::engine
