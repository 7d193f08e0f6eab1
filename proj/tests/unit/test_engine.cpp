#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "fixtures.hpp"
#include "voodb/engine/config.hpp"
#include "voodb/engine/engine.hpp"
#include "voodb/engine/experiment.hpp"
#include "voodb/errors.hpp"

using namespace voodb;
using namespace voodb::engine;

namespace {

workload::AccessTrace trace_of(std::initializer_list<std::uint32_t> oids) {
    workload::AccessTrace t;
    for (auto o : oids) t.push_back({Oid{o}});
    return t;
}

VoodbConfig texas() {
    VoodbConfig c;
    c.system_class = SystemClass::Centralized;
    c.buffer_pages = 3275;
    c.disk_search_ms = 7.4;
    c.disk_latency_ms = 4.3;
    c.disk_transfer_ms = 0.5;
    c.multiprogramming_level = 1;
    c.lock_acquire_ms = 0.0;
    c.lock_release_ms = 0.0;
    return c;
}

VoodbConfig o2() {
    VoodbConfig c;
    c.system_class = SystemClass::PageServer;
    c.network_bytes_per_s = std::numeric_limits<double>::infinity();
    c.buffer_pages = 3840;
    c.disk_search_ms = 6.3;
    c.disk_latency_ms = 2.99;
    c.disk_transfer_ms = 0.7;
    return c;
}

PhaseResult run_traces(const VoodbConfig& config, const workload::Database& db,
                       std::vector<workload::AccessTrace> traces, std::uint32_t hot,
                       workload::InitialPlacement policy = workload::InitialPlacement::Sequential) {
    Engine engine(config, db, workload::place_objects(db, policy, config.page_size), 1);
    FixedSource source(std::move(traces));
    return engine.run_phase(source, {0, hot, true});
}

ExperimentSetup small_setup(std::uint32_t hot = 50) {
    ExperimentSetup s;
    s.database.num_classes = 10;
    s.database.num_objects = 1000;
    s.workload.hot_transactions = hot;
    s.system.buffer_pages = 60;
    s.replications = 4;
    return s;
}

}  // namespace

TEST_CASE("disk access time is the sum of its three components") {
    CHECK(disk_access_time(VoodbConfig{}) == doctest::Approx(12.2));
    CHECK(disk_access_time(o2()) == doctest::Approx(9.99));
    VoodbConfig zero;
    zero.disk_search_ms = zero.disk_latency_ms = zero.disk_transfer_ms = 0.0;
    CHECK(disk_access_time(zero) == 0.0);
}

TEST_CASE("network transfer time") {
    CHECK(network_transfer_time(o2(), 4096) == 0.0);
    CHECK(network_transfer_time(VoodbConfig{}, 4096) == doctest::Approx(3.90625));
    CHECK(network_transfer_time(texas(), 4096) == 0.0);
}

TEST_CASE("configuration invariants") {
    VoodbConfig c;
    CHECK_NOTHROW(c.validate());
    c.users = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.multiprogramming_level = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.buffer_pages = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.page_size = 3000;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.disk_latency_ms = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.network_bytes_per_s = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("three uncached pages cost three disk accesses") {
    const auto db = fixtures::make_db({3000, 3000, 3000});
    const auto r = run_traces(VoodbConfig{}, db, {trace_of({0, 1, 2})}, 1);
    CHECK(r.measured.transactions == 1);
    CHECK(r.measured.io_count == 3);
    CHECK(r.measured.buffer_misses == 3);
    CHECK(r.measured.disk_time == doctest::Approx(3 * 12.2));
    CHECK(r.measured.network_bytes == 3 * 4096);
    CHECK(r.measured.response_time ==
          doctest::Approx(3 * 12.2 + 3 * 3.90625 + 3 * 0.5 + 3 * 0.5));
}

TEST_CASE("texas: three objects on one page, free locks") {
    const auto db = fixtures::make_db({1000, 1000, 1000});
    const auto r = run_traces(texas(), db, {trace_of({0, 1, 2})}, 1);
    CHECK(r.measured.io_count == 1);
    CHECK(r.measured.lock_acquisitions == 3);
    CHECK(r.measured.lock_time == 0.0);
    CHECK(r.measured.network_time == 0.0);
    CHECK(r.measured.buffer_hits == 2);
}

TEST_CASE("o2: three objects on one page, 3 ms of locking") {
    const auto db = fixtures::make_db({1000, 1000, 1000});
    const auto r = run_traces(o2(), db, {trace_of({0, 1, 2})}, 1);
    CHECK(r.measured.io_count == 1);
    CHECK(r.measured.lock_time == doctest::Approx(3.0));
    CHECK(r.measured.network_time == 0.0);
    CHECK(r.measured.response_time == doctest::Approx(9.99 + 3.0));
}

TEST_CASE("locks are taken once per distinct object") {
    const auto db = fixtures::make_db({1000, 1000});
    const auto r = run_traces(o2(), db, {trace_of({0, 1, 0, 1, 0})}, 1);
    CHECK(r.measured.lock_acquisitions == 2);
    CHECK(r.measured.lock_time == doctest::Approx(2.0));
    CHECK(r.measured.object_accesses == 5);
}

TEST_CASE("an empty trace costs nothing") {
    const auto db = fixtures::make_db({1000});
    const auto r = run_traces(VoodbConfig{}, db, {workload::AccessTrace{}}, 1);
    CHECK(r.measured.transactions == 1);
    CHECK(r.measured.io_count == 0);
    CHECK(r.measured.response_time == 0.0);
    CHECK(r.measured.lock_time == 0.0);
    CHECK(r.measured.buffer_hits + r.measured.buffer_misses == 0);
}

TEST_CASE("an unresolvable object is a model error") {
    const auto db = fixtures::make_db({1000});
    CHECK_THROWS_AS(run_traces(VoodbConfig{}, db, {trace_of({0, 9})}, 1), ModelError);
}

TEST_CASE("object and database servers ship objects, not pages") {
    const auto db = fixtures::make_db({100, 200, 300});
    VoodbConfig obj;
    obj.system_class = SystemClass::ObjectServer;
    const auto a = run_traces(obj, db, {trace_of({0, 1, 2, 1})}, 1);
    CHECK(a.measured.network_bytes == 100 + 200 + 300 + 200);
    VoodbConfig dbs;
    dbs.system_class = SystemClass::DbServer;
    const auto b = run_traces(dbs, db, {trace_of({0, 1, 2, 1})}, 1);
    CHECK(b.measured.network_bytes == 600);
    CHECK(b.measured.network_time == doctest::Approx(1000.0 * 600 / kBytesPerMegabyte));
}

TEST_CASE("one user, 1000 transactions") {
    auto s = small_setup(1000);
    s.database.num_objects = 500;
    const auto base = build_base(s);
    const auto r = run_replication(s, base, 5);
    CHECK(r.metrics.transactions == 1000);
}

TEST_CASE("several users share the transaction count") {
    auto s = small_setup(10);
    s.system.users = 2;
    const auto base = build_base(s);
    Engine engine(s.system, base.db, base.placement, 3);
    WorkloadSource source(s.workload, base.db, 3);
    const auto r = engine.run_phase(source, {0, 10, false});
    CHECK(r.measured.transactions == 10);
    std::set<std::uint32_t> users;
    for (const auto& t : r.transactions) users.insert(t.user);
    CHECK(users.size() == 2);
}

TEST_CASE("admission never exceeds the multiprogramming level") {
    auto s = small_setup(200);
    s.system.users = 12;
    s.system.multiprogramming_level = 3;
    const auto base = build_base(s);
    Engine engine(s.system, base.db, base.placement, 8);
    std::uint32_t peak = 0;
    SimTime last = 0.0;
    bool monotone = true;
    engine.simulator().set_observer([&](const sim::Event& e) {
        monotone &= e.time >= last;
        last = e.time;
    });
    WorkloadSource source(s.workload, base.db, 8);
    const auto r = engine.run_phase(source, {0, 200, false});
    peak = r.peak_admitted;
    CHECK(peak == 3);
    CHECK(monotone);
    CHECK(r.measured.transactions == 200);
}

TEST_CASE("cold transactions are excluded from the measured metrics") {
    auto s = small_setup(10);
    s.workload.cold_transactions = 5;
    const auto base = build_base(s);
    Engine engine(s.system, base.db, base.placement, 2);
    WorkloadSource source(s.workload, base.db, 2);
    const auto r = engine.run_phase(source, {5, 10, false});
    CHECK(r.cold.transactions == 5);
    CHECK(r.measured.transactions == 10);
    CHECK(r.transactions.size() == 10);
    for (const auto& t : r.transactions) CHECK(t.index >= 5);
}

TEST_CASE("zero transactions give zero metrics") {
    auto s = small_setup(0);
    const auto base = build_base(s);
    const auto r = run_replication(s, base, 1);
    CHECK(r.metrics == Metrics{});
}

TEST_CASE("metric identities and response-time accounting") {
    for (auto cls : {SystemClass::Centralized, SystemClass::ObjectServer, SystemClass::PageServer, SystemClass::DbServer}) {
        for (std::uint32_t users : {1u, 4u}) {
            auto s = small_setup(80);
            s.system.system_class = cls;
            s.system.users = users;
            s.system.multiprogramming_level = 2;
            const auto base = build_base(s);
            Engine engine(s.system, base.db, base.placement, 11);
            WorkloadSource source(s.workload, base.db, 11);
            const auto r = engine.run_phase(source, {0, 80, false});
            const auto& m = r.measured;
            CHECK(m.buffer_hits + m.buffer_misses == m.object_accesses);
            CHECK(m.io_count == m.buffer_misses + m.clustering_overhead_io + m.write_backs);
            if (cls == SystemClass::Centralized) CHECK(m.network_time == 0.0);
            if (cls == SystemClass::PageServer) CHECK(m.network_bytes == m.buffer_misses * s.system.page_size);
            for (const auto& t : r.transactions) {
                const auto& d = t.delta;
                const double busy = d.lock_time + d.disk_time + d.network_time;
                CHECK(d.response_time >= busy - 1e-9);
                if (users == 1) CHECK(d.response_time == doctest::Approx(busy));
            }
        }
    }
}

TEST_CASE("an unbounded buffer misses once per distinct page") {
    auto s = small_setup(300);
    const auto base = build_base(s);
    s.system.buffer_pages = static_cast<std::uint32_t>(base.placement.page_count());
    Engine engine(s.system, base.db, base.placement, 4);
    WorkloadSource source(s.workload, base.db, 4);
    const auto r = engine.run_phase(source, {0, 300, false});

    WorkloadSource again(s.workload, base.db, 4);
    std::set<PageId> touched;
    for (int i = 0; i < 300; ++i) {
        for (const auto& a : again.next().trace) touched.insert(base.placement.page_of(a.oid));
    }
    CHECK(r.measured.io_count == touched.size());
}

TEST_CASE("same seed, same replication") {
    auto s = small_setup(60);
    s.system.users = 3;
    const auto base = build_base(s);
    CHECK(run_replication(s, base, 17) == run_replication(s, base, 17));
    CHECK_FALSE(run_replication(s, base, 17).metrics == run_replication(s, base, 18).metrics);
}

TEST_CASE("disabled clustering matches a build without a clustering policy") {
    auto s = small_setup(100);
    const auto base = build_base(s);
    Engine with(s.system, base.db, base.placement, 9);
    Engine without(s.system, base.db, base.placement, std::make_unique<clustering::NoClustering>(), 9);
    WorkloadSource a(s.workload, base.db, 9), b(s.workload, base.db, 9);
    const auto ra = with.run_phase(a, {0, 100, true});
    const auto rb = without.run_phase(b, {0, 100, true});
    CHECK(ra == rb);
    CHECK(ra.reorganizations.empty());
    CHECK(with.placement().pages().size() == base.placement.pages().size());
}

TEST_CASE("inline reorganizations are charged to the I/O total") {
    auto s = small_setup(200);
    s.system.clustering.kind = clustering::ClusteringKind::CoAccess;
    s.system.clustering.trigger_threshold = 2000;
    s.workload.hot_roots = 20;
    const auto base = build_base(s);
    Engine engine(s.system, base.db, base.placement, 6);
    WorkloadSource source(s.workload, base.db, 6);
    const auto r = engine.run_phase(source, {0, 200, true});
    REQUIRE_FALSE(r.reorganizations.empty());
    std::uint64_t overhead = 0;
    for (const auto& rep : r.reorganizations) overhead += rep.overhead_io;
    CHECK(r.measured.clustering_overhead_io == overhead);
    CHECK(r.measured.io_count == r.measured.buffer_misses + overhead);
    CHECK_NOTHROW(engine.placement().check_invariants(base.db));
}

TEST_CASE("experiment reports and parallel replications") {
    auto s = small_setup(40);
    const auto seeds = replication_seeds(s.seed, 6);
    CHECK(std::set<std::uint64_t>(seeds.begin(), seeds.end()).size() == 6);
    const auto serial = run_experiment(s, seeds, 1);
    const auto parallel = run_experiment(s, seeds, 3);
    CHECK(serial.replications == parallel.replications);
    const auto& io = serial.metric("io_count");
    CHECK(io.n == 6);
    REQUIRE(io.half_width);
    double sum = 0.0;
    for (const auto& r : serial.replications) sum += static_cast<double>(r.metrics.io_count);
    CHECK(io.mean == doctest::Approx(sum / 6));
    CHECK_FALSE(serial.clustering.has_value());
    CHECK_THROWS_AS(serial.metric("nope"), Error);

    const std::uint64_t twice[] = {seeds[0], seeds[0]};
    const auto same = run_experiment(s, twice);
    CHECK(same.replications[0].metrics == same.replications[1].metrics);
    CHECK(*same.metric("io_count").half_width == 0.0);
}

TEST_CASE("a single replication has no half-width") {
    auto s = small_setup(20);
    s.replications = 1;
    const auto r = run_experiment(s);
    CHECK(r.metric("io_count").n == 1);
    CHECK_FALSE(r.metric("io_count").half_width.has_value());
}

TEST_CASE("clustering experiments report pre, overhead, post and gain") {
    auto s = small_setup(150);
    s.system.clustering.kind = clustering::ClusteringKind::CoAccess;
    s.system.clustering.trigger_threshold = 0;
    s.workload.hot_roots = 20;
    s.workload.p_set = s.workload.p_simple = s.workload.p_stochastic = 0.0;
    s.workload.p_hierarchy = 1.0;
    s.workload.hierarchy_depth = 3;
    const auto r = run_experiment(s);
    REQUIRE(r.clustering);
    const auto& c = *r.clustering;
    CHECK(c.gain == doctest::Approx(c.pre_clustering_io.mean / c.post_clustering_io.mean));
    CHECK(c.post_clustering_io.mean < c.pre_clustering_io.mean);
    CHECK(c.clusters.reorganizations == s.replications);
    CHECK(c.clusters.mean_clusters >= 1.0);
    for (const auto& rep : r.replications) {
        REQUIRE(rep.clustering);
        CHECK(rep.clustering->pre_clustering_io == rep.metrics.buffer_misses);
        CHECK(rep.clustering->post_clustering_io == rep.clustering->post.buffer_misses);
        CHECK_FALSE(rep.clustering->final_clusters.empty());
    }
}
