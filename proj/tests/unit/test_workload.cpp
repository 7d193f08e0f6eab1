#include <doctest.h>

#include <array>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "voodb/errors.hpp"
#include "voodb/workload/database.hpp"
#include "voodb/workload/placement.hpp"
#include "voodb/workload/transaction.hpp"

using namespace voodb;
using namespace voodb::workload;

TEST_CASE("full-size base is about 20 MB") {
    const auto db = generate_database(50, 20000, 1);
    CHECK(db.size() == 20000);
    CHECK(db.classes().size() == 50);
    const double mb = static_cast<double>(db.total_bytes()) / 1e6;
    CHECK(mb > 18.0);
    CHECK(mb < 22.0);
    std::set<std::uint32_t> classes_used;
    for (const auto& o : db.objects()) {
        REQUIRE(o.size >= 50);
        REQUIRE(o.size <= 1950);
        REQUIRE(o.refs.size() == 3);
        std::set<Oid> distinct(o.refs.begin(), o.refs.end());
        REQUIRE(distinct.size() == 3);
        REQUIRE_FALSE(distinct.contains(o.oid));
        for (Oid r : o.refs) REQUIRE(db.contains(r));
        classes_used.insert(o.class_id);
    }
    CHECK(classes_used.size() == 50);
}

TEST_CASE("minimal base has one object and no references") {
    const auto db = generate_database(1, 1, 7);
    REQUIRE(db.size() == 1);
    CHECK(db.object(Oid{0}).refs.empty());
    sim::RandomStream rng(1, 0);
    for (auto kind : {TransactionKind::SetAccess, TransactionKind::SimpleTraversal,
                      TransactionKind::HierarchyTraversal, TransactionKind::StochasticTraversal}) {
        const auto trace = expand_transaction({kind, Oid{0}, 50}, db, rng);
        CHECK(trace.size() == 1);
    }
}

TEST_CASE("database generation is deterministic") {
    const auto a = generate_database(20, 1000, 99);
    const auto b = generate_database(20, 1000, 99);
    const auto c = generate_database(20, 1000, 100);
    std::ostringstream sa, sb, sc;
    write_snapshot(sa, a);
    write_snapshot(sb, b);
    write_snapshot(sc, c);
    CHECK(sa.str() == sb.str());
    CHECK(sa.str() != sc.str());
}

TEST_CASE("fewer objects than classes is a configuration error") {
    CHECK_THROWS_AS(generate_database(50, 49, 1), ConfigError);
    CHECK_THROWS_AS(generate_database(0, 10, 1), ConfigError);
}

TEST_CASE("snapshot round trip") {
    const auto db = generate_database(5, 200, 3);
    std::stringstream s;
    write_snapshot(s, db);
    const auto back = read_snapshot(s);
    REQUIRE(back.size() == db.size());
    for (std::size_t i = 0; i < db.size(); ++i) {
        const auto& x = db.objects()[i];
        const auto& y = back.objects()[i];
        CHECK(x.oid == y.oid);
        CHECK(x.class_id == y.class_id);
        CHECK(x.size == y.size);
        CHECK(x.refs == y.refs);
    }
}

TEST_CASE("database rejects dangling references") {
    CHECK_THROWS_AS(fixtures::make_db({100, 100}, {{5}}), ModelError);
    CHECK_THROWS_AS(fixtures::make_db({0}), ModelError);
    const auto db = fixtures::make_db({100});
    CHECK_THROWS_AS(db.object(Oid{1}), ModelError);
}

TEST_CASE("sequential placement fills pages in creation order") {
    const auto db = fixtures::make_db({2000, 2000, 2000});
    const auto p = place_objects(db, InitialPlacement::Sequential, 4096);
    REQUIRE(p.page_count() == 2);
    CHECK(p.pages()[0].objects == std::vector<Oid>{Oid{0}, Oid{1}});
    CHECK(p.pages()[1].objects == std::vector<Oid>{Oid{2}});
    CHECK(p.pages()[0].used_bytes == 4000);
}

TEST_CASE("optimized sequential follows references depth first") {
    // Chain 0 -> 1 -> 2, created in the order 0, 2, 1 to tell the policies apart.
    const auto db = fixtures::make_db({1000, 1000, 1000}, {{2}, {}, {1}});
    const auto p = place_objects(db, InitialPlacement::OptimizedSequential, 4096);
    REQUIRE(p.page_count() == 1);
    CHECK(p.pages()[0].objects == std::vector<Oid>{Oid{0}, Oid{2}, Oid{1}});
    const auto seq = placement_order(db, InitialPlacement::Sequential);
    CHECK(seq == std::vector<Oid>{Oid{0}, Oid{1}, Oid{2}});
}

TEST_CASE("optimized sequential preorder on a tree") {
    const auto db = fixtures::binary_tree(3);
    const auto order = placement_order(db, InitialPlacement::OptimizedSequential);
    const std::vector<Oid> expected{Oid{0}, Oid{1}, Oid{3}, Oid{4}, Oid{2}, Oid{5}, Oid{6}};
    CHECK(order == expected);
}

TEST_CASE("empty database gives an empty placement") {
    const Database db;
    const auto p = place_objects(db, InitialPlacement::OptimizedSequential, 4096);
    CHECK(p.page_count() == 0);
    CHECK(p.placed_count() == 0);
}

TEST_CASE("objects larger than a page are rejected") {
    const auto db = fixtures::make_db({600});
    CHECK_THROWS_AS(place_objects(db, InitialPlacement::Sequential, 512), ModelError);
}

TEST_CASE("placement totality on generated bases") {
    for (auto policy : {InitialPlacement::Sequential, InitialPlacement::OptimizedSequential}) {
        for (std::uint32_t page : {2048u, 4096u}) {
            const auto db = generate_database(20, 3000, page);
            const auto p = place_objects(db, policy, page);
            CHECK_NOTHROW(p.check_invariants(db));
            std::size_t total = 0;
            std::set<Oid> seen;
            for (const auto& pg : p.pages()) {
                REQUIRE(pg.used_bytes <= page);
                total += pg.objects.size();
                seen.insert(pg.objects.begin(), pg.objects.end());
            }
            CHECK(total == db.size());
            CHECK(seen.size() == db.size());
        }
    }
}

TEST_CASE("relocation moves only the listed objects") {
    const auto db = fixtures::make_db({1000, 1000, 1000, 1000, 1000, 1000});
    auto p = place_objects(db, InitialPlacement::Sequential, 4096);
    REQUIRE(p.page_count() == 2);
    const std::vector<Oid> moved{Oid{5}, Oid{0}};
    const auto summary = p.relocate(db, moved);
    CHECK(summary.source_pages == 2);
    CHECK(summary.new_pages == 1);
    CHECK(p.page_of(Oid{5}) == p.page_of(Oid{0}));
    CHECK(p.page_of(Oid{1}) == PageId{0});
    CHECK(p.pages().back().objects == moved);
    CHECK_NOTHROW(p.check_invariants(db));
}

TEST_CASE("set access depth from the mix") {
    WorkloadParams w;
    w.p_set = 1;
    w.p_simple = w.p_hierarchy = w.p_stochastic = 0;
    const auto db = generate_database(5, 100, 1);
    sim::RandomStream rng(1, 2);
    for (int i = 0; i < 100; ++i) {
        const auto t = draw_transaction(w, rng, db);
        CHECK(t.kind == TransactionKind::SetAccess);
        CHECK(t.depth == 3);
        CHECK(db.contains(t.root));
    }
}

TEST_CASE("stochastic-only mix has depth 50") {
    WorkloadParams w;
    w.p_stochastic = 1;
    w.p_set = w.p_simple = w.p_hierarchy = 0;
    const auto db = generate_database(5, 100, 1);
    sim::RandomStream rng(1, 2);
    const auto t = draw_transaction(w, rng, db);
    CHECK(t.kind == TransactionKind::StochasticTraversal);
    CHECK(t.depth == 50);
}

TEST_CASE("transaction mix frequencies converge") {
    const WorkloadParams w;
    const auto db = generate_database(5, 100, 1);
    sim::RandomStream rng(2024, 2);
    std::array<int, 4> counts{};
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(draw_transaction(w, rng, db).kind)];
    double chi2 = 0.0;
    for (int c : counts) {
        const double f = static_cast<double>(c) / draws;
        CHECK(f >= 0.24);
        CHECK(f <= 0.26);
        const double e = draws * 0.25;
        chi2 += (c - e) * (c - e) / e;
    }
    CHECK(chi2 < 16.266);  // chi-square 3 dof, alpha 0.001
}

TEST_CASE("roots come from the hot set when one is configured") {
    WorkloadParams w;
    w.hot_roots = 10;
    const auto db = generate_database(5, 1000, 1);
    sim::RandomStream root_rng(1, 5), rng(1, 2);
    const auto roots = choose_root_set(db, w.hot_roots, root_rng);
    REQUIRE(roots.size() == 10);
    CHECK(std::set<Oid>(roots.begin(), roots.end()).size() == 10);
    const std::set<Oid> allowed(roots.begin(), roots.end());
    for (int i = 0; i < 500; ++i) CHECK(allowed.contains(draw_transaction(w, rng, db, roots).root));
    CHECK(choose_root_set(db, 0, root_rng).size() == 1000);
}

TEST_CASE("probabilities must sum to one") {
    WorkloadParams w;
    w.p_set = 0.5;
    CHECK_THROWS_AS(w.validate(), ConfigError);
    w.p_simple = 0.0;
    CHECK_NOTHROW(w.validate());
    w.p_simple = -0.25;
    w.p_set = 1.0;
    CHECK_THROWS_AS(w.validate(), ConfigError);
}

TEST_CASE("hierarchy traversal of depth 0 is the root") {
    const auto db = fixtures::binary_tree(4);
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::HierarchyTraversal, Oid{0}, 0}, db, rng);
    REQUIRE(trace.size() == 1);
    CHECK(trace[0].oid == Oid{0});
}

TEST_CASE("hierarchy traversal of a binary tree at depth 3 reaches 15 objects") {
    const auto db = fixtures::binary_tree(5);
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::HierarchyTraversal, Oid{0}, 3}, db, rng);
    CHECK(trace.size() == 15);
    std::set<Oid> distinct;
    for (const auto& a : trace) {
        distinct.insert(a.oid);
        CHECK(a.op == AccessOp::Read);
    }
    CHECK(distinct.size() == 15);
    // breadth first: the first three are the root and its children
    CHECK(trace[1].oid == Oid{1});
    CHECK(trace[2].oid == Oid{2});
}

TEST_CASE("stochastic walk on a two-cycle alternates for 51 accesses") {
    const auto db = fixtures::make_db({100, 100}, {{1}, {0}});
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::StochasticTraversal, Oid{0}, 50}, db, rng);
    REQUIRE(trace.size() == 51);
    for (std::size_t i = 0; i < trace.size(); ++i) CHECK(trace[i].oid == Oid{static_cast<std::uint32_t>(i % 2)});
}

TEST_CASE("stochastic walk ends at an object without references") {
    const auto db = fixtures::make_db({100, 100, 100}, {{1}, {2}, {}});
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::StochasticTraversal, Oid{0}, 50}, db, rng);
    CHECK(trace.size() == 3);
}

TEST_CASE("set access follows first references") {
    const auto db = fixtures::binary_tree(4);
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::SetAccess, Oid{0}, 3}, db, rng);
    REQUIRE(trace.size() == 4);
    CHECK(trace[1].oid == Oid{1});
    CHECK(trace[2].oid == Oid{3});
    CHECK(trace[3].oid == Oid{7});
}

TEST_CASE("simple traversal is a depth-limited preorder visiting each object once") {
    // Diamond 0 -> {1, 2}, 1 -> 3, 2 -> 3
    const auto db = fixtures::make_db({10, 10, 10, 10}, {{1, 2}, {3}, {3}, {}});
    sim::RandomStream rng(1, 3);
    const auto trace = expand_transaction({TransactionKind::SimpleTraversal, Oid{0}, 3}, db, rng);
    std::vector<Oid> oids;
    for (const auto& a : trace) oids.push_back(a.oid);
    CHECK(oids == std::vector<Oid>{Oid{0}, Oid{1}, Oid{3}, Oid{2}});
    const auto shallow = expand_transaction({TransactionKind::SimpleTraversal, Oid{0}, 1}, db, rng);
    CHECK(shallow.size() == 3);
}

TEST_CASE("traces are bounded by the reachable set") {
    const auto db = generate_database(20, 2000, 4);
    sim::RandomStream rng(9, 3);
    for (std::uint32_t r = 0; r < 200; ++r) {
        for (auto kind : {TransactionKind::SetAccess, TransactionKind::SimpleTraversal,
                          TransactionKind::HierarchyTraversal}) {
            const WorkloadParams w;
            const auto depth = w.depth(kind);
            const auto trace = expand_transaction({kind, Oid{r}, depth}, db, rng);
            // reachable within depth, by BFS
            std::set<Oid> reach{Oid{r}};
            std::vector<Oid> frontier{Oid{r}};
            for (std::uint32_t d = 0; d < depth; ++d) {
                std::vector<Oid> next;
                for (Oid o : frontier) {
                    for (Oid x : db.object(o).refs) {
                        if (reach.insert(x).second) next.push_back(x);
                    }
                }
                frontier = next;
            }
            std::set<Oid> distinct;
            for (const auto& a : trace) {
                REQUIRE(reach.contains(a.oid));
                distinct.insert(a.oid);
            }
            CHECK(distinct.size() == trace.size());
            CHECK(trace.size() <= reach.size());
            if (kind == TransactionKind::HierarchyTraversal) CHECK(trace.size() == reach.size());
        }
    }
}

TEST_CASE("a missing root is a model error") {
    const auto db = fixtures::make_db({100});
    sim::RandomStream rng(1, 3);
    CHECK_THROWS_AS(expand_transaction({TransactionKind::HierarchyTraversal, Oid{4}, 2}, db, rng), ModelError);
}

TEST_CASE("traversal strategies are replaceable") {
    struct RootOnly final : Traversal {
        AccessTrace expand(Oid root, std::uint32_t, const Database&, sim::RandomStream&) const override {
            return {Access{root}};
        }
    };
    TraversalSet set;
    set.replace(TransactionKind::HierarchyTraversal, std::make_shared<RootOnly>());
    const auto db = fixtures::binary_tree(4);
    sim::RandomStream rng(1, 3);
    CHECK(set.expand({TransactionKind::HierarchyTraversal, Oid{0}, 3}, db, rng).size() == 1);
    CHECK(set.expand({TransactionKind::SimpleTraversal, Oid{0}, 3}, db, rng).size() == 15);
}
