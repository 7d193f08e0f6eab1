#include "voodb/workload/transaction.hpp"

#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>
#include <utility>

#include "voodb/errors.hpp"

namespace voodb::workload {

std::string_view to_string(TransactionKind kind) noexcept {
    switch (kind) {
        case TransactionKind::SetAccess: return "set";
        case TransactionKind::SimpleTraversal: return "simple";
        case TransactionKind::HierarchyTraversal: return "hierarchy";
        case TransactionKind::StochasticTraversal: return "stochastic";
    }
    return "?";
}

double WorkloadParams::probability(TransactionKind kind) const noexcept {
    switch (kind) {
        case TransactionKind::SetAccess: return p_set;
        case TransactionKind::SimpleTraversal: return p_simple;
        case TransactionKind::HierarchyTraversal: return p_hierarchy;
        case TransactionKind::StochasticTraversal: return p_stochastic;
    }
    return 0.0;
}

std::uint32_t WorkloadParams::depth(TransactionKind kind) const noexcept {
    switch (kind) {
        case TransactionKind::SetAccess: return set_depth;
        case TransactionKind::SimpleTraversal: return simple_depth;
        case TransactionKind::HierarchyTraversal: return hierarchy_depth;
        case TransactionKind::StochasticTraversal: return stochastic_depth;
    }
    return 0;
}

void WorkloadParams::validate() const {
    double sum = 0.0;
    for (std::size_t k = 0; k < kTransactionKindCount; ++k) {
        const double p = probability(static_cast<TransactionKind>(k));
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError(std::string("probability for ") +
                              std::string(to_string(static_cast<TransactionKind>(k))) +
                              " transactions must be in [0, 1]");
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw ConfigError("PSET + PSIMPLE + PHIER + PSTOCH must equal 1 (got " +
                          std::to_string(sum) + ")");
    }
}

TransactionSpec draw_transaction(const WorkloadParams& params, sim::RandomStream& rng,
                                 const Database& db, std::span<const Oid> roots) {
    if (db.empty()) throw ModelError("cannot draw a transaction on an empty database");

    const double u = rng.uniform();
    TransactionKind kind = TransactionKind::SetAccess;
    double cumulative = 0.0;
    for (std::size_t k = 0; k < kTransactionKindCount; ++k) {
        const auto candidate = static_cast<TransactionKind>(k);
        const double p = params.probability(candidate);
        if (p <= 0.0) continue;
        kind = candidate;  // last positive kind absorbs rounding in the sum
        cumulative += p;
        if (u < cumulative) break;
    }

    TransactionSpec spec;
    spec.kind = kind;
    spec.depth = params.depth(kind);
    spec.root = roots.empty() ? Oid{static_cast<std::uint32_t>(rng.below(db.size()))}
                              : roots[rng.below(roots.size())];
    return spec;
}

std::vector<Oid> choose_root_set(const Database& db, std::uint32_t count, sim::RandomStream& rng) {
    std::vector<Oid> all;
    all.reserve(db.size());
    for (const auto& o : db.objects()) all.push_back(o.oid);
    if (count == 0 || count >= all.size()) return all;
    // Partial Fisher-Yates.
    for (std::uint32_t i = 0; i < count; ++i) {
        const auto j = i + rng.below(all.size() - i);
        std::swap(all[i], all[j]);
    }
    all.resize(count);
    return all;
}

AccessTrace SetAccessTraversal::expand(Oid root, std::uint32_t depth, const Database& db,
                                       sim::RandomStream&) const {
    AccessTrace trace;
    std::unordered_set<Oid> visited;
    Oid cur = root;
    db.object(cur);
    for (std::uint32_t level = 0;; ++level) {
        visited.insert(cur);
        trace.push_back({cur});
        if (level == depth) break;
        const auto& refs = db.object(cur).refs;
        if (refs.empty() || visited.contains(refs.front())) break;
        cur = refs.front();
    }
    return trace;
}

AccessTrace SimpleTraversal::expand(Oid root, std::uint32_t depth, const Database& db,
                                    sim::RandomStream&) const {
    AccessTrace trace;
    std::unordered_set<Oid> visited;
    std::vector<std::pair<Oid, std::uint32_t>> stack{{root, 0}};
    db.object(root);
    while (!stack.empty()) {
        const auto [cur, level] = stack.back();
        stack.pop_back();
        if (!visited.insert(cur).second) continue;
        trace.push_back({cur});
        if (level == depth) continue;
        const auto& refs = db.object(cur).refs;
        for (auto it = refs.rbegin(); it != refs.rend(); ++it) {
            if (!visited.contains(*it)) stack.emplace_back(*it, level + 1);
        }
    }
    return trace;
}

AccessTrace HierarchyTraversal::expand(Oid root, std::uint32_t depth, const Database& db,
                                       sim::RandomStream&) const {
    AccessTrace trace;
    std::unordered_set<Oid> visited{root};
    std::deque<std::pair<Oid, std::uint32_t>> frontier{{root, 0}};
    db.object(root);
    while (!frontier.empty()) {
        const auto [cur, level] = frontier.front();
        frontier.pop_front();
        trace.push_back({cur});
        if (level == depth) continue;
        for (Oid r : db.object(cur).refs) {
            if (visited.insert(r).second) frontier.emplace_back(r, level + 1);
        }
    }
    return trace;
}

AccessTrace StochasticTraversal::expand(Oid root, std::uint32_t depth, const Database& db,
                                        sim::RandomStream& rng) const {
    AccessTrace trace;
    trace.reserve(depth + 1);
    db.object(root);
    Oid cur = root;
    trace.push_back({cur});
    for (std::uint32_t step = 0; step < depth; ++step) {
        const auto& refs = db.object(cur).refs;
        if (refs.empty()) break;
        cur = refs[rng.below(refs.size())];
        trace.push_back({cur});
    }
    return trace;
}

TraversalSet::TraversalSet()
    : strategies_{std::make_shared<SetAccessTraversal>(), std::make_shared<SimpleTraversal>(),
                  std::make_shared<HierarchyTraversal>(), std::make_shared<StochasticTraversal>()} {}

void TraversalSet::replace(TransactionKind kind, std::shared_ptr<const Traversal> traversal) {
    if (!traversal) throw ModelError("null traversal strategy");
    strategies_[static_cast<std::size_t>(kind)] = std::move(traversal);
}

AccessTrace expand_transaction(const TransactionSpec& spec, const Database& db,
                               sim::RandomStream& rng) {
    static const TraversalSet defaults;
    return defaults.expand(spec, db, rng);
}

}  // namespace voodb::workload
