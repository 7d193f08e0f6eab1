#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "voodb/sim/random.hpp"
#include "voodb/types.hpp"
#include "voodb/workload/database.hpp"

namespace voodb::workload {

enum class TransactionKind : std::uint8_t {
    SetAccess = 0,
    SimpleTraversal = 1,
    HierarchyTraversal = 2,
    StochasticTraversal = 3,
};
inline constexpr std::size_t kTransactionKindCount = 4;

std::string_view to_string(TransactionKind kind) noexcept;

// OCB workload knobs. Defaults are the reference workload.
struct WorkloadParams {
    std::uint32_t cold_transactions = 0;    // COLDN
    std::uint32_t hot_transactions = 1000;  // HOTN
    double p_set = 0.25;                    // PSET
    double p_simple = 0.25;                 // PSIMPLE
    double p_hierarchy = 0.25;              // PHIER
    double p_stochastic = 0.25;             // PSTOCH
    std::uint32_t set_depth = 3;            // SETDEPTH
    std::uint32_t simple_depth = 3;         // SIMDEPTH
    std::uint32_t hierarchy_depth = 5;      // HIEDEPTH
    std::uint32_t stochastic_depth = 50;    // STODEPTH
    // Number of distinct transaction roots; 0 draws roots over the whole base.
    std::uint32_t hot_roots = 0;

    double probability(TransactionKind kind) const noexcept;
    std::uint32_t depth(TransactionKind kind) const noexcept;
    std::uint32_t total_transactions() const noexcept { return cold_transactions + hot_transactions; }

    // Throws ConfigError: negative probabilities or a sum away from 1.
    void validate() const;
};

struct TransactionSpec {
    TransactionKind kind = TransactionKind::SetAccess;
    Oid root;
    std::uint32_t depth = 0;
};

enum class AccessOp : std::uint8_t { Read, Write };

struct Access {
    Oid oid;
    AccessOp op = AccessOp::Read;
    friend bool operator==(const Access&, const Access&) = default;
};

using AccessTrace = std::vector<Access>;

// Kind from the configured mix, root uniform over `roots` (or over the whole
// base when `roots` is empty), depth from the kind.
TransactionSpec draw_transaction(const WorkloadParams& params, sim::RandomStream& rng,
                                 const Database& db, std::span<const Oid> roots = {});

// Fixed candidate root set of `count` distinct objects (all objects when
// count is 0 or >= NO), in draw order.
std::vector<Oid> choose_root_set(const Database& db, std::uint32_t count, sim::RandomStream& rng);

// Expands one transaction kind into its object-access sequence.
class Traversal {
public:
    virtual ~Traversal() = default;
    virtual AccessTrace expand(Oid root, std::uint32_t depth, const Database& db,
                               sim::RandomStream& rng) const = 0;
};

// Root, then the first reference of each visited object, up to `depth` hops.
class SetAccessTraversal : public Traversal {
public:
    AccessTrace expand(Oid root, std::uint32_t depth, const Database& db,
                       sim::RandomStream& rng) const override;
};

// Depth-first along all references to `depth`, each object once.
class SimpleTraversal : public Traversal {
public:
    AccessTrace expand(Oid root, std::uint32_t depth, const Database& db,
                       sim::RandomStream& rng) const override;
};

// Breadth-first: every object within `depth` hops, each once.
class HierarchyTraversal : public Traversal {
public:
    AccessTrace expand(Oid root, std::uint32_t depth, const Database& db,
                       sim::RandomStream& rng) const override;
};

// Random walk of `depth` steps choosing one reference uniformly per step;
// ends early at an object with no references.
class StochasticTraversal : public Traversal {
public:
    AccessTrace expand(Oid root, std::uint32_t depth, const Database& db,
                       sim::RandomStream& rng) const override;
};

// One strategy per transaction kind; any of them can be swapped out.
class TraversalSet {
public:
    TraversalSet();

    void replace(TransactionKind kind, std::shared_ptr<const Traversal> traversal);
    const Traversal& get(TransactionKind kind) const {
        return *strategies_[static_cast<std::size_t>(kind)];
    }

    AccessTrace expand(const TransactionSpec& spec, const Database& db, sim::RandomStream& rng) const {
        return get(spec.kind).expand(spec.root, spec.depth, db, rng);
    }

private:
    std::array<std::shared_ptr<const Traversal>, kTransactionKindCount> strategies_;
};

// Expansion with the built-in strategies. Throws ModelError for a missing root.
AccessTrace expand_transaction(const TransactionSpec& spec, const Database& db,
                               sim::RandomStream& rng);

}  // namespace voodb::workload
