#include "voodb/clustering/clustering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <tuple>
#include <utility>

#include "voodb/errors.hpp"

namespace voodb::clustering {

std::string to_string(ClusteringKind kind) {
    return kind == ClusteringKind::None ? "NONE" : "COACCESS";
}

std::string to_string(OidMode mode) { return mode == OidMode::Logical ? "LOGICAL" : "PHYSICAL"; }

void UsageStats::record(Oid oid, std::optional<Oid> previous) {
    ++access_counts_[oid];
    ++window_accesses_;
    if (previous && *previous != oid) ++pair_counts_[pair_key(*previous, oid)];
}

void UsageStats::clear() {
    access_counts_.clear();
    pair_counts_.clear();
    window_accesses_ = 0;
}

std::uint64_t UsageStats::access_count(Oid oid) const {
    auto it = access_counts_.find(oid);
    return it == access_counts_.end() ? 0 : it->second;
}

std::uint64_t UsageStats::pair_count(Oid first, Oid second) const {
    auto it = pair_counts_.find(pair_key(first, second));
    return it == pair_counts_.end() ? 0 : it->second;
}

CoAccessClustering::CoAccessClustering(const ClusteringParams& params) : params_(params) {
    if (params_.link_threshold == 0) throw ConfigError("cluster link threshold must be >= 1");
}

void CoAccessClustering::record_access(Oid oid, AccessContext& context) {
    stats_.record(oid, context.previous);
    context.previous = oid;
}

bool CoAccessClustering::should_trigger() const {
    if (demanded_) return true;
    return params_.trigger_threshold > 0 && stats_.window_accesses() >= params_.trigger_threshold;
}

namespace {

class DisjointSets {
public:
    std::uint32_t find(std::uint32_t x) {
        std::uint32_t root = x;
        for (;;) {
            const std::uint32_t up = parent_.try_emplace(root, root).first->second;
            if (up == root) break;
            root = up;
        }
        while (x != root) {
            auto& up = parent_[x];
            x = std::exchange(up, root);
        }
        return root;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;  // smaller id becomes the representative
    }

private:
    std::unordered_map<std::uint32_t, std::uint32_t> parent_;
};

struct Link {
    std::uint64_t weight;
    Oid a;  // a < b
    Oid b;
};

// Heaviest-first, then by endpoint ids.
bool heavier(const Link& x, const Link& y) {
    return std::tie(y.weight, x.a, x.b) < std::tie(x.weight, y.a, y.b);
}

// Greedy chain: from the current object follow its heaviest link to an
// unplaced neighbour; when stuck, restart at the heaviest link that still
// touches an unplaced object.
std::vector<Oid> chain_order(const std::vector<Link>& links) {
    std::map<Oid, std::vector<std::pair<std::uint64_t, Oid>>> adjacency;
    for (const Link& l : links) {
        adjacency[l.a].emplace_back(l.weight, l.b);
        adjacency[l.b].emplace_back(l.weight, l.a);
    }
    for (auto& [oid, nbrs] : adjacency) {
        std::sort(nbrs.begin(), nbrs.end(), [](const auto& x, const auto& y) {
            return x.first != y.first ? x.first > y.first : x.second < y.second;
        });
    }

    std::vector<Oid> order;
    std::map<Oid, bool> placed;
    for (const auto& [oid, nbrs] : adjacency) placed[oid] = false;
    std::size_t restart = 0;
    while (order.size() < adjacency.size()) {
        while (placed[links[restart].a] && placed[links[restart].b]) ++restart;
        Oid cur = placed[links[restart].a] ? links[restart].b : links[restart].a;
        for (;;) {
            placed[cur] = true;
            order.push_back(cur);
            std::optional<Oid> next;
            for (const auto& [w, nbr] : adjacency[cur]) {
                if (!placed[nbr]) {
                    next = nbr;
                    break;
                }
            }
            if (!next) break;
            cur = *next;
        }
    }
    return order;
}

}  // namespace

std::vector<Cluster> CoAccessClustering::form_clusters() const {
    // Symmetrize: the link weight is the count in both directions.
    std::unordered_map<std::uint64_t, std::uint64_t> undirected;
    for (const auto& [key, count] : stats_.pair_counts()) {
        const auto first = static_cast<std::uint32_t>(key >> 32);
        const auto second = static_cast<std::uint32_t>(key & 0xffffffffu);
        const Oid a{std::min(first, second)};
        const Oid b{std::max(first, second)};
        undirected[UsageStats::pair_key(a, b)] += count;
    }

    std::vector<Link> links;
    DisjointSets sets;
    for (const auto& [key, weight] : undirected) {
        if (weight < params_.link_threshold) continue;
        const Oid a{static_cast<std::uint32_t>(key >> 32)};
        const Oid b{static_cast<std::uint32_t>(key & 0xffffffffu)};
        links.push_back({weight, a, b});
        sets.unite(a.value, b.value);
    }
    std::sort(links.begin(), links.end(), heavier);

    // Components keyed by their smallest member, so cluster numbering is
    // independent of hash order.
    std::map<std::uint32_t, std::vector<Link>> components;
    for (const Link& l : links) components[sets.find(l.a.value)].push_back(l);

    std::vector<Cluster> clusters;
    clusters.reserve(components.size());
    for (const auto& [rep, component_links] : components) {
        Cluster c;
        c.id = static_cast<std::uint32_t>(clusters.size() + 1);
        c.members = chain_order(component_links);
        clusters.push_back(std::move(c));
    }
    return clusters;
}

ReclusterResult CoAccessClustering::recluster(const workload::Database& db,
                                              workload::Placement& placement) {
    ReclusterResult result;
    demanded_ = false;
    result.clusters = form_clusters();
    const std::size_t base_pages = placement.nonempty_page_count();

    std::vector<Oid> order;
    for (const auto& c : result.clusters) order.insert(order.end(), c.members.begin(), c.members.end());

    auto& report = result.report;
    report.n_clusters = result.clusters.size();
    if (report.n_clusters > 0) {
        report.mean_objects_per_cluster =
            static_cast<double>(order.size()) / static_cast<double>(report.n_clusters);
        const auto moved = placement.relocate(db, order);
        report.pages_read = moved.source_pages;
        report.pages_written = moved.new_pages;
        if (params_.oid_mode == OidMode::Physical) report.scan_pages = base_pages;
    }
    report.overhead_io = report.pages_read + report.pages_written + report.scan_pages;
    stats_.clear();
    return result;
}

std::unique_ptr<ClusteringPolicy> make_policy(const ClusteringParams& params) {
    if (params.kind == ClusteringKind::None) return std::make_unique<NoClustering>();
    return std::make_unique<CoAccessClustering>(params);
}

ClusterSummary summarize(std::span<const ClusterReport> reports) {
    ClusterSummary s;
    s.reorganizations = reports.size();
    if (reports.empty()) return s;
    double clusters = 0.0;
    double per_cluster = 0.0;
    std::size_t with_clusters = 0;
    for (const auto& r : reports) {
        clusters += static_cast<double>(r.n_clusters);
        s.total_overhead_io += r.overhead_io;
        if (r.n_clusters > 0) {
            per_cluster += r.mean_objects_per_cluster;
            ++with_clusters;
        }
    }
    s.mean_clusters = clusters / static_cast<double>(reports.size());
    if (with_clusters > 0) s.mean_objects_per_cluster = per_cluster / static_cast<double>(with_clusters);
    return s;
}

void write_cluster_dump(std::ostream& out, std::span<const Cluster> clusters) {
    for (const auto& c : clusters) {
        out << c.id;
        for (Oid oid : c.members) out << ' ' << oid.value;
        out << '\n';
    }
}

}  // namespace voodb::clustering
