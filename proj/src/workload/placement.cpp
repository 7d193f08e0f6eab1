#include "voodb/workload/placement.hpp"

#include <algorithm>
#include <string>

#include "voodb/errors.hpp"

namespace voodb::workload {

Placement::Placement(std::uint32_t page_size, std::size_t num_objects)
    : page_size_(page_size), page_of_(num_objects, kUnplaced) {
    if (page_size_ == 0) throw ModelError("page size must be positive");
}

std::size_t Placement::nonempty_page_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(pages_.begin(), pages_.end(), [](const Page& p) { return !p.objects.empty(); }));
}

bool Placement::is_placed(Oid oid) const noexcept {
    return oid.value < page_of_.size() && page_of_[oid.value] != kUnplaced;
}

PageId Placement::page_of(Oid oid) const {
    if (!is_placed(oid)) throw ModelError("object " + std::to_string(oid.value) + " has no page");
    return PageId{page_of_[oid.value]};
}

void Placement::pack(const Database& db, std::span<const Oid> order) {
    if (page_of_.size() < db.size()) page_of_.resize(db.size(), kUnplaced);
    bool fresh = true;  // the first object always opens a new page
    for (Oid oid : order) {
        const auto& obj = db.object(oid);
        if (obj.size > page_size_) {
            throw ModelError("object " + std::to_string(oid.value) + " (" +
                             std::to_string(obj.size) + " B) exceeds page size " +
                             std::to_string(page_size_));
        }
        if (is_placed(oid)) throw ModelError("object " + std::to_string(oid.value) + " placed twice");
        if (fresh || pages_.back().used_bytes + obj.size > page_size_) {
            pages_.emplace_back();
            fresh = false;
        }
        Page& page = pages_.back();
        page.objects.push_back(oid);
        page.used_bytes += obj.size;
        page_of_[oid.value] = static_cast<std::uint32_t>(pages_.size() - 1);
        ++placed_;
    }
}

Placement::RelocationSummary Placement::relocate(const Database& db, std::span<const Oid> order) {
    RelocationSummary summary;
    std::vector<std::uint32_t> touched;
    for (Oid oid : order) {
        const std::uint32_t p = page_of(oid).value;
        touched.push_back(p);
        Page& page = pages_[p];
        page.objects.erase(std::find(page.objects.begin(), page.objects.end(), oid));
        page.used_bytes -= db.object(oid).size;
        page_of_[oid.value] = kUnplaced;
        --placed_;
    }
    std::sort(touched.begin(), touched.end());
    summary.source_pages =
        static_cast<std::size_t>(std::unique(touched.begin(), touched.end()) - touched.begin());

    const std::size_t before = pages_.size();
    pack(db, order);
    summary.new_pages = pages_.size() - before;
    return summary;
}

void Placement::check_invariants(const Database& db) const {
    std::vector<int> seen(db.size(), 0);
    for (std::size_t p = 0; p < pages_.size(); ++p) {
        std::uint64_t bytes = 0;
        for (Oid oid : pages_[p].objects) {
            if (!db.contains(oid)) throw ModelError("page holds unknown object");
            if (++seen[oid.value] > 1) {
                throw ModelError("object " + std::to_string(oid.value) + " on two pages");
            }
            if (page_of_[oid.value] != p) throw ModelError("page index out of sync");
            bytes += db.object(oid).size;
        }
        if (bytes != pages_[p].used_bytes) throw ModelError("page fill bookkeeping mismatch");
        if (bytes > page_size_) throw ModelError("page " + std::to_string(p) + " overflows");
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i] == 0) throw ModelError("object " + std::to_string(i) + " is not placed");
    }
}

std::vector<Oid> placement_order(const Database& db, InitialPlacement policy) {
    std::vector<Oid> order;
    order.reserve(db.size());
    if (policy == InitialPlacement::Sequential) {
        for (const auto& o : db.objects()) order.push_back(o.oid);
        return order;
    }

    // Iterative preorder DFS; checking `visited` on pop reproduces the
    // recursive visit order.
    std::vector<bool> visited(db.size(), false);
    std::vector<Oid> stack;
    for (const auto& start : db.objects()) {
        if (visited[start.oid.value]) continue;
        stack.push_back(start.oid);
        while (!stack.empty()) {
            const Oid cur = stack.back();
            stack.pop_back();
            if (visited[cur.value]) continue;
            visited[cur.value] = true;
            order.push_back(cur);
            const auto& refs = db.object(cur).refs;
            for (auto it = refs.rbegin(); it != refs.rend(); ++it) {
                if (!visited[it->value]) stack.push_back(*it);
            }
        }
    }
    return order;
}

Placement place_objects(const Database& db, InitialPlacement policy, std::uint32_t page_size) {
    Placement placement(page_size, db.size());
    const auto order = placement_order(db, policy);
    placement.pack(db, order);
    return placement;
}

}  // namespace voodb::workload
