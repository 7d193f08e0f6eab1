#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "voodb/types.hpp"
#include "voodb/workload/database.hpp"

namespace voodb::workload {

enum class InitialPlacement { Sequential, OptimizedSequential };

struct Page {
    std::vector<Oid> objects;  // in layout order
    std::uint32_t used_bytes = 0;
};

// Object-to-page mapping for fixed-size disk pages.
class Placement {
public:
    Placement() = default;
    Placement(std::uint32_t page_size, std::size_t num_objects);

    std::uint32_t page_size() const noexcept { return page_size_; }
    const std::vector<Page>& pages() const noexcept { return pages_; }
    std::size_t page_count() const noexcept { return pages_.size(); }
    std::size_t nonempty_page_count() const noexcept;
    std::size_t placed_count() const noexcept { return placed_; }

    bool is_placed(Oid oid) const noexcept;

    // Throws ModelError for an OID with no page.
    PageId page_of(Oid oid) const;

    // Appends objects to fresh pages in `order`, starting a new page when the
    // next object does not fit. Objects must be unplaced.
    void pack(const Database& db, std::span<const Oid> order);

    struct RelocationSummary {
        std::size_t source_pages = 0;  // distinct old pages objects were taken from
        std::size_t new_pages = 0;     // pages appended for the moved objects
    };

    // Takes `order` off their current pages and packs them onto new pages
    // appended after the existing ones. Objects not in `order` stay put.
    RelocationSummary relocate(const Database& db, std::span<const Oid> order);

    // Throws ModelError when an object is unplaced or on two pages, a page
    // overflows, or recorded fill disagrees with object sizes.
    void check_invariants(const Database& db) const;

private:
    std::uint32_t page_size_ = 4096;
    std::vector<Page> pages_;
    std::vector<std::uint32_t> page_of_;  // kUnplaced or page index
    std::size_t placed_ = 0;

    static constexpr std::uint32_t kUnplaced = 0xffffffffu;
};

// Sequential: OID creation order. OptimizedSequential: depth-first preorder
// along each object's reference list, starting from each still-unplaced
// object in OID order. Throws ModelError if an object exceeds page_size.
Placement place_objects(const Database& db, InitialPlacement policy, std::uint32_t page_size);

// The object order each initial policy lays out.
std::vector<Oid> placement_order(const Database& db, InitialPlacement policy);

}  // namespace voodb::workload
