#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "voodb/sim/random.hpp"
#include "voodb/types.hpp"

namespace voodb::buffer {

enum class ReplacementKind { Random, Fifo, Lfu, LruK, Clock, Gclock };

struct ReplacementSpec {
    ReplacementKind kind = ReplacementKind::LruK;
    std::uint32_t k = 1;  // history depth, LRU-K only

    friend bool operator==(const ReplacementSpec&, const ReplacementSpec&) = default;
};

// "RANDOM", "FIFO", "LFU", "LRU-2", "CLOCK", "GCLOCK".
std::string to_string(const ReplacementSpec& spec);

// Case-insensitive; "LRU" means LRU-1. Throws ConfigError.
ReplacementSpec parse_replacement(std::string_view text);

struct RequestResult {
    bool hit = false;
    std::optional<PageId> evicted;

    friend bool operator==(const RequestResult&, const RequestResult&) = default;
};

// Victim selection strategy. The pool guarantees on_hit/choose_victim only
// see resident pages and on_insert only non-resident ones.
class ReplacementPolicy {
public:
    virtual ~ReplacementPolicy() = default;
    virtual void on_hit(PageId page) = 0;
    virtual void on_insert(PageId page) = 0;
    // Picks a resident page and drops its metadata.
    virtual PageId choose_victim() = 0;
    virtual void clear() = 0;
};

// RANDOM draws from `rng`, which the policy keeps across clear().
std::unique_ptr<ReplacementPolicy> make_policy(const ReplacementSpec& spec, std::uint32_t capacity,
                                               sim::RandomStream rng);

// Fixed-capacity page cache.
class BufferPool {
public:
    BufferPool(std::uint32_t capacity, const ReplacementSpec& spec,
               sim::RandomStream rng = sim::RandomStream(0, sim::StreamId::BufferPolicy));

    RequestResult request_page(PageId page);

    // Empties the pool and its policy metadata; the RANDOM stream continues.
    void reset();

    bool contains(PageId page) const noexcept { return resident_.contains(page); }
    std::size_t size() const noexcept { return resident_.size(); }
    std::uint32_t capacity() const noexcept { return capacity_; }
    const ReplacementSpec& spec() const noexcept { return spec_; }

    std::uint64_t hits() const noexcept { return hits_; }
    std::uint64_t misses() const noexcept { return misses_; }
    std::uint64_t requests() const noexcept { return hits_ + misses_; }

    // Resident page ids in ascending order.
    std::vector<PageId> resident_pages() const;

private:
    std::uint32_t capacity_;
    ReplacementSpec spec_;
    std::unique_ptr<ReplacementPolicy> policy_;
    std::unordered_set<PageId> resident_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

// Trace replay format: one page id per line; blank lines and '#' comments
// are skipped. Throws ConfigError with the line number on malformed input.
std::vector<PageId> read_page_trace(std::istream& in);
void write_page_trace(std::ostream& out, std::span<const PageId> trace);

std::vector<RequestResult> replay(BufferPool& pool, std::span<const PageId> trace);

}  // namespace voodb::buffer
