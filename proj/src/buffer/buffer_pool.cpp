#include "voodb/buffer/buffer_pool.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <istream>
#include <ostream>
#include <set>
#include <tuple>
#include <unordered_map>

#include "voodb/errors.hpp"

namespace voodb::buffer {

namespace {

std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

class RandomPolicy final : public ReplacementPolicy {
public:
    explicit RandomPolicy(sim::RandomStream rng) : rng_(std::move(rng)) {}

    void on_hit(PageId) override {}

    void on_insert(PageId page) override {
        // The newcomer takes the victim's slot so slot order stays stable.
        if (hole_) {
            slots_[*hole_] = page;
            index_[page] = *hole_;
            hole_.reset();
        } else {
            index_[page] = slots_.size();
            slots_.push_back(page);
        }
    }

    PageId choose_victim() override {
        const auto i = static_cast<std::size_t>(rng_.below(slots_.size()));
        const PageId victim = slots_[i];
        index_.erase(victim);
        hole_ = i;
        return victim;
    }

    void clear() override {
        slots_.clear();
        index_.clear();
        hole_.reset();
    }

private:
    sim::RandomStream rng_;
    std::vector<PageId> slots_;
    std::unordered_map<PageId, std::size_t> index_;
    std::optional<std::size_t> hole_;
};

class FifoPolicy final : public ReplacementPolicy {
public:
    void on_hit(PageId) override {}
    void on_insert(PageId page) override { queue_.push_back(page); }
    PageId choose_victim() override {
        const PageId victim = queue_.front();
        queue_.pop_front();
        return victim;
    }
    void clear() override { queue_.clear(); }

private:
    std::deque<PageId> queue_;
};

// Lowest frequency first; among equal frequencies, earliest arrival.
class LfuPolicy final : public ReplacementPolicy {
public:
    void on_hit(PageId page) override {
        auto& meta = meta_.at(page);
        order_.erase({meta.frequency, meta.arrival, page});
        ++meta.frequency;
        order_.insert({meta.frequency, meta.arrival, page});
    }
    void on_insert(PageId page) override {
        const Meta meta{1, next_arrival_++};
        meta_[page] = meta;
        order_.insert({meta.frequency, meta.arrival, page});
    }
    PageId choose_victim() override {
        const auto [freq, arrival, victim] = *order_.begin();
        order_.erase(order_.begin());
        meta_.erase(victim);
        return victim;
    }
    void clear() override {
        meta_.clear();
        order_.clear();
        next_arrival_ = 0;
    }

private:
    struct Meta {
        std::uint64_t frequency;
        std::uint64_t arrival;
    };
    std::unordered_map<PageId, Meta> meta_;
    std::set<std::tuple<std::uint64_t, std::uint64_t, PageId>> order_;
    std::uint64_t next_arrival_ = 0;
};

// Evicts the page whose K-th most recent reference is oldest. Pages with
// fewer than K references count as infinitely old and go first, least
// recently used among them.
class LruKPolicy final : public ReplacementPolicy {
public:
    explicit LruKPolicy(std::uint32_t k) : k_(k) {
        if (k_ == 0) throw ConfigError("LRU-K needs K >= 1");
    }

    void on_hit(PageId page) override {
        auto& hist = history_.at(page);
        order_.erase(key(hist, page));
        record(hist);
        order_.insert(key(hist, page));
    }
    void on_insert(PageId page) override {
        auto& hist = history_[page];
        record(hist);
        order_.insert(key(hist, page));
    }
    PageId choose_victim() override {
        const PageId victim = std::get<2>(*order_.begin());
        order_.erase(order_.begin());
        history_.erase(victim);
        return victim;
    }
    void clear() override {
        history_.clear();
        order_.clear();
        clock_ = 0;
    }

private:
    using Key = std::tuple<std::int64_t, std::int64_t, PageId>;

    void record(std::deque<std::int64_t>& hist) {
        hist.push_front(clock_++);
        if (hist.size() > k_) hist.pop_back();
    }
    Key key(const std::deque<std::int64_t>& hist, PageId page) const {
        const std::int64_t kth = hist.size() < k_ ? -1 : hist.back();
        return {kth, hist.front(), page};
    }

    std::uint32_t k_;
    std::unordered_map<PageId, std::deque<std::int64_t>> history_;
    std::set<Key> order_;
    std::int64_t clock_ = 0;
};

// CLOCK (reference bit) and GCLOCK (reference counter) share the frame ring;
// CLOCK saturates the counter at 1.
class ClockPolicy final : public ReplacementPolicy {
public:
    ClockPolicy(std::uint32_t capacity, bool generalized)
        : capacity_(capacity), generalized_(generalized) {
        frames_.reserve(capacity_);
        counters_.reserve(capacity_);
    }

    void on_hit(PageId page) override {
        auto& c = counters_[index_.at(page)];
        c = generalized_ ? c + 1 : 1;
    }
    void on_insert(PageId page) override {
        if (hole_) {
            const std::size_t i = *hole_;
            frames_[i] = page;
            counters_[i] = 1;
            index_[page] = i;
            hand_ = (i + 1) % capacity_;
            hole_.reset();
        } else {
            index_[page] = frames_.size();
            frames_.push_back(page);
            counters_.push_back(1);
        }
    }
    PageId choose_victim() override {
        while (counters_[hand_] > 0) {
            --counters_[hand_];
            hand_ = (hand_ + 1) % frames_.size();
        }
        const PageId victim = frames_[hand_];
        index_.erase(victim);
        hole_ = hand_;
        return victim;
    }
    void clear() override {
        frames_.clear();
        counters_.clear();
        index_.clear();
        hole_.reset();
        hand_ = 0;
    }

private:
    std::uint32_t capacity_;
    bool generalized_;
    std::vector<PageId> frames_;
    std::vector<std::uint64_t> counters_;
    std::unordered_map<PageId, std::size_t> index_;
    std::optional<std::size_t> hole_;
    std::size_t hand_ = 0;
};

}  // namespace

std::string to_string(const ReplacementSpec& spec) {
    switch (spec.kind) {
        case ReplacementKind::Random: return "RANDOM";
        case ReplacementKind::Fifo: return "FIFO";
        case ReplacementKind::Lfu: return "LFU";
        case ReplacementKind::LruK: return "LRU-" + std::to_string(spec.k);
        case ReplacementKind::Clock: return "CLOCK";
        case ReplacementKind::Gclock: return "GCLOCK";
    }
    return "?";
}

ReplacementSpec parse_replacement(std::string_view text) {
    const std::string s = upper(text);
    if (s == "RANDOM") return {ReplacementKind::Random, 1};
    if (s == "FIFO") return {ReplacementKind::Fifo, 1};
    if (s == "LFU") return {ReplacementKind::Lfu, 1};
    if (s == "CLOCK") return {ReplacementKind::Clock, 1};
    if (s == "GCLOCK") return {ReplacementKind::Gclock, 1};
    if (s == "LRU") return {ReplacementKind::LruK, 1};
    if (s.rfind("LRU-", 0) == 0 && s.size() > 4) {
        std::uint32_t k = 0;
        const char* first = s.data() + 4;
        const char* last = s.data() + s.size();
        auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec == std::errc{} && ptr == last && k >= 1) return {ReplacementKind::LruK, k};
    }
    throw ConfigError("unknown page replacement strategy '" + std::string(text) +
                      "' (expected RANDOM, FIFO, LFU, LRU-K, CLOCK, GCLOCK)");
}

std::unique_ptr<ReplacementPolicy> make_policy(const ReplacementSpec& spec, std::uint32_t capacity,
                                               sim::RandomStream rng) {
    switch (spec.kind) {
        case ReplacementKind::Random: return std::make_unique<RandomPolicy>(std::move(rng));
        case ReplacementKind::Fifo: return std::make_unique<FifoPolicy>();
        case ReplacementKind::Lfu: return std::make_unique<LfuPolicy>();
        case ReplacementKind::LruK: return std::make_unique<LruKPolicy>(spec.k);
        case ReplacementKind::Clock: return std::make_unique<ClockPolicy>(capacity, false);
        case ReplacementKind::Gclock: return std::make_unique<ClockPolicy>(capacity, true);
    }
    throw ConfigError("unsupported replacement strategy");
}

BufferPool::BufferPool(std::uint32_t capacity, const ReplacementSpec& spec, sim::RandomStream rng)
    : capacity_(capacity), spec_(spec) {
    if (capacity_ == 0) throw ConfigError("buffer capacity must be >= 1 page");
    policy_ = make_policy(spec_, capacity_, std::move(rng));
    resident_.reserve(capacity_);
}

RequestResult BufferPool::request_page(PageId page) {
    if (resident_.contains(page)) {
        ++hits_;
        policy_->on_hit(page);
        return {true, std::nullopt};
    }
    ++misses_;
    RequestResult result;
    if (resident_.size() == capacity_) {
        const PageId victim = policy_->choose_victim();
        resident_.erase(victim);
        result.evicted = victim;
    }
    resident_.insert(page);
    policy_->on_insert(page);
    return result;
}

void BufferPool::reset() {
    resident_.clear();
    policy_->clear();
}

std::vector<PageId> BufferPool::resident_pages() const {
    std::vector<PageId> pages(resident_.begin(), resident_.end());
    std::sort(pages.begin(), pages.end());
    return pages;
}

std::vector<PageId> read_page_trace(std::istream& in) {
    std::vector<PageId> trace;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos || line[begin] == '#') continue;
        const auto end = line.find_last_not_of(" \t\r") + 1;
        std::uint32_t id = 0;
        auto [ptr, ec] = std::from_chars(line.data() + begin, line.data() + end, id);
        if (ec != std::errc{} || ptr != line.data() + end) {
            throw ConfigError(line_no, "expected one page id per line, got '" + line + "'");
        }
        trace.push_back(PageId{id});
    }
    return trace;
}

void write_page_trace(std::ostream& out, std::span<const PageId> trace) {
    for (PageId p : trace) out << p.value << '\n';
}

std::vector<RequestResult> replay(BufferPool& pool, std::span<const PageId> trace) {
    std::vector<RequestResult> results;
    results.reserve(trace.size());
    for (PageId p : trace) results.push_back(pool.request_page(p));
    return results;
}

}  // namespace voodb::buffer
