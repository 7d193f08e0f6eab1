#pragma once

// Brute-force page replacement reference: a flat frame table scanned in full
// on every request. Written independently of the library's policy classes.

#include <cstdint>
#include <optional>
#include <vector>

#include "voodb/buffer/buffer_pool.hpp"
#include "voodb/sim/random.hpp"

namespace oracle {

struct Outcome {
    bool hit = false;
    std::optional<std::uint32_t> victim;
};

class ReferenceBuffer {
public:
    ReferenceBuffer(std::uint32_t capacity, voodb::buffer::ReplacementSpec spec, voodb::sim::RandomStream rng)
        : capacity_(capacity), spec_(spec), rng_(std::move(rng)) {}

    Outcome request(std::uint32_t page) {
        const std::int64_t now = time_++;
        for (auto& f : frames_) {
            if (f.page != page) continue;
            ++f.frequency;
            f.references.push_back(now);
            f.counter = spec_.kind == voodb::buffer::ReplacementKind::Gclock ? f.counter + 1 : 1;
            return {true, std::nullopt};
        }

        Frame fresh{page, now, 1, {now}, 1};
        if (frames_.size() < capacity_) {
            frames_.push_back(fresh);
            return {false, std::nullopt};
        }
        const std::size_t slot = pick_victim();
        const std::uint32_t victim = frames_[slot].page;
        frames_[slot] = fresh;
        return {false, victim};
    }

private:
    struct Frame {
        std::uint32_t page;
        std::int64_t arrival;
        std::uint64_t frequency;
        std::vector<std::int64_t> references;  // every reference time since arrival
        std::uint64_t counter;
    };

    std::size_t pick_victim() {
        using K = voodb::buffer::ReplacementKind;
        switch (spec_.kind) {
            case K::Random: return static_cast<std::size_t>(rng_.below(frames_.size()));
            case K::Fifo: return argmin([](const Frame& f) { return std::pair{f.arrival, std::int64_t{0}}; });
            case K::Lfu:
                return argmin([](const Frame& f) { return std::pair{static_cast<std::int64_t>(f.frequency), f.arrival}; });
            case K::LruK: {
                const std::size_t k = spec_.k;
                return argmin([k](const Frame& f) {
                    const auto& r = f.references;
                    const std::int64_t kth = r.size() < k ? -1 : r[r.size() - k];
                    return std::pair{kth, r.back()};
                });
            }
            case K::Clock:
            case K::Gclock: {
                while (frames_[hand_].counter > 0) {
                    --frames_[hand_].counter;
                    hand_ = (hand_ + 1) % frames_.size();
                }
                const std::size_t v = hand_;
                hand_ = (v + 1) % frames_.size();
                return v;
            }
        }
        return 0;
    }

    template <class Key>
    std::size_t argmin(Key key) const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < frames_.size(); ++i) {
            if (key(frames_[i]) < key(frames_[best])) best = i;
        }
        return best;
    }

    std::uint32_t capacity_;
    voodb::buffer::ReplacementSpec spec_;
    voodb::sim::RandomStream rng_;
    std::vector<Frame> frames_;
    std::size_t hand_ = 0;
    std::int64_t time_ = 0;
};

// Random trace with a mix of uniform and looping phases so every policy
// sees hits, evictions and frequency differences.
inline std::vector<std::uint32_t> random_trace(voodb::sim::RandomStream& rng, std::size_t length,
                                               std::uint32_t universe) {
    std::vector<std::uint32_t> trace;
    trace.reserve(length);
    while (trace.size() < length) {
        const auto phase = rng.below(3);
        const auto run = 1 + rng.below(200);
        if (phase == 0) {
            for (std::uint64_t i = 0; i < run && trace.size() < length; ++i)
                trace.push_back(static_cast<std::uint32_t>(rng.below(universe)));
        } else if (phase == 1) {
            const auto width = 1 + rng.below(universe);
            const auto start = rng.below(universe);
            for (std::uint64_t i = 0; i < run && trace.size() < length; ++i)
                trace.push_back(static_cast<std::uint32_t>((start + i % width) % universe));
        } else {
            const auto hot = 1 + rng.below(4);
            for (std::uint64_t i = 0; i < run && trace.size() < length; ++i)
                trace.push_back(static_cast<std::uint32_t>(rng.below(hot)));
        }
    }
    return trace;
}

struct Mismatch {
    std::size_t position = 0;
    bool found = false;
};

// Replays `trace` through the library pool and the reference; reports the
// first request where hit/miss or the victim differ.
inline Mismatch compare(std::uint32_t capacity, voodb::buffer::ReplacementSpec spec, std::uint64_t seed,
                        const std::vector<std::uint32_t>& trace) {
    using voodb::sim::RandomStream;
    using voodb::sim::StreamId;
    voodb::buffer::BufferPool pool(capacity, spec, RandomStream(seed, StreamId::BufferPolicy));
    ReferenceBuffer ref(capacity, spec, RandomStream(seed, StreamId::BufferPolicy));
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto got = pool.request_page(voodb::PageId{trace[i]});
        const auto want = ref.request(trace[i]);
        const bool same_victim = got.evicted.has_value() == want.victim.has_value() &&
                                 (!want.victim || got.evicted->value == *want.victim);
        if (got.hit != want.hit || !same_victim) return {i, true};
    }
    return {};
}

inline const std::vector<voodb::buffer::ReplacementSpec>& all_policies() {
    using K = voodb::buffer::ReplacementKind;
    static const std::vector<voodb::buffer::ReplacementSpec> specs = {
        {K::Random, 1}, {K::Fifo, 1}, {K::Lfu, 1}, {K::LruK, 1}, {K::LruK, 2}, {K::LruK, 3}, {K::Clock, 1}, {K::Gclock, 1},
    };
    return specs;
}

}  // namespace oracle
