#pragma once

#include <cstdint>
#include <queue>
#include <vector>

#include "voodb/types.hpp"

namespace voodb::sim {

struct Event {
    SimTime time = 0.0;
    std::uint64_t seq = 0;      // assigned at scheduling, breaks ties FIFO
    std::uint32_t target = 0;   // handler / active resource id
    std::uint32_t kind = 0;     // handler-defined tag
    std::uint64_t payload = 0;  // opaque context (transaction id, ...)
};

// Strict total order on (time, seq).
constexpr bool fires_before(const Event& a, const Event& b) noexcept {
    return a.time < b.time || (a.time == b.time && a.seq < b.seq);
}

// Future event list. Dequeues in nondecreasing time order, FIFO among equal
// times. The clock only moves forward.
class EventQueue {
public:
    // Throws ModelError when time < now().
    const Event& schedule(SimTime time, std::uint32_t target, std::uint32_t kind,
                          std::uint64_t payload = 0);

    // Precondition: !empty(). Advances the clock to the event's time.
    Event pop();

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    SimTime now() const noexcept { return now_; }
    std::uint64_t scheduled_count() const noexcept { return next_seq_; }

    // Empties the list and rewinds the clock to 0.
    void reset();

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const noexcept { return fires_before(b, a); }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    SimTime now_ = 0.0;
    std::uint64_t next_seq_ = 0;
};

}  // namespace voodb::sim
