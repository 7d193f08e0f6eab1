#include "voodb/sim/event_queue.hpp"

#include <cassert>
#include <sstream>

#include "voodb/errors.hpp"

namespace voodb::sim {

const Event& EventQueue::schedule(SimTime time, std::uint32_t target, std::uint32_t kind,
                                  std::uint64_t payload) {
    if (!(time >= now_)) {
        std::ostringstream msg;
        msg << "event scheduled into the past: t=" << time << " < clock=" << now_
            << " (target " << target << ", kind " << kind << ")";
        throw ModelError(msg.str());
    }
    heap_.push(Event{time, next_seq_++, target, kind, payload});
    return heap_.top();
}

Event EventQueue::pop() {
    assert(!heap_.empty());
    Event e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
}

void EventQueue::reset() {
    heap_ = {};
    now_ = 0.0;
    next_seq_ = 0;
}

}  // namespace voodb::sim
