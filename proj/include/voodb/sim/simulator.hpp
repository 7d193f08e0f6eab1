#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "voodb/sim/event_queue.hpp"
#include "voodb/sim/passive_resource.hpp"

namespace voodb::sim {

class Simulator;

// An active resource: owns a set of functioning rules, reacts to events
// addressed to it.
class ActiveResource {
public:
    virtual ~ActiveResource() = default;
    virtual void handle(Simulator& sim, const Event& event) = 0;
    virtual std::string name() const = 0;
};

// Single-threaded event loop for one replication.
class Simulator {
public:
    using StopCondition = std::function<bool()>;
    using Observer = std::function<void(const Event&)>;

    // Registers a component and returns its event target id. The component
    // must outlive the simulator's use of it.
    std::uint32_t attach(ActiveResource& component);

    // Creates a passive resource owned by the simulator.
    PassiveResource& add_resource(std::string name, std::uint32_t capacity);

    void schedule(SimTime at, std::uint32_t target, std::uint32_t kind, std::uint64_t payload = 0) {
        queue_.schedule(at, target, kind, payload);
    }
    void schedule_in(SimTime delay, std::uint32_t target, std::uint32_t kind,
                     std::uint64_t payload = 0) {
        queue_.schedule(queue_.now() + delay, target, kind, payload);
    }

    SimTime now() const noexcept { return queue_.now(); }
    std::uint64_t events_processed() const noexcept { return processed_; }
    const EventQueue& queue() const noexcept { return queue_; }

    // Invoked for every event before it is dispatched.
    void set_observer(Observer observer) { observer_ = std::move(observer); }

    // Processes events until `stop` holds. Throws DeadlockError if the event
    // list drains first; the message lists every resource with waiters.
    void run(const StopCondition& stop);

    // Processes events until the list is empty.
    void run_until_idle();

    std::string blocked_resources_report() const;

private:
    void dispatch(const Event& e);

    EventQueue queue_;
    std::vector<ActiveResource*> components_;
    std::vector<std::unique_ptr<PassiveResource>> resources_;
    Observer observer_;
    std::uint64_t processed_ = 0;
};

}  // namespace voodb::sim
