#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace voodb::sim {

using Requester = std::uint64_t;

// A resource that is only reserved and released (processor, disk controller,
// network, database scheduler). Blocked requests wait in FIFO order.
class PassiveResource {
public:
    PassiveResource(std::string name, std::uint32_t capacity);

    // Grants immediately when a unit is free; otherwise queues the requester
    // and returns false.
    bool acquire(Requester who);

    // Frees the unit held by `who` and hands it to the head of the wait queue,
    // whose id is returned. Throws ModelError if `who` holds no unit.
    std::optional<Requester> release(Requester who);

    const std::string& name() const noexcept { return name_; }
    std::uint32_t capacity() const noexcept { return capacity_; }
    std::uint32_t in_use() const noexcept { return static_cast<std::uint32_t>(holders_.size()); }
    std::size_t waiting() const noexcept { return wait_queue_.size(); }
    const std::deque<Requester>& wait_queue() const noexcept { return wait_queue_; }
    bool holds(Requester who) const noexcept;

    // Highest simultaneous in_use seen since construction or reset().
    std::uint32_t peak_in_use() const noexcept { return peak_in_use_; }

    void reset();

private:
    std::string name_;
    std::uint32_t capacity_;
    std::vector<Requester> holders_;
    std::deque<Requester> wait_queue_;
    std::uint32_t peak_in_use_ = 0;
};

}  // namespace voodb::sim
