#include "voodb/sim/passive_resource.hpp"

#include <algorithm>

#include "voodb/errors.hpp"

namespace voodb::sim {

PassiveResource::PassiveResource(std::string name, std::uint32_t capacity)
    : name_(std::move(name)), capacity_(capacity) {
    if (capacity_ == 0) throw ModelError("passive resource '" + name_ + "' needs capacity >= 1");
    holders_.reserve(capacity_);
}

bool PassiveResource::acquire(Requester who) {
    if (holders_.size() < capacity_) {
        holders_.push_back(who);
        peak_in_use_ = std::max(peak_in_use_, in_use());
        return true;
    }
    wait_queue_.push_back(who);
    return false;
}

std::optional<Requester> PassiveResource::release(Requester who) {
    auto it = std::find(holders_.begin(), holders_.end(), who);
    if (it == holders_.end()) {
        throw ModelError("release of '" + name_ + "' by requester " + std::to_string(who) +
                         " which does not hold it");
    }
    holders_.erase(it);
    if (wait_queue_.empty()) return std::nullopt;
    const Requester next = wait_queue_.front();
    wait_queue_.pop_front();
    holders_.push_back(next);
    return next;
}

bool PassiveResource::holds(Requester who) const noexcept {
    return std::find(holders_.begin(), holders_.end(), who) != holders_.end();
}

void PassiveResource::reset() {
    holders_.clear();
    wait_queue_.clear();
    peak_in_use_ = 0;
}

}  // namespace voodb::sim
