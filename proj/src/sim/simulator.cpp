#include "voodb/sim/simulator.hpp"

#include <sstream>

#include "voodb/errors.hpp"

namespace voodb::sim {

std::uint32_t Simulator::attach(ActiveResource& component) {
    components_.push_back(&component);
    return static_cast<std::uint32_t>(components_.size() - 1);
}

PassiveResource& Simulator::add_resource(std::string name, std::uint32_t capacity) {
    resources_.push_back(std::make_unique<PassiveResource>(std::move(name), capacity));
    return *resources_.back();
}

void Simulator::dispatch(const Event& e) {
    if (e.target >= components_.size()) {
        throw ModelError("event addressed to unknown target " + std::to_string(e.target));
    }
    if (observer_) observer_(e);
    ++processed_;
    components_[e.target]->handle(*this, e);
}

void Simulator::run(const StopCondition& stop) {
    while (!stop()) {
        if (queue_.empty()) {
            throw DeadlockError("event list empty before stop condition at t=" +
                                std::to_string(queue_.now()) + "; " + blocked_resources_report());
        }
        dispatch(queue_.pop());
    }
}

void Simulator::run_until_idle() {
    while (!queue_.empty()) dispatch(queue_.pop());
}

std::string Simulator::blocked_resources_report() const {
    std::ostringstream out;
    bool any = false;
    for (const auto& r : resources_) {
        if (r->waiting() == 0) continue;
        out << (any ? ", " : "blocked resources: ") << r->name() << " (in_use " << r->in_use()
            << "/" << r->capacity() << ", waiting " << r->waiting() << ")";
        any = true;
    }
    if (!any) out << "no resource has waiters";
    return out.str();
}

}  // namespace voodb::sim
