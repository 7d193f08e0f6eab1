#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace voodb {

template <typename Tag>
struct StrongId {
    std::uint32_t value = 0;

    constexpr StrongId() = default;
    constexpr explicit StrongId(std::uint32_t v) : value(v) {}

    constexpr auto operator<=>(const StrongId&) const = default;

    friend std::ostream& operator<<(std::ostream& os, StrongId id) { return os << id.value; }
};

// Logical object identifier. Stable under reorganization.
using Oid = StrongId<struct OidTag>;
using PageId = StrongId<struct PageIdTag>;

// Simulated time in milliseconds.
using SimTime = double;

}  // namespace voodb

template <typename Tag>
struct std::hash<voodb::StrongId<Tag>> {
    std::size_t operator()(voodb::StrongId<Tag> id) const noexcept {
        return std::hash<std::uint32_t>{}(id.value);
    }
};
