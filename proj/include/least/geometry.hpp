#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>

namespace least {

/// Position in the deployment plane, in meters.
struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Euclidean distance in meters.
double distance(const Point& a, const Point& b) noexcept;

/// Identifier of a node. The base station is always id 0; sensors are 1..n.
class NodeId {
public:
    using value_type = std::uint32_t;

    constexpr NodeId() noexcept = default;
    constexpr explicit NodeId(value_type v) noexcept : value_(v) {}

    constexpr value_type value() const noexcept { return value_; }
    constexpr bool is_base_station() const noexcept { return value_ == 0; }

    friend constexpr auto operator<=>(NodeId, NodeId) noexcept = default;

private:
    value_type value_ = 0;
};

inline constexpr NodeId kBaseStation{0};

inline std::ostream& operator<<(std::ostream& os, NodeId id) { return os << id.value(); }

} // namespace least

template <>
struct std::hash<least::NodeId> {
    std::size_t operator()(least::NodeId id) const noexcept { return std::hash<std::uint32_t>{}(id.value()); }
};
