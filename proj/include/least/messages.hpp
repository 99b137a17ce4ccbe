#pragma once

#include <optional>
#include <string_view>

#include "least/geometry.hpp"

namespace least {

enum class MessageKind {
    ch_announce,
    join_request,
    hn_announce_to_bs,
    bs_notify_first_level,
    heir_notify_parent,
    heir_announce_siblings,
    heir_relay_to_bs,
    relocate_join,
};

std::string_view to_string(MessageKind kind) noexcept;

/// One setup-phase transmission. A message without a receiver is a
/// broadcast heard by every alive sensor within `tx_distance`.
struct ControlMessage {
    MessageKind kind{};
    NodeId sender;
    std::optional<NodeId> receiver;
    double tx_distance = 0.0;
    int packets = 1;

    bool is_broadcast() const noexcept { return !receiver.has_value(); }
    friend bool operator==(const ControlMessage&, const ControlMessage&) = default;
};

} // namespace least
