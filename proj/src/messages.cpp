#include "least/messages.hpp"

namespace least {

std::string_view to_string(MessageKind kind) noexcept {
    switch (kind) {
    case MessageKind::ch_announce: return "ch_announce";
    case MessageKind::join_request: return "join_request";
    case MessageKind::hn_announce_to_bs: return "hn_announce_to_bs";
    case MessageKind::bs_notify_first_level: return "bs_notify_first_level";
    case MessageKind::heir_notify_parent: return "heir_notify_parent";
    case MessageKind::heir_announce_siblings: return "heir_announce_siblings";
    case MessageKind::heir_relay_to_bs: return "heir_relay_to_bs";
    case MessageKind::relocate_join: return "relocate_join";
    }
    return "unknown";
}

} // namespace least
