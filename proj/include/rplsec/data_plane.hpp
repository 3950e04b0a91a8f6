#pragma once

#include <optional>
#include <string_view>

#include "rplsec/messages.hpp"

namespace rplsec {

inline constexpr SimTime kAppPeriod = 60 * kMicrosPerSecond;
inline constexpr std::uint32_t kHopTtl = 64;

enum class FateKind : std::uint8_t {
  Delivered,
  DroppedInconsistency,
  DroppedNoRoute,
  DroppedLinkFailure,
  DroppedTtl,
  InFlightAtHorizon,
};

std::string_view to_string(FateKind fate);

struct PacketFate {
  FateKind kind = FateKind::InFlightAtHorizon;
  SimTime at = 0;  // delivery or drop time
};

enum class Verdict : std::uint8_t { Consistent, MarkAndForward, DropAndReset };

/// Rank-error check on a received packet. Upward packets must arrive from a
/// strictly higher rank; downward packets from a strictly lower one.
Verdict check_consistency(Rank receiver_rank, const DataPacket& pkt);

struct ForwardDecision {
  enum class Action : std::uint8_t { Deliver, Unicast, DropNoRoute, DropInconsistency, DropTtl };
  Action action = Action::DropNoRoute;
  NodeId next_hop = 0;
  /// The receiver detected an inconsistency with R already set.
  bool reset_trickle = false;
};

/// Per-hop forwarding. `received` is false for locally originated packets,
/// which skip the consistency check. Mutates the packet's R flag and
/// SenderRank when it is forwarded.
ForwardDecision forward(bool is_root, std::optional<NodeId> parent, Rank own_rank,
                        DataPacket& pkt, bool received);

/// Emission instant of the packet for window `index`, given an offset in
/// [0, 60 s).
constexpr SimTime app_emission_time(std::uint32_t index, SimTime offset) {
  return static_cast<SimTime>(index) * kAppPeriod + offset;
}

}  // namespace rplsec
