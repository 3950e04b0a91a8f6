#include "rplsec/data_plane.hpp"

namespace rplsec {

std::string_view to_string(FateKind fate) {
  switch (fate) {
    case FateKind::Delivered: return "delivered";
    case FateKind::DroppedInconsistency: return "dropped-inconsistency";
    case FateKind::DroppedNoRoute: return "dropped-no-route";
    case FateKind::DroppedLinkFailure: return "dropped-link-failure";
    case FateKind::DroppedTtl: return "dropped-ttl";
    case FateKind::InFlightAtHorizon: return "in-flight-at-horizon";
  }
  return "?";
}

Verdict check_consistency(Rank receiver_rank, const DataPacket& pkt) {
  // Equal ranks are a fault too: every hop strictly changes rank.
  const bool inconsistent = pkt.o_flag ? pkt.sender_rank >= receiver_rank
                                       : pkt.sender_rank <= receiver_rank;
  if (!inconsistent) return Verdict::Consistent;
  return pkt.r_flag ? Verdict::DropAndReset : Verdict::MarkAndForward;
}

ForwardDecision forward(bool is_root, std::optional<NodeId> parent, Rank own_rank,
                        DataPacket& pkt, bool received) {
  using Action = ForwardDecision::Action;
  if (is_root) return {Action::Deliver, 0, false};
  if (!parent || own_rank.is_infinite()) return {Action::DropNoRoute, 0, false};
  if (received) {
    switch (check_consistency(own_rank, pkt)) {
      case Verdict::Consistent: break;
      case Verdict::MarkAndForward: pkt.r_flag = true; break;
      case Verdict::DropAndReset: return {Action::DropInconsistency, 0, true};
    }
  }
  if (pkt.hops_traversed >= kHopTtl) return {Action::DropTtl, 0, false};
  pkt.sender_rank = own_rank;
  return {Action::Unicast, *parent, false};
}

}  // namespace rplsec
