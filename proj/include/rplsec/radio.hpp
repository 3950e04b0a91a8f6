#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rplsec/messages.hpp"
#include "rplsec/sim_core.hpp"

namespace rplsec {

struct Position {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Position& a, const Position& b);

struct LinkModel {
  double tx_range = 30.0;  // meters
  double loss_rate = 0.0;  // per transmission attempt
};

struct RadioConstants {
  double bitrate_bps = 250'000.0;
  std::uint32_t dio_bytes = 80;
  std::uint32_t data_bytes = 100;
  std::uint32_t ack_bytes = 11;
  SimTime processing_delay = 500;  // µs, per frame at the receiver
  SimTime turnaround = 192;        // µs, rx/tx switch before an ACK
  int max_attempts = 8;
  /// Transmitter on-time charged per broadcast (one wake-up period of a
  /// duty-cycled MAC). Energy only; delivery timing uses airtime.
  SimTime broadcast_on = 125'000;
};

SimTime airtime(std::uint32_t bytes, double bitrate_bps);

struct UnicastOutcome {
  enum class Status : std::uint8_t { Delivered, Lost, OutOfRange };
  Status status = Status::Lost;
  int attempts = 0;  // transmissions actually made

  bool delivered() const { return status == Status::Delivered; }
};

/// Unit-disk connectivity with i.i.d. Bernoulli loss per attempt. Node ids
/// are 1..N; positions[i] belongs to node i + 1.
class UnitDiskMedium {
 public:
  UnitDiskMedium(std::vector<Position> positions, LinkModel link);

  std::size_t size() const { return positions_.size(); }
  const LinkModel& link() const { return link_; }
  const Position& position(NodeId id) const;

  /// Nodes within tx_range of `id`, ascending, excluding `id`.
  /// Throws std::out_of_range for unknown ids.
  const std::vector<NodeId>& neighbors(NodeId id) const;
  bool in_range(NodeId a, NodeId b) const;

  /// Neighbors that receive one multicast, in ascending id order.
  std::vector<NodeId> transmit_multicast(NodeId src, RngStream& rng) const;

  /// Retries until the first successful attempt or max_attempts.
  UnicastOutcome transmit_unicast(NodeId src, NodeId dst, int max_attempts,
                                  RngStream& rng) const;

  /// BFS hop distance from `from` to every node (index id - 1); -1 when
  /// unreachable.
  std::vector<int> hop_distances(NodeId from) const;
  bool connected() const;

 private:
  std::size_t index(NodeId id) const;

  std::vector<Position> positions_;
  LinkModel link_;
  std::vector<std::vector<NodeId>> adjacency_;
};

}  // namespace rplsec
