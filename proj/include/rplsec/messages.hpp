#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <variant>

#include "rplsec/sim_core.hpp"

namespace rplsec {

/// A node's advertised position in the DODAG. INFINITE compares greater
/// than every finite rank.
class Rank {
 public:
  constexpr Rank() = default;
  constexpr explicit Rank(double value) : value_(value) {}

  static constexpr Rank infinite() {
    return Rank(std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return value_; }
  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr bool is_finite() const { return !is_infinite(); }

  constexpr auto operator<=>(const Rank&) const = default;

 private:
  double value_ = std::numeric_limits<double>::infinity();
};

inline constexpr Rank kRootRank{256.0};

using HopCount = std::uint32_t;

enum class MetricKind : std::uint8_t { Etx, HopCount };

struct TrickleParams {
  SimTime imin = 4 * kMicrosPerSecond;
  unsigned doublings = 8;
  unsigned redundancy_k = 10;

  SimTime imax() const { return imin << doublings; }
};

struct DioMessage {
  NodeId sender = 0;
  Rank advertised_rank;
  /// Sender's hop distance as derived by h(x) = h(p) + 1.
  HopCount hop = 0;
  std::uint32_t dodag_id = 1;
  MetricKind metric = MetricKind::Etx;
  TrickleParams trickle;
};

struct DataPacket {
  NodeId origin = 0;
  std::uint32_t seq = 0;
  bool o_flag = false;  // Down
  bool r_flag = false;  // Rank-Error
  Rank sender_rank;
  SimTime created_at = 0;
  std::uint32_t hops_traversed = 0;
};

enum class FrameKind : std::uint8_t { DioMulticast, DataUnicast, Ack };

struct Frame {
  FrameKind kind = FrameKind::DioMulticast;
  NodeId src = 0;
  NodeId dst = 0;  // 0 = broadcast
  std::uint32_t size = 0;
  std::variant<std::monostate, DioMessage, DataPacket> payload;
};

}  // namespace rplsec
