#pragma once

#include <map>
#include <optional>
#include <vector>

#include "rplsec/messages.hpp"
#include "rplsec/objective.hpp"
#include "rplsec/sim_core.hpp"

namespace rplsec {

/// h(x) = h(p) + 1. No upper cap.
constexpr HopCount compute_hops(HopCount parent_hop) { return parent_hop + 1; }

/// Rank(x) = Rank(p) + ETX * unit. An infinite parent rank stays infinite.
Rank compute_rank(Rank parent_rank, double etx, double rank_unit = 1.0);

struct EwmaParams {
  double beta = 90.0;
  double scale = 100.0;
};

inline constexpr double kMinEtx = 1.0;
inline constexpr double kMaxEtx = 5.0;
inline constexpr int kMaxPacketEtx = 5;

/// newETX = (oldETX * beta + packetETX * (scale - beta)) / scale.
/// Throws std::out_of_range if packet_etx is outside [1, 5] and
/// std::invalid_argument unless 0 <= beta < scale.
double update_etx(double current, int packet_etx, const EwmaParams& params = {});

/// Trickle interval state. The owner schedules the fire and interval-end
/// events from fire_at() / interval_end().
class TrickleTimer {
 public:
  explicit TrickleTimer(TrickleParams params = {}) : params_(params) {}

  /// I := Imin, c := 0, t drawn in [I/2, I).
  void reset(SimTime now, RngStream& rng);
  /// Interval expiry: I := min(2I, Imax), c := 0, new t.
  void next_interval(SimTime now, RngStream& rng);

  void hear_consistent() { ++counter_; }
  bool should_emit() const { return counter_ < params_.redundancy_k; }

  bool running() const { return running_; }
  SimTime interval() const { return interval_; }
  SimTime interval_start() const { return start_; }
  SimTime fire_at() const { return start_ + offset_; }
  SimTime interval_end() const { return start_ + interval_; }
  unsigned counter() const { return counter_; }
  const TrickleParams& params() const { return params_; }

 private:
  void begin(SimTime now, RngStream& rng);

  TrickleParams params_;
  SimTime interval_ = 0;
  SimTime start_ = 0;
  SimTime offset_ = 0;
  unsigned counter_ = 0;
  bool running_ = false;
};

struct ProtocolConfig {
  OfKind of = OfKind::Mrhof;
  OfParams of_params;
  EwmaParams ewma;
  /// ETX assumed for a neighbor that has never been unicast to.
  double initial_etx = 1.0;
  TrickleParams trickle;
  /// 0 selects 3 * Imax.
  SimTime neighbor_expiry = 0;

  SimTime expiry() const { return neighbor_expiry != 0 ? neighbor_expiry : 3 * trickle.imax(); }
};

struct NeighborRecord {
  NodeId id = 0;
  Rank advertised;
  double etx = 1.0;
  bool measured = false;
  /// Last hop heard in a DIO; no longer updated once hops are frozen.
  std::optional<HopCount> hop;
  SimTime last_heard = 0;
};

struct NodeCounters {
  std::uint64_t dio_tx = 0;
  std::uint64_t dio_rx = 0;
  std::uint64_t dio_suppressed = 0;
  std::uint64_t data_tx_attempts = 0;
  std::uint64_t data_rx = 0;
  std::uint64_t trickle_resets = 0;
  std::uint64_t parent_switches = 0;
  std::uint64_t poison_events = 0;
};

/// Outcome of feeding one input to a node.
struct Reaction {
  bool parent_changed = false;
  bool joined = false;
  bool poisoned = false;
  bool rank_changed = false;
  std::optional<NodeId> old_parent;

  /// Inconsistencies that restart Trickle.
  bool needs_trickle_reset() const { return parent_changed || joined || poisoned; }
};

/// One node's RPL state. All interaction happens through the handle_* calls.
class RplNode {
 public:
  RplNode(NodeId id, bool is_root, const ProtocolConfig& config);

  NodeId id() const { return id_; }
  bool is_root() const { return is_root_; }
  /// Rank computed honestly from the preferred parent.
  Rank rank() const { return rank_; }
  /// Rank placed in DIOs and in the SenderRank of forwarded packets.
  Rank advertised_rank() const { return lie_ ? *lie_ : rank_; }
  std::optional<HopCount> hop() const { return hop_; }
  std::optional<NodeId> preferred_parent() const { return parent_; }
  bool attached() const { return parent_.has_value() || is_root_; }
  bool hops_frozen() const { return frozen_; }

  /// Only the adversary sets this.
  void set_rank_lie(std::optional<Rank> lie) { lie_ = lie; }
  bool lying() const { return lie_.has_value(); }

  Reaction handle_dio(const DioMessage& dio, SimTime now, SecOfMode mode);
  /// Feed the transmission count of one unicast to `neighbor` (clamped to
  /// [1, 5]) and re-run parent selection.
  Reaction handle_unicast_result(NodeId neighbor, int attempts, SimTime now, SecOfMode mode);
  /// Latch every neighbor hop and the node's own hop (Sec-OF mode switch).
  void freeze_hops() { frozen_ = true; }

  DioMessage make_dio() const;

  const std::map<NodeId, NeighborRecord>& neighbor_table() const { return table_; }
  const NeighborRecord* neighbor(NodeId id) const;
  TrickleTimer& trickle() { return trickle_; }
  const TrickleTimer& trickle() const { return trickle_; }
  NodeCounters& counters() { return counters_; }
  const NodeCounters& counters() const { return counters_; }

  std::vector<Candidate> candidates() const;

 private:
  Reaction reselect(SimTime now, SecOfMode mode);

  NodeId id_;
  bool is_root_;
  const ProtocolConfig* config_;
  Rank rank_ = Rank::infinite();
  std::optional<HopCount> hop_;
  std::optional<NodeId> parent_;
  std::optional<Rank> lie_;
  bool frozen_ = false;
  std::map<NodeId, NeighborRecord> table_;
  TrickleTimer trickle_;
  NodeCounters counters_;
};

}  // namespace rplsec
