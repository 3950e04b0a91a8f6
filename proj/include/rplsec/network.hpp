#pragma once

#include <functional>
#include <iosfwd>
#include <set>
#include <unordered_map>
#include <vector>

#include "rplsec/adversary.hpp"
#include "rplsec/config.hpp"
#include "rplsec/data_plane.hpp"
#include "rplsec/metrics.hpp"
#include "rplsec/radio.hpp"
#include "rplsec/rpl.hpp"
#include "rplsec/sim_core.hpp"
#include "rplsec/topology.hpp"

namespace rplsec {

/// One Trickle interval as it began at some node.
struct TrickleInterval {
  NodeId node = 0;
  SimTime start = 0;
  SimTime length = 0;
  bool after_reset = false;
};

/// Per-fire record: whether the node transmitted and the counter it saw.
struct TrickleFireRecord {
  NodeId node = 0;
  SimTime at = 0;
  unsigned counter = 0;
  bool emitted = false;
};

struct CycleStats {
  std::uint64_t formed = 0;            // parent switches that closed a cycle
  std::uint64_t formed_post_attack = 0;
  std::uint64_t formed_restricted = 0;  // while hops were frozen (Sec-OF)
};

/// Wires nodes, medium, traffic and the attack into one engine run.
class Network {
 public:
  Network(const ScenarioConfig& config, Topology topology);
  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  /// Runs to the configured horizon and closes the metrics. Call once.
  void run();

  void set_trace_sink(std::ostream* sink) { engine_.set_trace_sink(sink); }
  void on_trickle_interval(std::function<void(const TrickleInterval&)> cb) {
    interval_cb_ = std::move(cb);
  }
  void on_trickle_fire(std::function<void(const TrickleFireRecord&)> cb) {
    fire_cb_ = std::move(cb);
  }

  std::size_t size() const { return nodes_.size(); }
  const RplNode& node(NodeId id) const { return nodes_.at(id - 1); }
  const UnitDiskMedium& medium() const { return medium_; }
  const Topology& topology() const { return topology_; }
  const MetricsCollector& metrics() const { return metrics_; }
  std::vector<NodeCounters> counters() const;
  std::uint64_t trace_hash() const { return engine_.trace_hash(); }

  /// Non-attacker nodes that switched to the attacker at or after the
  /// attack start.
  const std::set<NodeId>& trapped() const { return trapped_; }
  const CycleStats& cycles() const { return cycles_; }
  std::uint64_t total_trickle_resets() const;
  bool attack_active() const { return attack_launched_; }

  /// True when the node originates application traffic.
  bool is_source(NodeId id) const;

 private:
  struct TrickleHandles {
    EventHandle fire;
    EventHandle end;
  };

  void dispatch(const Event& e);
  void start_trickle(NodeId id, bool counted);
  void schedule_interval(NodeId id, bool after_reset);
  void on_trickle_fire(NodeId id);
  void on_interval_end(NodeId id);
  void emit_dio(NodeId id);
  void on_frame(NodeId id, std::uint64_t token);
  void on_app_send(NodeId id, std::uint32_t window);
  void handle_packet(NodeId at, DataPacket pkt, bool received);
  void apply(NodeId id, const Reaction& r);
  bool closes_cycle(NodeId id) const;
  SecOfMode mode() const;
  void schedule_app(NodeId id, std::uint32_t window);

  ScenarioConfig config_;
  ProtocolConfig protocol_;
  RadioConstants radio_;
  Topology topology_;
  UnitDiskMedium medium_;
  AttackConfig attack_;
  Engine engine_;
  MetricsCollector metrics_;
  std::vector<RplNode> nodes_;
  std::vector<RngStream> trickle_rng_;
  std::vector<RngStream> app_rng_;
  std::vector<RngStream> radio_rng_;
  std::vector<TrickleHandles> trickle_handles_;
  std::vector<std::uint32_t> next_seq_;
  std::unordered_map<std::uint64_t, Frame> frames_;
  std::uint64_t next_token_ = 1;
  std::set<NodeId> trapped_;
  CycleStats cycles_;
  bool attack_launched_ = false;
  bool ran_ = false;
  std::function<void(const TrickleInterval&)> interval_cb_;
  std::function<void(const TrickleFireRecord&)> fire_cb_;
};

}  // namespace rplsec
