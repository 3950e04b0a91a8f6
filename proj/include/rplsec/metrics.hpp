#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rplsec/data_plane.hpp"
#include "rplsec/rpl.hpp"

namespace rplsec {

/// CC2420 at 3 V: 17.4 mA transmit, 18.8 mA receive; duty-cycled floor.
struct PowerConstants {
  double tx_mw = 52.2;
  double rx_mw = 56.4;
  double idle_mw = 0.163;
};

enum class RadioActivity : std::uint8_t { FrameTx, FrameRx };

/// Radio-on time of one node. Idle time is whatever is left of a window.
class EnergyAccount {
 public:
  void account(RadioActivity activity, SimTime duration);

  SimTime tx_time() const { return tx_; }
  SimTime rx_time() const { return rx_; }

  /// Average power over a window of `elapsed` µs given on-times accrued in it.
  static double power_mw(SimTime tx, SimTime rx, SimTime elapsed, const PowerConstants& p);

 private:
  SimTime tx_ = 0;
  SimTime rx_ = 0;
};

struct PdrSample {
  SimTime window_end = 0;
  std::uint64_t originated = 0;  // cumulative
  std::uint64_t delivered = 0;   // cumulative
  double cumulative_pdr = 1.0;
  double mean_power_mw = 0.0;  // over the window, averaged across nodes
  std::uint64_t trickle_resets = 0;  // cumulative, all nodes
  std::vector<std::uint32_t> node_originated;
  std::vector<std::uint32_t> node_delivered;
  std::vector<double> node_power_mw;  // windowed
};

struct PacketRecord {
  NodeId origin = 0;
  std::uint32_t seq = 0;
  SimTime created_at = 0;
  PacketFate fate;
  std::uint32_t hops_traversed = 0;
  bool r_flag_set = false;
  bool resolved = false;
};

/// Labels carried into the CSV rows.
struct RunLabels {
  std::string of;
  std::string level;
  std::string loss;
  std::uint64_t seed = 0;
};

class MetricsCollector {
 public:
  MetricsCollector(std::size_t node_count, PowerConstants power, SimTime sample_interval);

  void energy_account(NodeId node, RadioActivity activity, SimTime duration);
  const EnergyAccount& energy(NodeId node) const { return energy_[node - 1]; }

  void packet_originated(const DataPacket& pkt);
  void packet_resolved(const DataPacket& pkt, FateKind fate, SimTime at);
  /// Marks every unresolved packet as in flight at the horizon.
  void close(SimTime horizon);

  void sample(SimTime now, const std::vector<NodeCounters>& counters);

  SimTime sample_interval() const { return sample_interval_; }
  const std::vector<PdrSample>& samples() const { return samples_; }
  const std::vector<PacketRecord>& packets() const { return packets_; }

  /// Mean power of one node over [0, elapsed).
  double mean_power_mw(NodeId node, SimTime elapsed) const;

  /// Throws std::logic_error when delivered + dropped + in-flight does not
  /// equal originated for some origin.
  void check_conservation() const;

  /// Writes <prefix>runs.csv, pdr_timeseries.csv, power_per_node.csv,
  /// packet_fates.csv and counters.csv. Throws std::runtime_error naming the
  /// path when a file cannot be written.
  void export_csv(const std::string& prefix, const RunLabels& labels,
                  const std::vector<std::pair<std::string, std::string>>& scenario_echo,
                  const std::vector<NodeCounters>& counters, SimTime horizon) const;

 private:
  static std::uint64_t key(NodeId origin, std::uint32_t seq) {
    return (static_cast<std::uint64_t>(origin) << 32) | seq;
  }

  PowerConstants power_;
  SimTime sample_interval_;
  std::vector<EnergyAccount> energy_;
  std::vector<std::pair<SimTime, SimTime>> window_base_;  // tx, rx at last sample
  SimTime last_sample_ = 0;
  std::vector<PacketRecord> packets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<std::uint32_t> originated_;
  std::vector<std::uint32_t> delivered_;
  std::uint64_t originated_total_ = 0;
  std::uint64_t delivered_total_ = 0;
  std::vector<PdrSample> samples_;
};

/// Locale-independent fixed-point formatting.
std::string format_fixed(double value, int precision = 6);

}  // namespace rplsec
