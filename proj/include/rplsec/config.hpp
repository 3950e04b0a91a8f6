#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rplsec/adversary.hpp"
#include "rplsec/metrics.hpp"
#include "rplsec/objective.hpp"
#include "rplsec/radio.hpp"
#include "rplsec/rpl.hpp"

namespace rplsec {

/// Invalid configuration or command line (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Attacker placement contradicts the requested level (exit code 3).
class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TopologySpec {
  enum class Kind : std::uint8_t { Grid51, Small11, Random, File };
  Kind kind = Kind::Grid51;
  std::uint32_t nodes = 51;   // random
  double area = 100.0;        // random, meters per side
  std::uint64_t seed = 1;     // random
  std::string path;           // file

  /// "grid51", "small11", "random:<n>:<area>:<seed>", "file:<path>".
  static TopologySpec parse(const std::string& text);
  std::string to_string() const;
  bool operator==(const TopologySpec&) const = default;
};

struct ScenarioConfig {
  // [scenario]
  TopologySpec topology;
  NodeId root = 1;
  OfKind of = OfKind::Mrhof;
  double alpha = 64.0;
  double rank_unit = 128.0;
  HopClause hop_clause = HopClause::Leq;
  bool secof_rank_floor = true;
  double normal_duration_s = 60.0;
  double loss_rate = 0.0;
  double tx_range = 30.0;
  double horizon_s = 1800.0;
  double app_period_s = 60.0;
  double sample_interval_s = 60.0;
  double initial_etx = 1.0;
  double ewma_beta = 90.0;
  double ewma_scale = 100.0;
  std::uint64_t seed = 1;
  std::string output = "rplsec";

  // [trickle]
  double trickle_imin_ms = 4000.0;
  unsigned trickle_doublings = 8;
  unsigned trickle_k = 10;

  // [radio]
  double bitrate_bps = 250000.0;
  std::uint32_t dio_bytes = 80;
  std::uint32_t data_bytes = 100;
  std::uint32_t ack_bytes = 11;
  int max_attempts = 8;
  double processing_us = 500.0;
  double broadcast_on_ms = 125.0;

  // [power]
  double tx_mw = 52.2;
  double rx_mw = 56.4;
  double idle_mw = 0.163;

  // [attack]
  bool attack_enabled = false;
  NodeId attacker = 0;  // 0: the topology's designated attacker slot
  PlacementLevel level = PlacementLevel::Level3;
  double attack_start_s = 120.0;
  double attack_rank = 257.0;

  bool operator==(const ScenarioConfig&) const = default;

  ProtocolConfig protocol() const;
  RadioConstants radio() const;
  LinkModel link() const;
  PowerConstants power() const;
  SimTime horizon() const { return from_seconds(horizon_s); }

  /// Throws ConfigError on the first violated constraint.
  void validate() const;
};

/// Sectioned key = value text. Unknown sections or keys are errors.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

/// Flat (key, value) list in serialization order, used for runs.csv.
std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& config);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace rplsec
