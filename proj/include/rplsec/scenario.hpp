#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rplsec/config.hpp"
#include "rplsec/network.hpp"

namespace rplsec {

struct RunSummary {
  std::string of;
  std::string level;
  double loss = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t originated = 0;
  std::uint64_t delivered = 0;
  double pdr = 1.0;
  /// Over packets created at or after the attack start time.
  double pdr_post_attack = 1.0;
  double mean_power_mw = 0.0;
  double mean_power_post_attack_mw = 0.0;
  std::uint64_t trickle_resets = 0;
  std::uint64_t attack_children = 0;
  std::uint64_t attacker_neighbors = 0;
  std::uint64_t cycles = 0;
  std::uint64_t cycles_restricted = 0;
  std::uint64_t trace_hash = 0;
};

RunSummary summarize(const Network& net, const ScenarioConfig& config);

/// "<output>_<of>_L<level>_loss<loss>_s<seed>_"; every CSV of the run
/// starts with it.
std::string output_prefix(const ScenarioConfig& config);

/// Builds the topology and network, runs to the horizon and, when
/// `write_csv` is set, exports the metrics under output_prefix(config).
RunSummary run_scenario(const ScenarioConfig& config, bool write_csv = true);

/// One-line human summary.
std::string format_summary(const RunSummary& s);

struct SweepGrid {
  std::vector<std::uint64_t> seeds;
  std::vector<OfKind> ofs;
  std::vector<PlacementLevel> levels;
  std::vector<double> losses;
};

struct SweepRow {
  RunSummary summary;
  bool ok = false;
  std::string error;
};

/// Runs every (of, level, loss, seed) cell on up to `threads` worker
/// threads. A failing cell is recorded with its error; the rest continue.
/// Rows come back in grid order regardless of completion order.
std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepGrid& grid,
                                unsigned threads, bool write_csv);

/// Consolidated one-row-per-cell CSV.
void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// "a..b" or "a,b,c".
std::vector<std::uint64_t> parse_seed_list(const std::string& text);

}  // namespace rplsec
