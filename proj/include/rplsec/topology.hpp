#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rplsec/adversary.hpp"
#include "rplsec/config.hpp"
#include "rplsec/radio.hpp"

namespace rplsec {

/// Node positions plus the roles that matter to a scenario. positions[i]
/// belongs to node i + 1.
struct Topology {
  std::vector<Position> positions;
  NodeId root = 1;
  /// Designated attacker slot, if the layout has one.
  std::optional<NodeId> attacker;
};

/// 49 nodes on a 7x7 grid (ids 2..50, 16 m pitch), root 1 at the top
/// center, attacker 51 placed at the requested level. Explicit falls back
/// to the Level 3 spot.
Topology make_grid51(PlacementLevel level);

/// root -> {2,3,4} -> {5,6,7} -> {8,9,10}; attacker 11 hears only 8, 9, 10.
Topology make_small11();

/// `n` nodes uniform on [0, area]^2, node 1 the root, node n the attacker
/// slot. Redraws with derived seeds until the unit-disk graph is connected;
/// throws ConfigError after 10000 attempts.
Topology make_random(std::uint32_t n, double area, std::uint64_t seed, double tx_range);

/// One "id x y" line per node, ids 1..N in any order; '#' starts a comment.
Topology load_topology_file(const std::string& path);
void write_topology_file(const Topology& topo, const std::string& path);

/// Builds the topology a config asks for. Applies the config's explicit
/// attacker id when set.
Topology build_topology(const ScenarioConfig& config);

}  // namespace rplsec
