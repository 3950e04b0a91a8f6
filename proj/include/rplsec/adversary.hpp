#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rplsec/messages.hpp"
#include "rplsec/radio.hpp"
#include "rplsec/rpl.hpp"

namespace rplsec {

enum class PlacementLevel : std::uint8_t { Level1 = 1, Level2 = 2, Level3 = 3, Explicit = 0 };

std::string_view to_string(PlacementLevel level);
std::optional<PlacementLevel> parse_placement(std::string_view text);

struct AttackConfig {
  NodeId attacker = 0;
  SimTime start_time = 120 * kMicrosPerSecond;
  Rank advertised_rank{257.0};
  PlacementLevel placement = PlacementLevel::Explicit;
  /// When false the attacker node stays honest for the whole run.
  bool enabled = true;
};

struct PlacementCheck {
  bool ok = true;
  PlacementLevel actual = PlacementLevel::Explicit;
  std::string diagnostic;
};

/// Level of `attacker` relative to `root`: 1 when adjacent to the root,
/// 2 when adjacent to a root neighbor, 3 otherwise.
PlacementLevel classify_placement(const UnitDiskMedium& medium, NodeId root, NodeId attacker);

/// Compares the requested level with the graph. Explicit always passes.
PlacementCheck verify_placement(const UnitDiskMedium& medium, NodeId root, NodeId attacker,
                                PlacementLevel requested);

/// The attacker's DIO: honest before start_time, the fixed lie afterwards.
DioMessage attacker_emit_dio(const RplNode& node, const AttackConfig& attack, SimTime now);

/// Switches the node's advertised rank to the lie. Called at start_time.
void launch_attack(RplNode& node, const AttackConfig& attack);

}  // namespace rplsec
