#include "rplsec/adversary.hpp"

#include <algorithm>

namespace rplsec {

std::string_view to_string(PlacementLevel level) {
  switch (level) {
    case PlacementLevel::Level1: return "1";
    case PlacementLevel::Level2: return "2";
    case PlacementLevel::Level3: return "3";
    case PlacementLevel::Explicit: return "explicit";
  }
  return "?";
}

std::optional<PlacementLevel> parse_placement(std::string_view text) {
  if (text == "1" || text == "level1") return PlacementLevel::Level1;
  if (text == "2" || text == "level2") return PlacementLevel::Level2;
  if (text == "3" || text == "level3") return PlacementLevel::Level3;
  if (text == "explicit") return PlacementLevel::Explicit;
  return std::nullopt;
}

PlacementLevel classify_placement(const UnitDiskMedium& medium, NodeId root, NodeId attacker) {
  if (medium.in_range(root, attacker)) return PlacementLevel::Level1;
  const auto& root_nbrs = medium.neighbors(root);
  const bool second = std::any_of(root_nbrs.begin(), root_nbrs.end(),
                                  [&](NodeId n) { return medium.in_range(n, attacker); });
  return second ? PlacementLevel::Level2 : PlacementLevel::Level3;
}

PlacementCheck verify_placement(const UnitDiskMedium& medium, NodeId root, NodeId attacker,
                                PlacementLevel requested) {
  PlacementCheck check;
  if (attacker == root) {
    return {false, PlacementLevel::Explicit, "attacker cannot be the root"};
  }
  check.actual = classify_placement(medium, root, attacker);
  if (requested != PlacementLevel::Explicit && requested != check.actual) {
    check.ok = false;
    check.diagnostic = "attacker " + std::to_string(attacker) + " requested at level " +
                       std::string(to_string(requested)) + " but sits at level " +
                       std::string(to_string(check.actual));
  }
  return check;
}

DioMessage attacker_emit_dio(const RplNode& node, const AttackConfig& attack, SimTime now) {
  DioMessage dio = node.make_dio();
  dio.advertised_rank = attack.enabled && now >= attack.start_time ? attack.advertised_rank
                                                                   : node.rank();
  return dio;
}

void launch_attack(RplNode& node, const AttackConfig& attack) {
  node.set_rank_lie(attack.advertised_rank);
}

}  // namespace rplsec
