#include <doctest.h>

#include "rplsec/adversary.hpp"

using namespace rplsec;

TEST_CASE("placement levels on a line") {
  // root 1, then 2, 3, 4 spaced one hop apart
  UnitDiskMedium line({{0, 0}, {10, 0}, {20, 0}, {30, 0}}, {12.0, 0.0});
  CHECK(classify_placement(line, 1, 2) == PlacementLevel::Level1);
  CHECK(classify_placement(line, 1, 3) == PlacementLevel::Level2);
  CHECK(classify_placement(line, 1, 4) == PlacementLevel::Level3);

  CHECK(verify_placement(line, 1, 2, PlacementLevel::Level1).ok);
  CHECK(verify_placement(line, 1, 4, PlacementLevel::Level3).ok);
  auto bad = verify_placement(line, 1, 2, PlacementLevel::Level2);
  CHECK_FALSE(bad.ok);
  CHECK(bad.actual == PlacementLevel::Level1);
  CHECK_FALSE(bad.diagnostic.empty());
  CHECK(verify_placement(line, 1, 3, PlacementLevel::Explicit).ok);
  CHECK_FALSE(verify_placement(line, 1, 1, PlacementLevel::Explicit).ok);
}

TEST_CASE("attacker DIO switches to the lie at start time") {
  ProtocolConfig cfg;
  cfg.of_params.rank_unit = 1.0;
  RplNode node(51, false, cfg);
  DioMessage parent;
  parent.sender = 40;
  parent.advertised_rank = Rank(600);
  parent.hop = 3;
  node.handle_dio(parent, 0, SecOfMode::Normal);

  AttackConfig attack;
  attack.attacker = 51;
  CHECK(attacker_emit_dio(node, attack, from_seconds(119)).advertised_rank == Rank(601));
  CHECK(attacker_emit_dio(node, attack, from_seconds(121)).advertised_rank == Rank(257));

  launch_attack(node, attack);
  CHECK(node.make_dio().advertised_rank == Rank(257));
  CHECK(node.rank() == Rank(601));
  CHECK(node.make_dio().hop == 4);
}

TEST_CASE("level 1 attacker cannot lure root neighbors") {
  OfParams p;
  // A root neighbor sees the root (256) and the attacker (257).
  std::vector<Candidate> c{{1, Rank(256), 1.0, 0}, {51, Rank(257), 1.0, 1}};
  for (OfKind of : {OfKind::Of0, OfKind::Mrhof}) {
    CHECK(select_parent(of, c, NodeId{1}, p, SecOfMode::Normal) == NodeId{1});
    CHECK(select_parent(of, c, std::nullopt, p, SecOfMode::Normal) == NodeId{1});
  }
}

TEST_CASE("placement level names") {
  CHECK(parse_placement("2") == PlacementLevel::Level2);
  CHECK(parse_placement("level3") == PlacementLevel::Level3);
  CHECK(to_string(PlacementLevel::Explicit) == "explicit");
  CHECK_FALSE(parse_placement("4").has_value());
}
