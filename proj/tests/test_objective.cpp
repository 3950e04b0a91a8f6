#include <doctest.h>

#include <vector>

#include "rplsec/objective.hpp"

using namespace rplsec;

namespace {

OfParams raw(double alpha) {
  OfParams p;
  p.rank_unit = 1.0;
  p.alpha = alpha;
  return p;
}

// Candidate whose path rank through it is `path` at ETX 1 and unit 1.
Candidate via(NodeId id, double path, std::optional<HopCount> hop = std::nullopt) {
  return {id, Rank(path - 1.0), 1.0, hop};
}

}  // namespace

TEST_CASE("of0 picks the strict minimum advertised rank") {
  std::vector<Candidate> c{{1, Rank(256), 1.0, 0}, {2, Rank(258), 1.0, 1}};
  CHECK(of0_select(c, std::nullopt) == NodeId{1});
  CHECK_FALSE(of0_select({}, std::nullopt).has_value());
}

TEST_CASE("of0 chases a lower advertised rank") {
  std::vector<Candidate> c{{3, Rank(257), 1.0, 3}, {7, Rank(259), 1.0, 2}};
  CHECK(of0_select(c, NodeId{7}) == NodeId{3});
}

TEST_CASE("of0 ties go to the lowest id and infinite ranks are skipped") {
  std::vector<Candidate> c{{9, Rank(300), 1.0, 1}, {4, Rank(300), 1.0, 1},
                           {2, Rank::infinite(), 1.0, 1}};
  CHECK(of0_select(c, std::nullopt) == NodeId{4});
  std::vector<Candidate> dead{{2, Rank::infinite(), 1.0, 1}};
  CHECK_FALSE(of0_select(dead, std::nullopt).has_value());
}

TEST_CASE("of0 is invariant under increasing rank transforms") {
  RngStream rng(8, 0, StreamPurpose::Test);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Candidate> a;
    std::vector<Candidate> b;
    const auto n = rng.uniform_int(1, 8);
    for (NodeId id = 1; id <= n; ++id) {
      const double r = 256.0 + static_cast<double>(rng.uniform_int(0, 20));
      a.push_back({id, Rank(r), 1.0, 1});
      b.push_back({id, Rank(3.0 * r * r + 7.0), 1.0, 1});
    }
    CHECK(of0_select(a, std::nullopt) == of0_select(b, std::nullopt));
  }
}

TEST_CASE("mrhof hysteresis") {
  const OfParams p = raw(16.0);
  std::vector<Candidate> keep{via(1, 300), via(2, 290)};
  CHECK(mrhof_select(keep, NodeId{1}, p) == NodeId{1});
  std::vector<Candidate> move{via(1, 300), via(2, 280)};
  CHECK(mrhof_select(move, NodeId{1}, p) == NodeId{2});
  std::vector<Candidate> edge{via(1, 300), via(2, 284)};
  CHECK(mrhof_select(edge, NodeId{1}, p) == NodeId{1});
}

TEST_CASE("mrhof first attach takes the minimum path rank") {
  std::vector<Candidate> c{{1, Rank(257.5), 1.0, 1}, {2, Rank(262.0), 1.0, 1}};
  CHECK(mrhof_select(c, std::nullopt, raw(0.5)) == NodeId{1});
}

TEST_CASE("mrhof weighs link ETX") {
  OfParams p;
  std::vector<Candidate> c{{1, Rank(256), 3.0, 0}, {2, Rank(384), 1.0, 1}};
  CHECK(mrhof_select(c, std::nullopt, p) == NodeId{2});
}

TEST_CASE("mrhof drops a current parent that turned infinite") {
  std::vector<Candidate> c{{1, Rank::infinite(), 1.0, 1}, via(2, 400)};
  CHECK(mrhof_select(c, NodeId{1}, raw(16)) == NodeId{2});
}

TEST_CASE("sec-of normal mode behaves like mrhof") {
  RngStream rng(12, 0, StreamPurpose::Test);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Candidate> c;
    const auto n = rng.uniform_int(1, 6);
    for (NodeId id = 1; id <= n; ++id) {
      c.push_back({id, Rank(256.0 + rng.uniform(0, 600)), rng.uniform(1, 5),
                   static_cast<HopCount>(rng.uniform_int(0, 5))});
    }
    const std::optional<NodeId> cur =
        rng.bernoulli(0.5) ? std::optional<NodeId>(rng.uniform_int(1, n + 1)) : std::nullopt;
    OfParams p;
    CHECK(secof_select(c, cur, p, SecOfMode::Normal) == mrhof_select(c, cur, p));
  }
}

TEST_CASE("sec-of restricted mode rejects a deeper frozen hop") {
  OfParams p = raw(0.5);
  std::vector<Candidate> c{via(1, 280, 2), {2, Rank(257), 1.0, 3}};
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{1});
}

TEST_CASE("sec-of restricted mode allows a same-hop improvement") {
  OfParams p = raw(0.5);
  p.rank_floor = false;
  std::vector<Candidate> c{via(1, 280, 3), via(2, 258.5, 3)};
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{2});
  p.hop_clause = HopClause::Eq;
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{2});
}

TEST_CASE("sec-of hop clause variants") {
  OfParams p = raw(0.5);
  p.rank_floor = false;
  std::vector<Candidate> c{via(1, 280, 3), via(2, 258.5, 2)};
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{2});
  p.hop_clause = HopClause::Eq;
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{1});
}

TEST_CASE("sec-of rank floor rejects ranks too low for the frozen hop") {
  OfParams p;  // unit 128
  // Frozen hop 2 implies at least 256 + 2 * 128.
  std::vector<Candidate> c{{1, Rank(640), 1.0, 2}, {2, Rank(257), 1.0, 2}};
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{1});
  std::vector<Candidate> honest{{1, Rank(700), 1.0, 2}, {2, Rank(512), 1.0, 2}};
  CHECK(secof_select(honest, NodeId{1}, p, SecOfMode::Restricted) == NodeId{2});
  p.rank_floor = false;
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{2});
}

TEST_CASE("sec-of level 3 attacker never lures a node whose parent is shallower") {
  OfParams p;
  // Attacker's frozen hop is 3, current parent's is 2.
  std::vector<Candidate> c{{10, Rank(640), 1.0, 2}, {51, Rank(257), 1.0, 3}};
  for (HopClause clause : {HopClause::Leq, HopClause::Eq}) {
    p.hop_clause = clause;
    CHECK(secof_select(c, NodeId{10}, p, SecOfMode::Restricted) == NodeId{10});
  }
}

TEST_CASE("sec-of unknown frozen hop is ineligible") {
  OfParams p = raw(0.5);
  std::vector<Candidate> c{via(1, 400, 2), via(2, 260)};
  CHECK(secof_select(c, NodeId{1}, p, SecOfMode::Restricted) == NodeId{1});
  std::vector<Candidate> only_unknown{via(2, 260)};
  CHECK_FALSE(secof_select(only_unknown, std::nullopt, p, SecOfMode::Restricted).has_value());
}

TEST_CASE("sec-of bootstrap respects the own frozen hop") {
  OfParams p = raw(0.5);
  p.rank_floor = false;
  p.own_hop = 3;
  std::vector<Candidate> c{via(1, 300, 3), via(2, 320, 2)};
  CHECK(secof_select(c, std::nullopt, p, SecOfMode::Restricted) == NodeId{2});
  std::vector<Candidate> none{via(1, 300, 3), via(4, 290, 4)};
  CHECK_FALSE(secof_select(none, std::nullopt, p, SecOfMode::Restricted).has_value());
}

TEST_CASE("mode boundary is half open") {
  const SimTime d = from_seconds(60);
  CHECK(secof_mode(0, d) == SecOfMode::Normal);
  CHECK(secof_mode(d - 1, d) == SecOfMode::Normal);
  CHECK(secof_mode(d, d) == SecOfMode::Restricted);
  CHECK(secof_mode(from_seconds(120), d) == SecOfMode::Restricted);
}

TEST_CASE("objective names round trip") {
  for (OfKind k : {OfKind::Of0, OfKind::Mrhof, OfKind::SecOf}) {
    CHECK(parse_of_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_of_kind("ospf").has_value());
  CHECK(parse_hop_clause("eq") == HopClause::Eq);
}
