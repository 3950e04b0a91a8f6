#include <doctest.h>

#include "rplsec/data_plane.hpp"

using namespace rplsec;

namespace {

DataPacket upward(double sender_rank, bool r = false) {
  DataPacket p;
  p.origin = 9;
  p.sender_rank = Rank(sender_rank);
  p.r_flag = r;
  return p;
}

}  // namespace

TEST_CASE("consistency verdicts for upward packets") {
  CHECK(check_consistency(Rank(300), upward(400)) == Verdict::Consistent);
  CHECK(check_consistency(Rank(300), upward(250)) == Verdict::MarkAndForward);
  CHECK(check_consistency(Rank(300), upward(250, true)) == Verdict::DropAndReset);
  CHECK(check_consistency(Rank(300), upward(300)) == Verdict::MarkAndForward);
}

TEST_CASE("consistency verdicts for downward packets") {
  DataPacket down = upward(250);
  down.o_flag = true;
  CHECK(check_consistency(Rank(300), down) == Verdict::Consistent);
  down.sender_rank = Rank(400);
  CHECK(check_consistency(Rank(300), down) == Verdict::MarkAndForward);
}

TEST_CASE("root delivers anything") {
  DataPacket p = upward(100, true);
  CHECK(forward(true, std::nullopt, kRootRank, p, true).action ==
        ForwardDecision::Action::Deliver);
}

TEST_CASE("poisoned node drops with no route") {
  DataPacket p = upward(500);
  CHECK(forward(false, std::nullopt, Rank::infinite(), p, true).action ==
        ForwardDecision::Action::DropNoRoute);
  CHECK(forward(false, NodeId{3}, Rank::infinite(), p, false).action ==
        ForwardDecision::Action::DropNoRoute);
}

TEST_CASE("forward stamps sender rank and marks the R flag once") {
  DataPacket p = upward(250);
  auto first = forward(false, NodeId{4}, Rank(300), p, true);
  CHECK(first.action == ForwardDecision::Action::Unicast);
  CHECK(first.next_hop == 4);
  CHECK(p.r_flag);
  CHECK(p.sender_rank == Rank(300));

  p.sender_rank = Rank(250);
  auto second = forward(false, NodeId{4}, Rank(300), p, true);
  CHECK(second.action == ForwardDecision::Action::DropInconsistency);
  CHECK(second.reset_trickle);
}

TEST_CASE("locally originated packets skip the check") {
  DataPacket p = upward(0);
  auto d = forward(false, NodeId{2}, Rank(700), p, false);
  CHECK(d.action == ForwardDecision::Action::Unicast);
  CHECK_FALSE(p.r_flag);
  CHECK(p.sender_rank == Rank(700));
}

TEST_CASE("hop ttl backstop") {
  DataPacket p = upward(900);
  p.hops_traversed = kHopTtl;
  CHECK(forward(false, NodeId{2}, Rank(700), p, true).action == ForwardDecision::Action::DropTtl);
}

TEST_CASE("chain delivery hop count") {
  // n3 -> n2 -> root
  DataPacket p;
  p.origin = 3;
  auto at3 = forward(false, NodeId{2}, Rank(512), p, false);
  REQUIRE(at3.action == ForwardDecision::Action::Unicast);
  ++p.hops_traversed;
  auto at2 = forward(false, NodeId{1}, Rank(384), p, true);
  REQUIRE(at2.action == ForwardDecision::Action::Unicast);
  ++p.hops_traversed;
  CHECK(forward(true, std::nullopt, kRootRank, p, true).action ==
        ForwardDecision::Action::Deliver);
  CHECK(p.hops_traversed == 2);
  CHECK_FALSE(p.r_flag);
}

TEST_CASE("application windows") {
  CHECK(app_emission_time(0, 5) == 5);
  CHECK(app_emission_time(3, from_seconds(59)) == from_seconds(239));
}
