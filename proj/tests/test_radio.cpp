#include <doctest.h>

#include <stdexcept>

#include "rplsec/radio.hpp"

using namespace rplsec;

TEST_CASE("unit disk boundary") {
  UnitDiskMedium near({{0, 0}, {10, 0}}, {50.0, 0.0});
  CHECK(near.in_range(1, 2));
  CHECK(near.in_range(2, 1));
  UnitDiskMedium far({{0, 0}, {50.01, 0}}, {50.0, 0.0});
  CHECK_FALSE(far.in_range(1, 2));
  CHECK(far.neighbors(1).empty());
  UnitDiskMedium exact({{0, 0}, {50, 0}}, {50.0, 0.0});
  CHECK(exact.in_range(1, 2));
}

TEST_CASE("neighbor relation is symmetric and excludes self") {
  std::vector<Position> pos;
  RngStream rng(5, 0, StreamPurpose::Test);
  for (int i = 0; i < 40; ++i) pos.push_back({rng.uniform(0, 100), rng.uniform(0, 100)});
  UnitDiskMedium m(pos, {30.0, 0.0});
  for (NodeId a = 1; a <= 40; ++a) {
    CHECK_FALSE(m.in_range(a, a));
    for (NodeId b : m.neighbors(a)) CHECK(m.in_range(b, a));
  }
}

TEST_CASE("invalid medium parameters") {
  CHECK_THROWS_AS(UnitDiskMedium({{0, 0}}, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(UnitDiskMedium({{0, 0}}, {10.0, 1.5}), std::invalid_argument);
  UnitDiskMedium m({{0, 0}}, {10.0, 0.0});
  CHECK_THROWS_AS(m.neighbors(2), std::out_of_range);
  CHECK_THROWS_AS(m.neighbors(0), std::out_of_range);
}

TEST_CASE("multicast delivery counts") {
  std::vector<Position> star{{0, 0}, {5, 0}, {0, 5}, {-5, 0}};
  RngStream rng(1, 1, StreamPurpose::Radio);
  CHECK(UnitDiskMedium(star, {10.0, 0.0}).transmit_multicast(1, rng).size() == 3);
  CHECK(UnitDiskMedium(star, {10.0, 1.0}).transmit_multicast(1, rng).empty());

  UnitDiskMedium half({{0, 0}, {5, 0}}, {10.0, 0.5});
  int got = 0;
  constexpr int trials = 10000;
  for (int i = 0; i < trials; ++i) got += static_cast<int>(half.transmit_multicast(1, rng).size());
  const double frac = static_cast<double>(got) / trials;
  CHECK(frac >= 0.48);
  CHECK(frac <= 0.52);
}

TEST_CASE("unicast outcomes") {
  RngStream rng(2, 1, StreamPurpose::Radio);
  std::vector<Position> pair{{0, 0}, {5, 0}, {100, 0}};
  auto ok = UnitDiskMedium(pair, {10.0, 0.0}).transmit_unicast(1, 2, 8, rng);
  CHECK(ok.delivered());
  CHECK(ok.attempts == 1);
  auto lost = UnitDiskMedium(pair, {10.0, 1.0}).transmit_unicast(1, 2, 8, rng);
  CHECK(lost.status == UnicastOutcome::Status::Lost);
  CHECK(lost.attempts == 8);
  auto oor = UnitDiskMedium(pair, {10.0, 0.0}).transmit_unicast(1, 3, 8, rng);
  CHECK(oor.status == UnicastOutcome::Status::OutOfRange);
  CHECK_THROWS(UnitDiskMedium(pair, {10.0, 0.0}).transmit_unicast(1, 2, 0, rng));
}

TEST_CASE("first-attempt success rate at half loss") {
  RngStream rng(4, 1, StreamPurpose::Radio);
  UnitDiskMedium m({{0, 0}, {5, 0}}, {10.0, 0.5});
  int first = 0;
  constexpr int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    auto out = m.transmit_unicast(1, 2, 8, rng);
    if (out.delivered() && out.attempts == 1) ++first;
  }
  const double p = static_cast<double>(first) / trials;
  CHECK(p >= 0.48);
  CHECK(p <= 0.52);
}

TEST_CASE("hop distances and connectivity on a line") {
  UnitDiskMedium line({{0, 0}, {10, 0}, {20, 0}, {30, 0}, {100, 0}}, {12.0, 0.0});
  auto d = line.hop_distances(1);
  CHECK(d == std::vector<int>{0, 1, 2, 3, -1});
  CHECK_FALSE(line.connected());
  UnitDiskMedium joined({{0, 0}, {10, 0}, {20, 0}}, {12.0, 0.0});
  CHECK(joined.connected());
}

TEST_CASE("airtime at 250 kbit/s") {
  CHECK(airtime(100, 250000.0) == 3200);
  CHECK(airtime(11, 250000.0) == 352);
  CHECK(airtime(80, 250000.0) == 2560);
}
