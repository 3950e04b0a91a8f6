#include <doctest.h>

#include "rplsec/config.hpp"

using namespace rplsec;

TEST_CASE("defaults serialize and parse back unchanged") {
  ScenarioConfig cfg;
  CHECK(parse_config(serialize_config(cfg)) == cfg);
}

TEST_CASE("config round trip over random values") {
  RngStream rng(21, 0, StreamPurpose::Test);
  for (int i = 0; i < 300; ++i) {
    ScenarioConfig c;
    switch (rng.uniform_int(0, 4)) {
      case 0: c.topology = TopologySpec::parse("grid51"); break;
      case 1: c.topology = TopologySpec::parse("small11"); break;
      case 2:
        c.topology = TopologySpec::parse("random:" + std::to_string(rng.uniform_int(2, 90)) + ":" +
                                         format_double(rng.uniform(10, 500)) + ":" +
                                         std::to_string(rng.next_u64()));
        break;
      default: c.topology = TopologySpec::parse("file:/tmp/topo file.txt"); break;
    }
    c.of = static_cast<OfKind>(rng.uniform_int(0, 3));
    c.alpha = rng.uniform(0, 200);
    c.rank_unit = rng.uniform(1, 256);
    c.hop_clause = rng.bernoulli(0.5) ? HopClause::Leq : HopClause::Eq;
    c.secof_rank_floor = rng.bernoulli(0.5);
    c.loss_rate = rng.uniform01();
    c.tx_range = rng.uniform(1, 100);
    c.horizon_s = rng.uniform(200, 4000);
    c.initial_etx = rng.uniform(1, 5);
    c.ewma_beta = rng.uniform(0, 99);
    c.seed = rng.next_u64();
    c.output = "out/run" + std::to_string(i);
    c.trickle_k = static_cast<unsigned>(rng.uniform_int(1, 20));
    c.tx_mw = rng.uniform(1, 100);
    c.attack_enabled = rng.bernoulli(0.5);
    c.attacker = static_cast<NodeId>(rng.uniform_int(2, 60));
    c.level = static_cast<PlacementLevel>(rng.uniform_int(0, 4));
    c.attack_start_s = rng.uniform(0, 150);
    const std::string text = serialize_config(c);
    const ScenarioConfig back = parse_config(text);
    CHECK(back == c);
    CHECK(serialize_config(back) == text);
  }
}

TEST_CASE("comments, blank lines and whitespace are accepted") {
  const auto c = parse_config(
      "# experiment\n\n[scenario]\n  of = secof   ; trailing\nloss_rate=0.25\n"
      "[attack]\nlevel = 2\n");
  CHECK(c.of == OfKind::SecOf);
  CHECK(c.loss_rate == 0.25);
  CHECK(c.attack_enabled);
  CHECK(c.level == PlacementLevel::Level2);
}

TEST_CASE("unknown keys and sections are errors") {
  CHECK_THROWS_AS(parse_config("[scenario]\nlos_rate = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[senario]\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("of = mrhof\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nof mrhof\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario\n"), ConfigError);
}

TEST_CASE("bad values are errors") {
  CHECK_THROWS_AS(parse_config("[scenario]\nof = ospf\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nloss_rate = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nloss_rate = half\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nseed = -3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\nsecof_rank_floor = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\ntopology = ring\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[scenario]\ntopology = random:10:100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[trickle]\nk = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[attack]\nattacker = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[attack]\nstart_s = 5000\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/x.cfg"), ConfigError);
}

TEST_CASE("derived component settings") {
  ScenarioConfig c;
  c.trickle_imin_ms = 8000;
  c.broadcast_on_ms = 10;
  c.loss_rate = 0.2;
  CHECK(c.protocol().trickle.imin == from_seconds(8));
  CHECK(c.protocol().of_params.rank_unit == 128.0);
  CHECK(c.radio().broadcast_on == 10'000);
  CHECK(c.link().loss_rate == 0.2);
  CHECK(c.horizon() == from_seconds(1800));
}

TEST_CASE("flat field list follows serialization order") {
  const auto fields = config_fields(ScenarioConfig{});
  REQUIRE_FALSE(fields.empty());
  CHECK(fields.front().first == "scenario.topology");
  CHECK(fields.front().second == "grid51");
}

TEST_CASE("shortest round-trip doubles") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(60) == "60");
  const double x = 0.1 + 0.2;
  CHECK(std::stod(format_double(x)) == x);
}
