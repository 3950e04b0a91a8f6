#include "rplsec/topology.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rplsec {

Topology make_grid51(PlacementLevel level) {
  Topology topo;
  topo.positions.push_back({50.0, 100.0});
  for (int j = 0; j < 7; ++j) {
    for (int i = 0; i < 7; ++i) {
      topo.positions.push_back({2.0 + 16.0 * i, 98.0 - 16.0 * j});
    }
  }
  switch (level) {
    case PlacementLevel::Level1: topo.positions.push_back({50.0, 84.0}); break;
    case PlacementLevel::Level2: topo.positions.push_back({50.0, 60.0}); break;
    case PlacementLevel::Level3:
    case PlacementLevel::Explicit: topo.positions.push_back({50.0, 40.0}); break;
  }
  topo.attacker = 51;
  return topo;
}

Topology make_small11() {
  Topology topo;
  topo.positions = {{50.0, 100.0}, {35.0, 78.0}, {50.0, 78.0}, {65.0, 78.0},
                    {35.0, 56.0},  {50.0, 56.0}, {65.0, 56.0}, {35.0, 34.0},
                    {50.0, 34.0},  {65.0, 34.0}, {50.0, 12.0}};
  topo.attacker = 11;
  return topo;
}

Topology make_random(std::uint32_t n, double area, std::uint64_t seed, double tx_range) {
  if (n < 2) throw ConfigError("random topology needs at least 2 nodes");
  if (!(area > 0.0)) throw ConfigError("random topology area must be positive");
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    RngStream rng(seed, attempt, StreamPurpose::Topology);
    Topology topo;
    topo.positions.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const double x = rng.uniform(0.0, area);
      const double y = rng.uniform(0.0, area);
      topo.positions.push_back({x, y});
    }
    if (UnitDiskMedium(topo.positions, {tx_range, 0.0}).connected()) {
      topo.attacker = n;
      return topo;
    }
  }
  throw ConfigError("no connected random topology found for n=" + std::to_string(n));
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read topology file '" + path + "'");
  std::vector<std::pair<NodeId, Position>> rows;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    long long id = 0;
    Position p;
    if (!(fields >> id)) continue;
    std::string extra;
    if (!(fields >> p.x >> p.y) || (fields >> extra) || id < 1) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected 'id x y'");
    }
    rows.emplace_back(static_cast<NodeId>(id), p);
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Topology topo;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].first != i + 1) {
      throw ConfigError(path + ": node ids must be exactly 1..N");
    }
    topo.positions.push_back(rows[i].second);
  }
  if (topo.positions.empty()) throw ConfigError(path + ": no nodes");
  return topo;
}

void write_topology_file(const Topology& topo, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "# id x y";
  if (topo.attacker) out << "  (attacker " << *topo.attacker << ')';
  out << '\n';
  for (std::size_t i = 0; i < topo.positions.size(); ++i) {
    out << (i + 1) << ' ' << format_double(topo.positions[i].x) << ' '
        << format_double(topo.positions[i].y) << '\n';
  }
}

Topology build_topology(const ScenarioConfig& config) {
  Topology topo;
  switch (config.topology.kind) {
    case TopologySpec::Kind::Grid51: topo = make_grid51(config.level); break;
    case TopologySpec::Kind::Small11: topo = make_small11(); break;
    case TopologySpec::Kind::Random:
      topo = make_random(config.topology.nodes, config.topology.area, config.topology.seed,
                         config.tx_range);
      break;
    case TopologySpec::Kind::File: topo = load_topology_file(config.topology.path); break;
  }
  const auto n = static_cast<NodeId>(topo.positions.size());
  if (config.root < 1 || config.root > n) {
    throw ConfigError("root " + std::to_string(config.root) + " is not a node of the topology");
  }
  topo.root = config.root;
  if (config.attacker != 0) {
    if (config.attacker > n) {
      throw ConfigError("attacker " + std::to_string(config.attacker) +
                        " is not a node of the topology");
    }
    topo.attacker = config.attacker;
  }
  if (topo.attacker && *topo.attacker == topo.root) {
    throw PlacementError("attacker cannot be the root");
  }
  return topo;
}

}  // namespace rplsec
