#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <thread>

#include "rplsec/scenario.hpp"
#include "rplsec/topology.hpp"

using namespace rplsec;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitPlacement = 3;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (!part.empty()) out.push_back(part);
  }
  if (out.empty()) throw ConfigError("empty list '" + text + "'");
  return out;
}

std::vector<OfKind> parse_ofs(const std::string& text) {
  std::vector<OfKind> out;
  for (const auto& s : split(text)) {
    auto of = parse_of_kind(s);
    if (!of) throw ConfigError("unknown objective function '" + s + "'");
    out.push_back(*of);
  }
  return out;
}

std::vector<PlacementLevel> parse_levels(const std::string& text) {
  std::vector<PlacementLevel> out;
  for (const auto& s : split(text)) {
    auto lvl = parse_placement(s);
    if (!lvl) throw ConfigError("unknown level '" + s + "'");
    out.push_back(*lvl);
  }
  return out;
}

std::vector<double> parse_losses(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text)) {
    std::size_t used = 0;
    double v = -1.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v < 0.0 || v > 1.0) throw ConfigError("bad loss rate '" + s + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event RPL simulator with a decreased-rank attacker"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_prefix;
  auto* run = app.add_subcommand("run", "Run one scenario and export its CSVs");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--seed", seed, "Override the master seed");
  run->add_option("--out", out_prefix, "Override the output prefix");

  std::string seeds = "1..5";
  std::string ofs = "of0,mrhof,secof";
  std::string levels = "1,2,3";
  std::string losses = "0";
  std::string sweep_csv;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  bool no_run_csv = false;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of scenarios");
  sweep->add_option("config", config_path, "Base scenario config file")->required();
  sweep->add_option("--seeds", seeds, "Seed range a..b or list a,b,c");
  sweep->add_option("--of", ofs, "Objective functions, comma separated");
  sweep->add_option("--level", levels, "Attacker levels, comma separated");
  sweep->add_option("--loss", losses, "Loss rates, comma separated");
  sweep->add_option("--threads", threads, "Worker threads");
  sweep->add_option("--csv", sweep_csv, "Consolidated CSV path (default <output>_sweep.csv)");
  sweep->add_flag("--no-run-csv", no_run_csv, "Skip the per-run CSV exports");

  std::string topo_spec;
  std::string emit;
  std::string topo_level = "3";
  double topo_range = 30.0;
  auto* topo = app.add_subcommand("topo", "Write a topology as 'id x y' lines");
  topo->add_option("spec", topo_spec, "grid51 | small11 | random:n:area:seed | file:path")
      ->required();
  topo->add_option("--emit", emit, "Output file")->required();
  topo->add_option("--level", topo_level, "Attacker level for grid51");
  topo->add_option("--range", topo_range, "Radio range for random connectivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) {
      ScenarioConfig cfg = load_config(config_path);
      if (seed) cfg.seed = *seed;
      if (!out_prefix.empty()) cfg.output = out_prefix;
      std::cout << format_summary(run_scenario(cfg)) << '\n';
    } else if (*sweep) {
      ScenarioConfig cfg = load_config(config_path);
      SweepGrid grid{parse_seed_list(seeds), parse_ofs(ofs), parse_levels(levels),
                     parse_losses(losses)};
      const auto rows = run_sweep(cfg, grid, threads, !no_run_csv);
      const std::string path = sweep_csv.empty() ? cfg.output + "_sweep.csv" : sweep_csv;
      write_sweep_csv(rows, path);
      std::size_t failed = 0;
      for (const auto& row : rows) {
        if (!row.ok) {
          ++failed;
          std::cerr << "cell of=" << row.summary.of << " level=" << row.summary.level
                    << " loss=" << format_double(row.summary.loss)
                    << " seed=" << row.summary.seed << " failed: " << row.error << '\n';
        }
      }
      std::cout << rows.size() << " cells, " << failed << " failed, written to " << path << '\n';
    } else if (*topo) {
      ScenarioConfig cfg;
      cfg.topology = TopologySpec::parse(topo_spec);
      cfg.tx_range = topo_range;
      auto lvl = parse_placement(topo_level);
      if (!lvl) throw ConfigError("unknown level '" + topo_level + "'");
      cfg.level = *lvl;
      write_topology_file(build_topology(cfg), emit);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const PlacementError& e) {
    std::cerr << "placement error: " << e.what() << '\n';
    return kExitPlacement;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
