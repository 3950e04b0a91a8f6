#include "rplsec/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

namespace rplsec {

std::string output_prefix(const ScenarioConfig& config) {
  return config.output + "_" + std::string(to_string(config.of)) + "_L" +
         std::string(to_string(config.level)) + "_loss" + format_double(config.loss_rate) +
         "_s" + std::to_string(config.seed) + "_";
}

RunSummary summarize(const Network& net, const ScenarioConfig& config) {
  RunSummary s;
  s.of = std::string(to_string(config.of));
  s.level = std::string(to_string(config.level));
  s.loss = config.loss_rate;
  s.seed = config.seed;

  const SimTime start = from_seconds(config.attack_start_s);
  std::uint64_t post_created = 0;
  std::uint64_t post_ok = 0;
  for (const auto& rec : net.metrics().packets()) {
    ++s.originated;
    const bool ok = rec.fate.kind == FateKind::Delivered;
    if (ok) ++s.delivered;
    if (rec.created_at >= start) {
      ++post_created;
      if (ok) ++post_ok;
    }
  }
  s.pdr = s.originated == 0 ? 1.0 : static_cast<double>(s.delivered) / s.originated;
  s.pdr_post_attack = post_created == 0 ? 1.0 : static_cast<double>(post_ok) / post_created;

  const SimTime horizon = config.horizon();
  double total = 0.0;
  for (NodeId id = 1; id <= net.size(); ++id) total += net.metrics().mean_power_mw(id, horizon);
  s.mean_power_mw = total / static_cast<double>(net.size());

  double weighted = 0.0;
  SimTime covered = 0;
  SimTime prev = 0;
  for (const auto& sample : net.metrics().samples()) {
    if (sample.window_end > start) {
      const SimTime w = sample.window_end - std::max(prev, start);
      weighted += sample.mean_power_mw * static_cast<double>(w);
      covered += w;
    }
    prev = sample.window_end;
  }
  s.mean_power_post_attack_mw = covered == 0 ? 0.0 : weighted / static_cast<double>(covered);

  s.trickle_resets = net.total_trickle_resets();
  s.attack_children = net.trapped().size();
  if (net.topology().attacker) {
    s.attacker_neighbors = net.medium().neighbors(*net.topology().attacker).size();
  }
  s.cycles = net.cycles().formed;
  s.cycles_restricted = net.cycles().formed_restricted;
  s.trace_hash = net.trace_hash();
  return s;
}

RunSummary run_scenario(const ScenarioConfig& config, bool write_csv) {
  Network net(config, build_topology(config));
  net.run();
  RunSummary s = summarize(net, config);
  if (write_csv) {
    RunLabels labels{s.of, s.level, format_double(config.loss_rate), config.seed};
    net.metrics().export_csv(output_prefix(config), labels, config_fields(config),
                             net.counters(), config.horizon());
  }
  return s;
}

std::string format_summary(const RunSummary& s) {
  std::ostringstream out;
  out << "of=" << s.of << " level=" << s.level << " loss=" << format_double(s.loss)
      << " seed=" << s.seed << " pdr=" << format_fixed(s.pdr, 4)
      << " pdr_post_attack=" << format_fixed(s.pdr_post_attack, 4)
      << " mean_power_mW=" << format_fixed(s.mean_power_mw, 4)
      << " resets=" << s.trickle_resets << " attack_children=" << s.attack_children
      << " cycles=" << s.cycles;
  return out.str();
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& base, const SweepGrid& grid,
                                unsigned threads, bool write_csv) {
  std::vector<ScenarioConfig> cells;
  for (OfKind of : grid.ofs) {
    for (PlacementLevel level : grid.levels) {
      for (double loss : grid.losses) {
        for (std::uint64_t seed : grid.seeds) {
          ScenarioConfig cfg = base;
          cfg.of = of;
          cfg.level = level;
          cfg.loss_rate = loss;
          cfg.seed = seed;
          cells.push_back(cfg);
        }
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      const ScenarioConfig& cfg = cells[i];
      SweepRow& row = rows[i];
      row.summary.of = std::string(to_string(cfg.of));
      row.summary.level = std::string(to_string(cfg.level));
      row.summary.loss = cfg.loss_rate;
      row.summary.seed = cfg.seed;
      try {
        row.summary = run_scenario(cfg, write_csv);
        row.ok = true;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cells.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "of,level,loss,seed,status,originated,delivered,pdr,pdr_post_attack,mean_power_mW,"
         "mean_power_post_attack_mW,trickle_resets,attack_children,attacker_neighbors,cycles,"
         "cycles_restricted,trace_hash,error\n";
  for (const auto& row : rows) {
    const RunSummary& s = row.summary;
    std::string err = row.error;
    for (char& c : err) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << s.of << ',' << s.level << ',' << format_double(s.loss) << ',' << s.seed << ','
        << (row.ok ? "ok" : "failed") << ',' << s.originated << ',' << s.delivered << ','
        << format_fixed(s.pdr) << ',' << format_fixed(s.pdr_post_attack) << ','
        << format_fixed(s.mean_power_mw) << ',' << format_fixed(s.mean_power_post_attack_mw)
        << ',' << s.trickle_resets << ',' << s.attack_children << ',' << s.attacker_neighbors
        << ',' << s.cycles << ',' << s.cycles_restricted << ',' << s.trace_hash << ',' << err
        << '\n';
  }
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  auto number = [&](const std::string& t) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size()) throw ConfigError("bad seed '" + t + "'");
    return v;
  };
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const std::uint64_t a = number(text.substr(0, dots));
    const std::uint64_t b = number(text.substr(dots + 2));
    if (b < a) throw ConfigError("empty seed range '" + text + "'");
    for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) out.push_back(number(part));
  if (out.empty()) throw ConfigError("empty seed list");
  return out;
}

}  // namespace rplsec
