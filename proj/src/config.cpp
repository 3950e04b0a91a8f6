#include "rplsec/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace rplsec {

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

struct Field {
  const char* section;
  const char* key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const std::string& key, const std::string&)> set;
};

#define RPLSEC_DOUBLE(sec, name, member)                                              \
  Field{sec, name, [](const ScenarioConfig& c) { return format_double(c.member); },   \
        [](ScenarioConfig& c, const std::string& k, const std::string& v) {           \
          c.member = to_double(k, v);                                                 \
        }}
#define RPLSEC_UINT(sec, name, member, type)                                          \
  Field{sec, name, [](const ScenarioConfig& c) { return std::to_string(c.member); },  \
        [](ScenarioConfig& c, const std::string& k, const std::string& v) {           \
          c.member = static_cast<type>(to_uint(k, v));                                \
        }}
#define RPLSEC_BOOL(sec, name, member)                                                \
  Field{sec, name,                                                                    \
        [](const ScenarioConfig& c) { return std::string(c.member ? "true" : "false"); }, \
        [](ScenarioConfig& c, const std::string& k, const std::string& v) {           \
          c.member = to_bool(k, v);                                                   \
        }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      Field{"scenario", "topology", [](const ScenarioConfig& c) { return c.topology.to_string(); },
            [](ScenarioConfig& c, const std::string&, const std::string& v) {
              c.topology = TopologySpec::parse(v);
            }},
      RPLSEC_UINT("scenario", "root", root, NodeId),
      Field{"scenario", "of", [](const ScenarioConfig& c) { return std::string(to_string(c.of)); },
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
              auto of = parse_of_kind(v);
              if (!of) throw ConfigError("key '" + k + "': unknown objective function '" + v + "'");
              c.of = *of;
            }},
      RPLSEC_DOUBLE("scenario", "alpha", alpha),
      RPLSEC_DOUBLE("scenario", "rank_unit", rank_unit),
      Field{"scenario", "hop_clause",
            [](const ScenarioConfig& c) { return std::string(to_string(c.hop_clause)); },
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
              auto hc = parse_hop_clause(v);
              if (!hc) throw ConfigError("key '" + k + "': expected leq or eq, got '" + v + "'");
              c.hop_clause = *hc;
            }},
      RPLSEC_BOOL("scenario", "secof_rank_floor", secof_rank_floor),
      RPLSEC_DOUBLE("scenario", "normal_duration_s", normal_duration_s),
      RPLSEC_DOUBLE("scenario", "loss_rate", loss_rate),
      RPLSEC_DOUBLE("scenario", "tx_range", tx_range),
      RPLSEC_DOUBLE("scenario", "horizon_s", horizon_s),
      RPLSEC_DOUBLE("scenario", "app_period_s", app_period_s),
      RPLSEC_DOUBLE("scenario", "sample_interval_s", sample_interval_s),
      RPLSEC_DOUBLE("scenario", "initial_etx", initial_etx),
      RPLSEC_DOUBLE("scenario", "ewma_beta", ewma_beta),
      RPLSEC_DOUBLE("scenario", "ewma_scale", ewma_scale),
      RPLSEC_UINT("scenario", "seed", seed, std::uint64_t),
      Field{"scenario", "output", [](const ScenarioConfig& c) { return c.output; },
            [](ScenarioConfig& c, const std::string&, const std::string& v) { c.output = v; }},
      RPLSEC_DOUBLE("trickle", "imin_ms", trickle_imin_ms),
      RPLSEC_UINT("trickle", "doublings", trickle_doublings, unsigned),
      RPLSEC_UINT("trickle", "k", trickle_k, unsigned),
      RPLSEC_DOUBLE("radio", "bitrate_bps", bitrate_bps),
      RPLSEC_UINT("radio", "dio_bytes", dio_bytes, std::uint32_t),
      RPLSEC_UINT("radio", "data_bytes", data_bytes, std::uint32_t),
      RPLSEC_UINT("radio", "ack_bytes", ack_bytes, std::uint32_t),
      RPLSEC_UINT("radio", "max_attempts", max_attempts, int),
      RPLSEC_DOUBLE("radio", "processing_us", processing_us),
      RPLSEC_DOUBLE("radio", "broadcast_on_ms", broadcast_on_ms),
      RPLSEC_DOUBLE("power", "tx_mw", tx_mw),
      RPLSEC_DOUBLE("power", "rx_mw", rx_mw),
      RPLSEC_DOUBLE("power", "idle_mw", idle_mw),
      RPLSEC_BOOL("attack", "enabled", attack_enabled),
      RPLSEC_UINT("attack", "attacker", attacker, NodeId),
      Field{"attack", "level", [](const ScenarioConfig& c) { return std::string(to_string(c.level)); },
            [](ScenarioConfig& c, const std::string& k, const std::string& v) {
              auto lvl = parse_placement(v);
              if (!lvl) throw ConfigError("key '" + k + "': expected 1, 2, 3 or explicit, got '" + v + "'");
              c.level = *lvl;
            }},
      RPLSEC_DOUBLE("attack", "start_s", attack_start_s),
      RPLSEC_DOUBLE("attack", "rank", attack_rank),
  };
  return table;
}

#undef RPLSEC_DOUBLE
#undef RPLSEC_UINT
#undef RPLSEC_BOOL

}  // namespace

TopologySpec TopologySpec::parse(const std::string& text) {
  TopologySpec spec;
  if (text == "grid51") {
    spec.kind = Kind::Grid51;
    return spec;
  }
  if (text == "small11") {
    spec.kind = Kind::Small11;
    spec.nodes = 11;
    return spec;
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5) {
    spec.kind = Kind::File;
    spec.path = text.substr(5);
    return spec;
  }
  if (text.rfind("random:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(text.substr(7));
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) {
      throw ConfigError("random topology must be random:<n>:<area>:<seed>, got '" + text + "'");
    }
    spec.kind = Kind::Random;
    spec.nodes = static_cast<std::uint32_t>(to_uint("topology", parts[0]));
    spec.area = to_double("topology", parts[1]);
    spec.seed = to_uint("topology", parts[2]);
    return spec;
  }
  throw ConfigError("unknown topology spec '" + text + "'");
}

std::string TopologySpec::to_string() const {
  switch (kind) {
    case Kind::Grid51: return "grid51";
    case Kind::Small11: return "small11";
    case Kind::Random:
      return "random:" + std::to_string(nodes) + ":" + format_double(area) + ":" +
             std::to_string(seed);
    case Kind::File: return "file:" + path;
  }
  return "?";
}

ProtocolConfig ScenarioConfig::protocol() const {
  ProtocolConfig p;
  p.of = of;
  p.of_params.alpha = alpha;
  p.of_params.rank_unit = rank_unit;
  p.of_params.hop_clause = hop_clause;
  p.of_params.rank_floor = secof_rank_floor;
  p.ewma = {ewma_beta, ewma_scale};
  p.initial_etx = initial_etx;
  p.trickle.imin = from_seconds(trickle_imin_ms / 1000.0);
  p.trickle.doublings = trickle_doublings;
  p.trickle.redundancy_k = trickle_k;
  return p;
}

RadioConstants ScenarioConfig::radio() const {
  RadioConstants r;
  r.bitrate_bps = bitrate_bps;
  r.dio_bytes = dio_bytes;
  r.data_bytes = data_bytes;
  r.ack_bytes = ack_bytes;
  r.max_attempts = max_attempts;
  r.processing_delay = from_seconds(processing_us / 1e6);
  r.broadcast_on = from_seconds(broadcast_on_ms / 1000.0);
  return r;
}

LinkModel ScenarioConfig::link() const { return {tx_range, loss_rate}; }

PowerConstants ScenarioConfig::power() const { return {tx_mw, rx_mw, idle_mw}; }

void ScenarioConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  require(loss_rate >= 0.0 && loss_rate <= 1.0, "loss_rate must lie in [0, 1]");
  require(tx_range > 0.0, "tx_range must be positive");
  require(alpha >= 0.0, "alpha must be >= 0");
  require(rank_unit > 0.0, "rank_unit must be positive");
  require(horizon_s > 0.0, "horizon_s must be positive");
  require(app_period_s > 0.0, "app_period_s must be positive");
  require(sample_interval_s > 0.0, "sample_interval_s must be positive");
  require(normal_duration_s >= 0.0, "normal_duration_s must be >= 0");
  require(initial_etx >= 1.0 && initial_etx <= 5.0, "initial_etx must lie in [1, 5]");
  require(ewma_beta >= 0.0 && ewma_beta < ewma_scale, "ewma requires 0 <= beta < scale");
  require(trickle_imin_ms > 0.0, "trickle imin_ms must be positive");
  require(trickle_doublings <= 24, "trickle doublings must be <= 24");
  require(trickle_k >= 1, "trickle k must be >= 1");
  require(max_attempts >= 1, "radio max_attempts must be >= 1");
  require(bitrate_bps > 0.0, "radio bitrate must be positive");
  require(broadcast_on_ms >= 0.0 && processing_us >= 0.0, "radio timings must be >= 0");
  require(root >= 1, "root must be a node id (>= 1)");
  if (attack_enabled) {
    require(attack_start_s >= 0.0 && attack_start_s < horizon_s,
            "attack start must lie within the horizon");
    require(attacker != root, "attacker cannot be the root");
  }
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::string section;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      const auto& table = fields();
      const bool known = std::any_of(table.begin(), table.end(),
                                     [&](const Field& f) { return section == f.section; });
      if (!known) {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      }
      if (section == "attack") cfg.attack_enabled = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key outside any section");
    }
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) {
      return section == f.section && key == f.key;
    });
    if (it == table.end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key +
                        "' in [" + section + "]");
    }
    it->set(cfg, key, value);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& config) {
  std::string out;
  std::string section;
  for (const auto& f : fields()) {
    if (section != f.section) {
      section = f.section;
      out += (out.empty() ? "[" : "\n[") + section + "]\n";
    }
    out += std::string(f.key) + " = " + f.get(config) + "\n";
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) {
    out.emplace_back(std::string(f.section) + "." + f.key, f.get(config));
  }
  return out;
}

}  // namespace rplsec
