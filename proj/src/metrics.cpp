#include "rplsec/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace rplsec {

std::string format_fixed(double value, int precision) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  return std::string(buf, res.ptr);
}

void EnergyAccount::account(RadioActivity activity, SimTime duration) {
  (activity == RadioActivity::FrameTx ? tx_ : rx_) += duration;
}

double EnergyAccount::power_mw(SimTime tx, SimTime rx, SimTime elapsed,
                               const PowerConstants& p) {
  if (elapsed == 0) return p.idle_mw;
  const double on = static_cast<double>(tx + rx);
  const double idle = std::max(0.0, static_cast<double>(elapsed) - on);
  return (static_cast<double>(tx) * p.tx_mw + static_cast<double>(rx) * p.rx_mw +
          idle * p.idle_mw) /
         static_cast<double>(elapsed);
}

MetricsCollector::MetricsCollector(std::size_t node_count, PowerConstants power,
                                   SimTime sample_interval)
    : power_(power),
      sample_interval_(sample_interval),
      energy_(node_count),
      window_base_(node_count, {0, 0}),
      originated_(node_count, 0),
      delivered_(node_count, 0) {}

void MetricsCollector::energy_account(NodeId node, RadioActivity activity, SimTime duration) {
  energy_.at(node - 1).account(activity, duration);
}

void MetricsCollector::packet_originated(const DataPacket& pkt) {
  index_[key(pkt.origin, pkt.seq)] = packets_.size();
  packets_.push_back({pkt.origin, pkt.seq, pkt.created_at, {}, 0, false, false});
  ++originated_[pkt.origin - 1];
  ++originated_total_;
}

void MetricsCollector::packet_resolved(const DataPacket& pkt, FateKind fate, SimTime at) {
  auto it = index_.find(key(pkt.origin, pkt.seq));
  if (it == index_.end()) throw std::logic_error("fate for unknown packet");
  PacketRecord& rec = packets_[it->second];
  if (rec.resolved) throw std::logic_error("packet resolved twice");
  rec.resolved = true;
  rec.fate = {fate, at};
  rec.hops_traversed = pkt.hops_traversed;
  rec.r_flag_set = pkt.r_flag;
  if (fate == FateKind::Delivered) {
    ++delivered_[pkt.origin - 1];
    ++delivered_total_;
  }
}

void MetricsCollector::close(SimTime horizon) {
  for (auto& rec : packets_) {
    if (!rec.resolved) {
      rec.resolved = true;
      rec.fate = {FateKind::InFlightAtHorizon, horizon};
    }
  }
}

void MetricsCollector::sample(SimTime now, const std::vector<NodeCounters>& counters) {
  PdrSample s;
  s.window_end = now;
  s.originated = originated_total_;
  s.delivered = delivered_total_;
  s.cumulative_pdr = originated_total_ == 0
                         ? 1.0
                         : static_cast<double>(delivered_total_) / originated_total_;
  s.node_originated = originated_;
  s.node_delivered = delivered_;
  const SimTime window = now - last_sample_;
  double total = 0.0;
  s.node_power_mw.reserve(energy_.size());
  for (std::size_t i = 0; i < energy_.size(); ++i) {
    const SimTime tx = energy_[i].tx_time() - window_base_[i].first;
    const SimTime rx = energy_[i].rx_time() - window_base_[i].second;
    const double p = EnergyAccount::power_mw(tx, rx, window, power_);
    s.node_power_mw.push_back(p);
    total += p;
    window_base_[i] = {energy_[i].tx_time(), energy_[i].rx_time()};
  }
  s.mean_power_mw = energy_.empty() ? 0.0 : total / static_cast<double>(energy_.size());
  for (const auto& c : counters) s.trickle_resets += c.trickle_resets;
  last_sample_ = now;
  samples_.push_back(std::move(s));
}

double MetricsCollector::mean_power_mw(NodeId node, SimTime elapsed) const {
  const auto& e = energy_.at(node - 1);
  return EnergyAccount::power_mw(e.tx_time(), e.rx_time(), elapsed, power_);
}

void MetricsCollector::check_conservation() const {
  std::vector<std::uint64_t> accounted(originated_.size(), 0);
  for (const auto& rec : packets_) {
    if (rec.resolved) ++accounted[rec.origin - 1];
  }
  for (std::size_t i = 0; i < accounted.size(); ++i) {
    if (accounted[i] != originated_[i]) {
      throw std::logic_error("packet conservation violated for node " + std::to_string(i + 1));
    }
  }
}

namespace {

std::ofstream open_csv(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

void MetricsCollector::export_csv(
    const std::string& prefix, const RunLabels& labels,
    const std::vector<std::pair<std::string, std::string>>& scenario_echo,
    const std::vector<NodeCounters>& counters, SimTime horizon) const {
  check_conservation();

  {
    auto out = open_csv(prefix + "runs.csv");
    for (std::size_t i = 0; i < scenario_echo.size(); ++i) {
      out << (i ? "," : "") << scenario_echo[i].first;
    }
    out << '\n';
    for (std::size_t i = 0; i < scenario_echo.size(); ++i) {
      out << (i ? "," : "") << scenario_echo[i].second;
    }
    out << '\n';
  }

  {
    auto out = open_csv(prefix + "pdr_timeseries.csv");
    out << "time_s,of,level,originated,delivered,cumulative_pdr,window_pdr,mean_power_mW,"
           "trickle_resets\n";
    SimTime prev = 0;
    for (const auto& s : samples_) {
      std::uint64_t created = 0;
      std::uint64_t ok = 0;
      for (const auto& rec : packets_) {
        if (rec.created_at >= prev && rec.created_at < s.window_end) {
          ++created;
          if (rec.fate.kind == FateKind::Delivered) ++ok;
        }
      }
      const double window_pdr = created == 0 ? 1.0 : static_cast<double>(ok) / created;
      out << format_fixed(to_seconds(s.window_end), 3) << ',' << labels.of << ','
          << labels.level << ',' << s.originated << ',' << s.delivered << ','
          << format_fixed(s.cumulative_pdr) << ',' << format_fixed(window_pdr) << ','
          << format_fixed(s.mean_power_mw) << ',' << s.trickle_resets << '\n';
      prev = s.window_end;
    }
  }

  {
    auto out = open_csv(prefix + "power_per_node.csv");
    out << "node_id,of,level,mean_mW\n";
    for (std::size_t i = 0; i < energy_.size(); ++i) {
      out << (i + 1) << ',' << labels.of << ',' << labels.level << ','
          << format_fixed(mean_power_mw(static_cast<NodeId>(i + 1), horizon)) << '\n';
    }
  }

  {
    auto out = open_csv(prefix + "packet_fates.csv");
    out << "origin,seq,created_at,fate,delivered_at,hops_traversed,r_flag_set\n";
    for (const auto& rec : packets_) {
      out << rec.origin << ',' << rec.seq << ',' << format_fixed(to_seconds(rec.created_at))
          << ',' << to_string(rec.fate.kind) << ',';
      if (rec.fate.kind == FateKind::Delivered) out << format_fixed(to_seconds(rec.fate.at));
      out << ',' << rec.hops_traversed << ',' << (rec.r_flag_set ? 1 : 0) << '\n';
    }
  }

  {
    auto out = open_csv(prefix + "counters.csv");
    out << "node_id,dio_tx,dio_rx,dio_suppressed,data_tx_attempts,data_rx,trickle_resets,"
           "parent_switches,poison_events\n";
    for (std::size_t i = 0; i < counters.size(); ++i) {
      const auto& c = counters[i];
      out << (i + 1) << ',' << c.dio_tx << ',' << c.dio_rx << ',' << c.dio_suppressed << ','
          << c.data_tx_attempts << ',' << c.data_rx << ',' << c.trickle_resets << ','
          << c.parent_switches << ',' << c.poison_events << '\n';
    }
  }
}

}  // namespace rplsec
