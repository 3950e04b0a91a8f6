#include "rplsec/rpl.hpp"

#include <algorithm>
#include <stdexcept>

namespace rplsec {

Rank compute_rank(Rank parent_rank, double etx, double rank_unit) {
  if (parent_rank.is_infinite()) return Rank::infinite();
  return Rank(parent_rank.value() + etx * rank_unit);
}

double update_etx(double current, int packet_etx, const EwmaParams& params) {
  if (packet_etx < 1 || packet_etx > kMaxPacketEtx) {
    throw std::out_of_range("packetETX must lie in [1, 5]");
  }
  if (!(params.beta >= 0.0 && params.beta < params.scale)) {
    throw std::invalid_argument("EWMA requires 0 <= beta < scale");
  }
  return (current * params.beta + packet_etx * (params.scale - params.beta)) / params.scale;
}

void TrickleTimer::begin(SimTime now, RngStream& rng) {
  start_ = now;
  counter_ = 0;
  offset_ = rng.uniform_int(interval_ / 2, interval_);
  running_ = true;
}

void TrickleTimer::reset(SimTime now, RngStream& rng) {
  interval_ = params_.imin;
  begin(now, rng);
}

void TrickleTimer::next_interval(SimTime now, RngStream& rng) {
  interval_ = std::min(interval_ * 2, params_.imax());
  begin(now, rng);
}

RplNode::RplNode(NodeId id, bool is_root, const ProtocolConfig& config)
    : id_(id), is_root_(is_root), config_(&config), trickle_(config.trickle) {
  if (is_root_) {
    rank_ = config.of_params.root_rank;
    hop_ = 0;
  }
}

const NeighborRecord* RplNode::neighbor(NodeId id) const {
  auto it = table_.find(id);
  return it == table_.end() ? nullptr : &it->second;
}

DioMessage RplNode::make_dio() const {
  DioMessage dio;
  dio.sender = id_;
  dio.advertised_rank = advertised_rank();
  dio.hop = hop_.value_or(0);
  dio.metric = config_->of == OfKind::Of0 ? MetricKind::HopCount : MetricKind::Etx;
  dio.trickle = config_->trickle;
  return dio;
}

std::vector<Candidate> RplNode::candidates() const {
  std::vector<Candidate> out;
  out.reserve(table_.size());
  for (const auto& [nid, rec] : table_) {
    if (rec.advertised.is_finite()) out.push_back({nid, rec.advertised, rec.etx, rec.hop});
  }
  return out;
}

Reaction RplNode::handle_dio(const DioMessage& dio, SimTime now, SecOfMode mode) {
  if (dio.sender == id_) return {};
  ++counters_.dio_rx;

  auto [it, inserted] = table_.try_emplace(dio.sender);
  NeighborRecord& rec = it->second;
  if (inserted) {
    rec.id = dio.sender;
    rec.etx = config_->initial_etx;
  } else if (rec.advertised == dio.advertised_rank) {
    trickle_.hear_consistent();
  }
  rec.advertised = dio.advertised_rank;
  rec.last_heard = now;
  if (!frozen_ && dio.advertised_rank.is_finite()) rec.hop = dio.hop;

  if (is_root_) return {};
  return reselect(now, mode);
}

Reaction RplNode::handle_unicast_result(NodeId neighbor, int attempts, SimTime now,
                                        SecOfMode mode) {
  auto it = table_.find(neighbor);
  if (it == table_.end() || is_root_) return {};
  it->second.etx = update_etx(it->second.etx, std::clamp(attempts, 1, kMaxPacketEtx),
                              config_->ewma);
  it->second.measured = true;
  return reselect(now, mode);
}

Reaction RplNode::reselect(SimTime now, SecOfMode mode) {
  const SimTime expiry = config_->expiry();
  std::erase_if(table_, [&](const auto& kv) { return kv.second.last_heard + expiry < now; });

  const std::vector<Candidate> cands = candidates();
  OfParams params = config_->of_params;
  if (frozen_) params.own_hop = hop_;
  const SecOfMode effective = frozen_ ? mode : SecOfMode::Normal;
  const std::optional<NodeId> chosen =
      select_parent(config_->of, cands, parent_, params, effective);

  Reaction r;
  r.old_parent = parent_;
  const Rank old_rank = rank_;

  if (!chosen) {
    if (parent_ || rank_.is_finite()) {
      parent_.reset();
      rank_ = Rank::infinite();
      r.poisoned = true;
      r.rank_changed = true;
      ++counters_.poison_events;
    }
    return r;
  }

  const auto cand = std::find_if(cands.begin(), cands.end(),
                                 [&](const Candidate& c) { return c.id == *chosen; });
  rank_ = rank_through(config_->of, *cand, params);
  if (!frozen_ || !hop_) {
    hop_ = cand->hop ? compute_hops(*cand->hop) : hop_;
  }
  r.joined = old_rank.is_infinite();
  r.parent_changed = parent_ != chosen;
  if (r.parent_changed && parent_) ++counters_.parent_switches;
  parent_ = chosen;
  r.rank_changed = rank_ != old_rank;
  return r;
}

}  // namespace rplsec
