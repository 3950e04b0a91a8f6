#include "rplsec/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace rplsec {

Network::Network(const ScenarioConfig& config, Topology topology)
    : config_(config),
      protocol_(config.protocol()),
      radio_(config.radio()),
      topology_(std::move(topology)),
      medium_(topology_.positions, config.link()),
      metrics_(topology_.positions.size(), config.power(), from_seconds(config.sample_interval_s)) {
  config_.validate();
  const auto n = static_cast<NodeId>(medium_.size());
  if (topology_.root < 1 || topology_.root > n) throw ConfigError("root outside topology");

  attack_.enabled = config_.attack_enabled && topology_.attacker.has_value();
  if (config_.attack_enabled && !topology_.attacker) {
    throw ConfigError("attack enabled but the topology has no attacker");
  }
  if (topology_.attacker) {
    attack_.attacker = *topology_.attacker;
    attack_.start_time = from_seconds(config_.attack_start_s);
    attack_.advertised_rank = Rank(config_.attack_rank);
    attack_.placement = config_.level;
    if (attack_.enabled) {
      const PlacementCheck check =
          verify_placement(medium_, topology_.root, attack_.attacker, attack_.placement);
      if (!check.ok) throw PlacementError(check.diagnostic);
    }
  }

  nodes_.reserve(n);
  for (NodeId id = 1; id <= n; ++id) {
    nodes_.emplace_back(id, id == topology_.root, protocol_);
    trickle_rng_.emplace_back(config_.seed, id, StreamPurpose::Trickle);
    app_rng_.emplace_back(config_.seed, id, StreamPurpose::Application);
    radio_rng_.emplace_back(config_.seed, id, StreamPurpose::Radio);
  }
  trickle_handles_.resize(n);
  next_seq_.assign(n, 0);
}

bool Network::is_source(NodeId id) const {
  return id != topology_.root && !(topology_.attacker && *topology_.attacker == id);
}

std::vector<NodeCounters> Network::counters() const {
  std::vector<NodeCounters> out;
  out.reserve(nodes_.size());
  for (const auto& node : nodes_) out.push_back(node.counters());
  return out;
}

std::uint64_t Network::total_trickle_resets() const {
  std::uint64_t total = 0;
  for (const auto& node : nodes_) total += node.counters().trickle_resets;
  return total;
}

SecOfMode Network::mode() const {
  if (config_.of != OfKind::SecOf) return SecOfMode::Normal;
  return secof_mode(engine_.now(), from_seconds(config_.normal_duration_s));
}

void Network::run() {
  if (ran_) throw std::logic_error("Network::run called twice");
  ran_ = true;
  const SimTime horizon = config_.horizon();

  start_trickle(topology_.root, false);
  for (NodeId id = 1; id <= nodes_.size(); ++id) {
    if (is_source(id)) schedule_app(id, 0);
  }
  if (config_.of == OfKind::SecOf) {
    engine_.schedule(from_seconds(config_.normal_duration_s), kMediumTarget, EventKind::ModeSwitch);
  }
  if (attack_.enabled) {
    engine_.schedule(attack_.start_time, attack_.attacker, EventKind::AttackStart);
  }
  const SimTime step = metrics_.sample_interval();
  for (SimTime t = step; t < horizon; t += step) {
    engine_.schedule(t, kMediumTarget, EventKind::Sample);
  }

  engine_.run_until(horizon, [this](const Event& e) { dispatch(e); });
  metrics_.sample(horizon, counters());
  metrics_.close(horizon);
}

void Network::dispatch(const Event& e) {
  switch (e.kind) {
    case EventKind::TrickleFire: on_trickle_fire(e.target); break;
    case EventKind::TrickleIntervalEnd: on_interval_end(e.target); break;
    case EventKind::FrameArrival: on_frame(e.target, e.payload); break;
    case EventKind::AppSend: on_app_send(e.target, static_cast<std::uint32_t>(e.payload)); break;
    case EventKind::ModeSwitch:
      for (auto& node : nodes_) node.freeze_hops();
      break;
    case EventKind::AttackStart:
      launch_attack(nodes_[e.target - 1], attack_);
      attack_launched_ = true;
      emit_dio(e.target);
      break;
    case EventKind::Sample: metrics_.sample(engine_.now(), counters()); break;
    case EventKind::Timer: break;
  }
}

void Network::start_trickle(NodeId id, bool counted) {
  RplNode& node = nodes_[id - 1];
  node.trickle().reset(engine_.now(), trickle_rng_[id - 1]);
  if (counted) ++node.counters().trickle_resets;
  schedule_interval(id, true);
}

void Network::schedule_interval(NodeId id, bool after_reset) {
  const TrickleTimer& t = nodes_[id - 1].trickle();
  TrickleHandles& h = trickle_handles_[id - 1];
  engine_.cancel(h.fire);
  engine_.cancel(h.end);
  h.fire = engine_.schedule(t.fire_at(), id, EventKind::TrickleFire);
  h.end = engine_.schedule(t.interval_end(), id, EventKind::TrickleIntervalEnd);
  if (interval_cb_) interval_cb_({id, t.interval_start(), t.interval(), after_reset});
}

void Network::on_trickle_fire(NodeId id) {
  RplNode& node = nodes_[id - 1];
  const bool emit = node.trickle().should_emit();
  if (fire_cb_) fire_cb_({id, engine_.now(), node.trickle().counter(), emit});
  if (emit) {
    emit_dio(id);
  } else {
    ++node.counters().dio_suppressed;
  }
}

void Network::on_interval_end(NodeId id) {
  nodes_[id - 1].trickle().next_interval(engine_.now(), trickle_rng_[id - 1]);
  schedule_interval(id, false);
}

void Network::emit_dio(NodeId id) {
  RplNode& node = nodes_[id - 1];
  ++node.counters().dio_tx;
  const SimTime air = airtime(radio_.dio_bytes, radio_.bitrate_bps);
  metrics_.energy_account(id, RadioActivity::FrameTx, std::max(air, radio_.broadcast_on));

  Frame frame;
  frame.kind = FrameKind::DioMulticast;
  frame.src = id;
  frame.size = radio_.dio_bytes;
  frame.payload = node.make_dio();
  const SimTime arrival = engine_.now() + air + radio_.processing_delay;
  for (NodeId rx : medium_.transmit_multicast(id, radio_rng_[id - 1])) {
    metrics_.energy_account(rx, RadioActivity::FrameRx, air);
    const std::uint64_t token = next_token_++;
    frame.dst = rx;
    frames_.emplace(token, frame);
    engine_.schedule(arrival, rx, EventKind::FrameArrival, token);
  }
}

void Network::on_frame(NodeId id, std::uint64_t token) {
  auto it = frames_.find(token);
  if (it == frames_.end()) throw std::logic_error("frame token not found");
  Frame frame = std::move(it->second);
  frames_.erase(it);
  if (const auto* dio = std::get_if<DioMessage>(&frame.payload)) {
    apply(id, nodes_[id - 1].handle_dio(*dio, engine_.now(), mode()));
  } else if (auto* pkt = std::get_if<DataPacket>(&frame.payload)) {
    ++nodes_[id - 1].counters().data_rx;
    ++pkt->hops_traversed;
    handle_packet(id, *pkt, true);
  }
}

void Network::schedule_app(NodeId id, std::uint32_t window) {
  const SimTime period = from_seconds(config_.app_period_s);
  const SimTime base = static_cast<SimTime>(window) * period;
  if (base >= config_.horizon()) return;
  const SimTime at = base + app_rng_[id - 1].uniform_int(0, period);
  if (at >= config_.horizon()) return;
  engine_.schedule(at, id, EventKind::AppSend, window);
}

void Network::on_app_send(NodeId id, std::uint32_t window) {
  DataPacket pkt;
  pkt.origin = id;
  pkt.seq = next_seq_[id - 1]++;
  pkt.created_at = engine_.now();
  metrics_.packet_originated(pkt);
  handle_packet(id, pkt, false);
  schedule_app(id, window + 1);
}

void Network::handle_packet(NodeId at, DataPacket pkt, bool received) {
  RplNode& node = nodes_[at - 1];
  const ForwardDecision d =
      forward(node.is_root(), node.preferred_parent(), node.advertised_rank(), pkt, received);
  using Action = ForwardDecision::Action;
  switch (d.action) {
    case Action::Deliver:
      metrics_.packet_resolved(pkt, FateKind::Delivered, engine_.now());
      return;
    case Action::DropNoRoute:
      metrics_.packet_resolved(pkt, FateKind::DroppedNoRoute, engine_.now());
      return;
    case Action::DropTtl:
      metrics_.packet_resolved(pkt, FateKind::DroppedTtl, engine_.now());
      return;
    case Action::DropInconsistency:
      metrics_.packet_resolved(pkt, FateKind::DroppedInconsistency, engine_.now());
      if (d.reset_trickle) start_trickle(at, true);
      return;
    case Action::Unicast: break;
  }

  const NodeId next = d.next_hop;
  const UnicastOutcome out =
      medium_.transmit_unicast(at, next, radio_.max_attempts, radio_rng_[at - 1]);
  node.counters().data_tx_attempts += static_cast<std::uint64_t>(out.attempts);
  const SimTime data_air = airtime(radio_.data_bytes, radio_.bitrate_bps);
  const SimTime ack_air = airtime(radio_.ack_bytes, radio_.bitrate_bps);
  metrics_.energy_account(at, RadioActivity::FrameTx,
                          static_cast<SimTime>(out.attempts) * data_air);
  if (out.delivered()) {
    metrics_.energy_account(at, RadioActivity::FrameRx, ack_air);
    metrics_.energy_account(next, RadioActivity::FrameRx, data_air);
    metrics_.energy_account(next, RadioActivity::FrameTx, ack_air);
    const SimTime per_attempt = data_air + radio_.turnaround + ack_air;
    const SimTime arrival = engine_.now() + static_cast<SimTime>(out.attempts) * per_attempt +
                            radio_.processing_delay;
    const std::uint64_t token = next_token_++;
    Frame frame;
    frame.kind = FrameKind::DataUnicast;
    frame.src = at;
    frame.dst = next;
    frame.size = radio_.data_bytes;
    frame.payload = pkt;
    frames_.emplace(token, std::move(frame));
    engine_.schedule(arrival, next, EventKind::FrameArrival, token);
  } else {
    metrics_.packet_resolved(pkt, FateKind::DroppedLinkFailure, engine_.now());
  }
  apply(at, node.handle_unicast_result(next, out.attempts, engine_.now(), mode()));
}

bool Network::closes_cycle(NodeId id) const {
  NodeId cur = id;
  for (std::size_t steps = 0; steps <= nodes_.size(); ++steps) {
    const auto parent = nodes_[cur - 1].preferred_parent();
    if (!parent) return false;
    if (*parent == id) return true;
    cur = *parent;
  }
  return false;
}

void Network::apply(NodeId id, const Reaction& r) {
  RplNode& node = nodes_[id - 1];
  if (r.parent_changed && node.preferred_parent()) {
    const NodeId parent = *node.preferred_parent();
    if (attack_launched_ && parent == attack_.attacker && id != attack_.attacker) {
      trapped_.insert(id);
    }
    if (closes_cycle(id)) {
      ++cycles_.formed;
      if (attack_launched_) ++cycles_.formed_post_attack;
      if (config_.of == OfKind::SecOf && node.hops_frozen()) ++cycles_.formed_restricted;
    }
  }
  if (r.needs_trickle_reset()) start_trickle(id, true);
}

}  // namespace rplsec
