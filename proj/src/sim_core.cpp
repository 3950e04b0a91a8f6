#include "rplsec/sim_core.hpp"

#include <ostream>
#include <stdexcept>

namespace rplsec {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::TrickleFire: return "trickle-fire";
    case EventKind::TrickleIntervalEnd: return "trickle-interval-end";
    case EventKind::FrameArrival: return "frame-arrival";
    case EventKind::AppSend: return "app-send";
    case EventKind::ModeSwitch: return "mode-switch";
    case EventKind::AttackStart: return "attack-start";
    case EventKind::Sample: return "sample";
    case EventKind::Timer: return "timer";
  }
  return "unknown";
}

EventHandle Engine::schedule(SimTime fire_time, NodeId target, EventKind kind,
                             std::uint64_t payload) {
  if (fire_time < now_) {
    throw std::logic_error("Engine::schedule: event lies in the past");
  }
  Event e{fire_time, target, kind, payload, next_sequence_++};
  live_.insert(e.sequence);
  queue_.push(e);
  return EventHandle{e.sequence};
}

void Engine::cancel(EventHandle handle) {
  if (handle.valid()) live_.erase(handle.sequence);
}

std::size_t Engine::run_until(SimTime horizon, const Dispatch& dispatch) {
  if (horizon < now_) {
    throw std::invalid_argument("Engine::run_until: horizon precedes the clock");
  }
  std::size_t dispatched = 0;
  while (!queue_.empty() && queue_.top().fire_time <= horizon) {
    Event e = queue_.top();
    queue_.pop();
    if (live_.erase(e.sequence) == 0) continue;  // cancelled
    now_ = e.fire_time;
    record(e);
    ++dispatched;
    dispatch(e);
  }
  now_ = horizon;
  return dispatched;
}

void Engine::record(const Event& e) {
  auto mix = [this](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      hash_ ^= (v >> (8 * i)) & 0xffU;
      hash_ *= 0x100000001b3ULL;
    }
  };
  mix(e.fire_time);
  mix(e.target);
  mix(static_cast<std::uint64_t>(e.kind));
  mix(e.payload);
  if (trace_ != nullptr) {
    *trace_ << e.fire_time << ' ' << e.target << ' ' << to_string(e.kind) << '\n';
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t node,
                     StreamPurpose purpose)
    : key_(splitmix64(splitmix64(master_seed) ^
                      splitmix64((node << 32) ^ static_cast<std::uint64_t>(purpose)))) {}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return splitmix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
}

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_int(std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) throw std::invalid_argument("RngStream::uniform_int: empty range");
  const std::uint64_t span = hi - lo;
  // Rejection keeps the draw exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v = next_u64();
  while (v >= limit) v = next_u64();
  return lo + v % span;
}

bool RngStream::bernoulli(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("RngStream::bernoulli: p outside [0, 1]");
  }
  if (p == 0.0) return false;
  if (p == 1.0) return true;
  return uniform01() < p;
}

}  // namespace rplsec
