#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <queue>
#include <unordered_set>
#include <vector>

namespace rplsec {

/// Microseconds since simulation start.
using SimTime = std::uint64_t;
using NodeId = std::uint32_t;

inline constexpr SimTime kMicrosPerSecond = 1'000'000;
inline constexpr NodeId kMediumTarget = 0;

constexpr SimTime from_seconds(double s) {
  return static_cast<SimTime>(s * static_cast<double>(kMicrosPerSecond) + 0.5);
}
constexpr double to_seconds(SimTime t) {
  return static_cast<double>(t) / static_cast<double>(kMicrosPerSecond);
}

enum class EventKind : std::uint8_t {
  TrickleFire,
  TrickleIntervalEnd,
  FrameArrival,
  AppSend,
  ModeSwitch,
  AttackStart,
  Sample,
  Timer,  // generic, used by tests and tools
};

const char* to_string(EventKind kind);

struct Event {
  SimTime fire_time = 0;
  NodeId target = kMediumTarget;
  EventKind kind = EventKind::Timer;
  std::uint64_t payload = 0;   // opaque token interpreted by the dispatcher
  std::uint64_t sequence = 0;  // global insertion order, breaks time ties
};

struct EventHandle {
  std::uint64_t sequence = 0;
  bool valid() const { return sequence != 0; }
};

/// Single-threaded event queue with a virtual clock. Events at equal times
/// dispatch in insertion order.
class Engine {
 public:
  using Dispatch = std::function<void(const Event&)>;

  /// Throws std::logic_error when `fire_time` lies before the current clock.
  EventHandle schedule(SimTime fire_time, NodeId target, EventKind kind,
                       std::uint64_t payload = 0);
  /// Cancelling an already dispatched or unknown handle is a no-op.
  void cancel(EventHandle handle);

  /// Dispatches every pending event with fire_time <= horizon, then sets the
  /// clock to `horizon`. Throws std::invalid_argument if horizon < now().
  std::size_t run_until(SimTime horizon, const Dispatch& dispatch);

  SimTime now() const { return now_; }
  std::size_t pending() const { return live_.size(); }

  /// Optional newline-delimited trace: "<time_us> <target> <kind>".
  void set_trace_sink(std::ostream* sink) { trace_ = sink; }
  /// FNV-1a over all dispatched (time, target, kind, payload) records.
  std::uint64_t trace_hash() const { return hash_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.fire_time != b.fire_time) return a.fire_time > b.fire_time;
      return a.sequence > b.sequence;
    }
  };

  void record(const Event& e);

  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::unordered_set<std::uint64_t> live_;
  SimTime now_ = 0;
  std::uint64_t next_sequence_ = 1;
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
  std::ostream* trace_ = nullptr;
};

enum class StreamPurpose : std::uint32_t {
  Trickle = 1,
  Application = 2,
  Radio = 3,
  Topology = 4,
  Test = 99,
};

/// Counter-based SplitMix64 stream keyed by (master seed, node, purpose).
/// Draws are bit-identical on every platform.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t node, StreamPurpose purpose);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of precision.
  double uniform01();
  /// Uniform integer on [lo, hi). Requires lo < hi.
  std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi);
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Throws std::domain_error unless p is in [0, 1].
  bool bernoulli(double p);

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rplsec
