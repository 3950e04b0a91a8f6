#include "rplsec/radio.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

namespace rplsec {

double distance(const Position& a, const Position& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

SimTime airtime(std::uint32_t bytes, double bitrate_bps) {
  return static_cast<SimTime>(std::llround(bytes * 8.0 / bitrate_bps * 1e6));
}

UnitDiskMedium::UnitDiskMedium(std::vector<Position> positions, LinkModel link)
    : positions_(std::move(positions)), link_(link) {
  if (!(link_.tx_range > 0.0)) {
    throw std::invalid_argument("tx_range must be positive");
  }
  if (!(link_.loss_rate >= 0.0 && link_.loss_rate <= 1.0)) {
    throw std::invalid_argument("loss_rate must lie in [0, 1]");
  }
  const std::size_t n = positions_.size();
  adjacency_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && distance(positions_[i], positions_[j]) <= link_.tx_range) {
        adjacency_[i].push_back(static_cast<NodeId>(j + 1));
      }
    }
  }
}

std::size_t UnitDiskMedium::index(NodeId id) const {
  if (id == 0 || id > positions_.size()) {
    throw std::out_of_range("unknown node id " + std::to_string(id));
  }
  return id - 1;
}

const Position& UnitDiskMedium::position(NodeId id) const {
  return positions_[index(id)];
}

const std::vector<NodeId>& UnitDiskMedium::neighbors(NodeId id) const {
  return adjacency_[index(id)];
}

bool UnitDiskMedium::in_range(NodeId a, NodeId b) const {
  return a != b && distance(positions_[index(a)], positions_[index(b)]) <= link_.tx_range;
}

std::vector<NodeId> UnitDiskMedium::transmit_multicast(NodeId src, RngStream& rng) const {
  std::vector<NodeId> received;
  for (NodeId n : neighbors(src)) {
    if (rng.bernoulli(1.0 - link_.loss_rate)) received.push_back(n);
  }
  return received;
}

UnicastOutcome UnitDiskMedium::transmit_unicast(NodeId src, NodeId dst, int max_attempts,
                                                RngStream& rng) const {
  if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
  if (!in_range(src, dst)) return {UnicastOutcome::Status::OutOfRange, 0};
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (rng.bernoulli(1.0 - link_.loss_rate)) {
      return {UnicastOutcome::Status::Delivered, attempt};
    }
  }
  return {UnicastOutcome::Status::Lost, max_attempts};
}

std::vector<int> UnitDiskMedium::hop_distances(NodeId from) const {
  std::vector<int> dist(positions_.size(), -1);
  std::deque<NodeId> frontier{from};
  dist[index(from)] = 0;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop_front();
    for (NodeId v : adjacency_[u - 1]) {
      if (dist[v - 1] < 0) {
        dist[v - 1] = dist[u - 1] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

bool UnitDiskMedium::connected() const {
  if (positions_.empty()) return true;
  for (int d : hop_distances(1)) {
    if (d < 0) return false;
  }
  return true;
}

}  // namespace rplsec
