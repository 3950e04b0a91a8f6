#pragma once

#include <optional>
#include <span>
#include <string_view>

#include "rplsec/messages.hpp"

namespace rplsec {

enum class OfKind : std::uint8_t { Of0, Mrhof, SecOf };
enum class SecOfMode : std::uint8_t { Normal, Restricted };

/// How Sec-OF compares the frozen hop of a candidate against the current
/// parent's: `Leq` is h(a') <= h(a), `Eq` requires equality.
enum class HopClause : std::uint8_t { Leq, Eq };

std::string_view to_string(OfKind kind);
std::optional<OfKind> parse_of_kind(std::string_view text);
std::string_view to_string(HopClause clause);
std::optional<HopClause> parse_hop_clause(std::string_view text);

/// One entry of the parent candidate set as seen by a selection policy.
struct Candidate {
  NodeId id = 0;
  Rank advertised;
  double etx = 1.0;
  /// Hop distance; under Sec-OF restricted mode this is the frozen value.
  std::optional<HopCount> hop;
};

struct OfParams {
  /// Rank units per ETX step (and per hop under OF0).
  double rank_unit = 128.0;
  /// Hysteresis threshold in rank units.
  double alpha = 64.0;
  Rank root_rank = kRootRank;
  HopClause hop_clause = HopClause::Leq;
  /// Restricted mode: reject new parents whose advertised rank is below
  /// root_rank + frozen_hop * rank_unit.
  bool rank_floor = true;
  /// The selecting node's own frozen hop (restricted mode only).
  std::optional<HopCount> own_hop;
};

/// Rank this node would hold through `c`: advertised + etx * unit for the
/// ETX objectives, advertised + unit for OF0.
Rank rank_through(OfKind kind, const Candidate& c, const OfParams& params);

/// Minimum advertised finite rank, ties to the lowest id.
std::optional<NodeId> of0_select(std::span<const Candidate> candidates,
                                 std::optional<NodeId> current);

/// Minimum path rank on first selection; afterwards switch only when the
/// best alternative improves on the current path rank by more than alpha.
std::optional<NodeId> mrhof_select(std::span<const Candidate> candidates,
                                   std::optional<NodeId> current, const OfParams& params);

/// Normal mode is MRHOF. Restricted mode additionally requires the frozen
/// hop clause and only admits candidates whose frozen hop is known.
std::optional<NodeId> secof_select(std::span<const Candidate> candidates,
                                   std::optional<NodeId> current, const OfParams& params,
                                   SecOfMode mode);

std::optional<NodeId> select_parent(OfKind kind, std::span<const Candidate> candidates,
                                    std::optional<NodeId> current, const OfParams& params,
                                    SecOfMode mode);

/// Normal on [0, normal_duration), Restricted afterwards.
SecOfMode secof_mode(SimTime now, SimTime normal_duration);

}  // namespace rplsec
