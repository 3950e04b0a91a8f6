#include "rplsec/objective.hpp"

#include <algorithm>

namespace rplsec {

std::string_view to_string(OfKind kind) {
  switch (kind) {
    case OfKind::Of0: return "of0";
    case OfKind::Mrhof: return "mrhof";
    case OfKind::SecOf: return "secof";
  }
  return "?";
}

std::optional<OfKind> parse_of_kind(std::string_view text) {
  if (text == "of0") return OfKind::Of0;
  if (text == "mrhof") return OfKind::Mrhof;
  if (text == "secof") return OfKind::SecOf;
  return std::nullopt;
}

std::string_view to_string(HopClause clause) {
  return clause == HopClause::Leq ? "leq" : "eq";
}

std::optional<HopClause> parse_hop_clause(std::string_view text) {
  if (text == "leq") return HopClause::Leq;
  if (text == "eq") return HopClause::Eq;
  return std::nullopt;
}

Rank rank_through(OfKind kind, const Candidate& c, const OfParams& params) {
  if (c.advertised.is_infinite()) return Rank::infinite();
  if (kind == OfKind::Of0) return Rank(c.advertised.value() + params.rank_unit);
  return Rank(c.advertised.value() + c.etx * params.rank_unit);
}

namespace {

const Candidate* find_finite(std::span<const Candidate> candidates, std::optional<NodeId> id) {
  if (!id) return nullptr;
  for (const auto& c : candidates) {
    if (c.id == *id && c.advertised.is_finite()) return &c;
  }
  return nullptr;
}

// Lowest `key`, ties to the lowest id. Candidates failing `admit` or with
// infinite rank are skipped.
template <typename Key, typename Admit>
const Candidate* argmin(std::span<const Candidate> candidates, Key key, Admit admit) {
  const Candidate* best = nullptr;
  Rank best_key = Rank::infinite();
  for (const auto& c : candidates) {
    if (c.advertised.is_infinite() || !admit(c)) continue;
    const Rank k = key(c);
    if (best == nullptr || k < best_key || (k == best_key && c.id < best->id)) {
      best = &c;
      best_key = k;
    }
  }
  return best;
}

bool hysteresis_passes(Rank alternative, Rank current, double alpha) {
  return alternative.value() < current.value() - alpha;
}

}  // namespace

std::optional<NodeId> of0_select(std::span<const Candidate> candidates,
                                 std::optional<NodeId> /*current*/) {
  const Candidate* best = argmin(
      candidates, [](const Candidate& c) { return c.advertised; },
      [](const Candidate&) { return true; });
  if (best == nullptr) return std::nullopt;
  return best->id;
}

std::optional<NodeId> mrhof_select(std::span<const Candidate> candidates,
                                   std::optional<NodeId> current, const OfParams& params) {
  auto path = [&](const Candidate& c) { return rank_through(OfKind::Mrhof, c, params); };
  const Candidate* best = argmin(candidates, path, [](const Candidate&) { return true; });
  if (best == nullptr) return std::nullopt;
  const Candidate* cur = find_finite(candidates, current);
  if (cur == nullptr) return best->id;
  if (best->id != cur->id && hysteresis_passes(path(*best), path(*cur), params.alpha)) {
    return best->id;
  }
  return cur->id;
}

std::optional<NodeId> secof_select(std::span<const Candidate> candidates,
                                   std::optional<NodeId> current, const OfParams& params,
                                   SecOfMode mode) {
  if (mode == SecOfMode::Normal) return mrhof_select(candidates, current, params);

  auto path = [&](const Candidate& c) { return rank_through(OfKind::SecOf, c, params); };
  auto admissible = [&](const Candidate& c) {
    if (!c.hop) return false;
    if (params.own_hop && *c.hop >= *params.own_hop) return false;
    if (params.rank_floor &&
        c.advertised.value() < params.root_rank.value() + *c.hop * params.rank_unit) {
      return false;
    }
    return true;
  };

  const Candidate* cur = find_finite(candidates, current);
  if (cur == nullptr) {
    const Candidate* best = argmin(candidates, path, admissible);
    if (best == nullptr) return std::nullopt;
    return best->id;
  }
  if (!cur->hop) return cur->id;

  const HopCount cur_hop = *cur->hop;
  auto switchable = [&](const Candidate& c) {
    if (c.id == cur->id || !admissible(c)) return false;
    return params.hop_clause == HopClause::Leq ? *c.hop <= cur_hop : *c.hop == cur_hop;
  };
  const Candidate* best = argmin(candidates, path, switchable);
  if (best != nullptr && hysteresis_passes(path(*best), path(*cur), params.alpha)) {
    return best->id;
  }
  return cur->id;
}

std::optional<NodeId> select_parent(OfKind kind, std::span<const Candidate> candidates,
                                    std::optional<NodeId> current, const OfParams& params,
                                    SecOfMode mode) {
  switch (kind) {
    case OfKind::Of0: return of0_select(candidates, current);
    case OfKind::Mrhof: return mrhof_select(candidates, current, params);
    case OfKind::SecOf: return secof_select(candidates, current, params, mode);
  }
  return std::nullopt;
}

SecOfMode secof_mode(SimTime now, SimTime normal_duration) {
  return now < normal_duration ? SecOfMode::Normal : SecOfMode::Restricted;
}

}  // namespace rplsec
