#pragma once

// Hop-by-hop association under the maximum average received power rule,
// restricted to each setup's tier grammar.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdcsim/channel.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/scenario.hpp"

namespace pdcsim {

// Allowed successor tiers per tier: a DAG rooted at the user.
class AdjacencyRules {
public:
  AdjacencyRules() = default;

  static AdjacencyRules for_setup(Setup setup) {
    AdjacencyRules r;
    if (setup == Setup::SmallDisaster) {
      r.allow(Tier::User, {Tier::TBS, Tier::LAP, Tier::MDRU});
      r.allow(Tier::MDRU, {Tier::TBS, Tier::LAP});
      r.allow(Tier::LAP, {Tier::TBS});
    } else {
      r.allow(Tier::User, {Tier::TBS, Tier::HAP});
      r.allow(Tier::HAP, {Tier::TBS, Tier::SAT});
    }
    return r;
  }

  void allow(Tier from, std::initializer_list<Tier> to) {
    for (Tier t : to) successors_[index_of(from)].push_back(t);
    if (!is_acyclic()) throw InvalidArgument("tier adjacency must be acyclic");
  }

  std::span<const Tier> successors(Tier t) const noexcept { return successors_[index_of(t)]; }

  bool is_acyclic() const {
    std::array<int, kTierCount> state{};  // 0 unvisited, 1 on stack, 2 done
    auto visit = [&](auto&& self, std::size_t v) -> bool {
      if (state[v] == 1) return false;
      if (state[v] == 2) return true;
      state[v] = 1;
      for (Tier s : successors_[v])
        if (!self(self, index_of(s))) return false;
      state[v] = 2;
      return true;
    };
    for (std::size_t v = 0; v < kTierCount; ++v)
      if (!visit(visit, v)) return false;
    return true;
  }

  // Every tier sequence from the user that ends at a tier in `terminal`,
  // stopping at the first terminal tier reached.
  std::vector<std::vector<Tier>> words(std::span<const Tier> terminal) const {
    std::vector<std::vector<Tier>> out;
    std::vector<Tier> cur{Tier::User};
    auto is_terminal = [&](Tier t) {
      for (Tier x : terminal)
        if (x == t) return true;
      return false;
    };
    auto walk = [&](auto&& self) -> void {
      for (Tier s : successors(cur.back())) {
        cur.push_back(s);
        if (is_terminal(s))
          out.push_back(cur);
        else
          self(self);
        cur.pop_back();
      }
    };
    walk(walk);
    return out;
  }

private:
  std::array<std::vector<Tier>, kTierCount> successors_{};
};

enum class LinkRole : std::uint8_t { Access, Backhaul };

// Downlink convention: the node nearer the core transmits.
struct Hop {
  NodeId tx = 0;
  NodeId rx = kUserId;
  LinkRole role = LinkRole::Access;

  friend bool operator==(const Hop&, const Hop&) = default;
};

struct PathSpec {
  std::vector<Hop> hops;

  friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

// Every path shape either setup can produce. UserLap and UserMdruLap only
// occur when the LAP is treated as core-connected.
enum class PathType : std::uint8_t {
  UserTbs,
  UserLap,
  UserLapTbs,
  UserMdruTbs,
  UserMdruLap,
  UserMdruLapTbs,
  UserHapTbs,
  UserHapSat,
};

inline constexpr std::size_t kPathTypeCount = 8;

inline constexpr std::array<PathType, kPathTypeCount> kAllPathTypes{
    PathType::UserTbs,     PathType::UserLap,        PathType::UserLapTbs, PathType::UserMdruTbs,
    PathType::UserMdruLap, PathType::UserMdruLapTbs, PathType::UserHapTbs, PathType::UserHapSat,
};

constexpr std::string_view to_string(PathType p) noexcept {
  switch (p) {
    case PathType::UserTbs: return "user_tbs";
    case PathType::UserLap: return "user_lap";
    case PathType::UserLapTbs: return "user_lap_tbs";
    case PathType::UserMdruTbs: return "user_mdru_tbs";
    case PathType::UserMdruLap: return "user_mdru_lap";
    case PathType::UserMdruLapTbs: return "user_mdru_lap_tbs";
    case PathType::UserHapTbs: return "user_hap_tbs";
    case PathType::UserHapSat: return "user_hap_sat";
  }
  return "?";
}

inline std::optional<PathType> path_type_of(std::span<const Tier> tiers) {
  std::string name;
  for (Tier t : tiers) {
    if (!name.empty()) name += '_';
    name += to_string(t);
  }
  for (PathType p : kAllPathTypes)
    if (to_string(p) == name) return p;
  return std::nullopt;
}

// Tier sequence user, first server, ..., terminus.
inline std::vector<Tier> tier_sequence(const PathSpec& path, const Realization& real) {
  std::vector<Tier> out{Tier::User};
  for (const Hop& h : path.hops) out.push_back(real.node(h.tx).tier);
  return out;
}

inline PathType classify(const PathSpec& path, const Realization& real) {
  const auto tiers = tier_sequence(path, real);
  if (auto p = path_type_of(tiers)) return *p;
  throw InvalidArgument("path is not a word of any setup grammar");
}

// Greedy walk from the user: at each step take the allowed-tier node with the
// largest average received power toward the current node (ties to the lowest
// id) until a core-connected node is reached. Empty when a step has no
// candidates.
inline std::optional<PathSpec> try_select_path(const Realization& real, const AdjacencyRules& rules,
                                               const ChannelModel& channel) {
  PathSpec path;
  const Node* current = &real.user();
  for (;;) {
    const Node* best = nullptr;
    double best_power = -1.0;
    for (Tier t : rules.successors(current->tier)) {
      for (NodeId id : real.ids_of(t)) {
        const Node& cand = real.node(id);
        const double p = channel.avg_received_power(cand, *current);
        if (p > best_power || (p == best_power && id < best->id)) {
          best = &cand;
          best_power = p;
        }
      }
    }
    if (best == nullptr) return std::nullopt;
    path.hops.push_back({best->id, current->id, path.hops.empty() ? LinkRole::Access : LinkRole::Backhaul});
    if (best->core_connected) return path;
    current = best;
  }
}

inline PathSpec select_path(const Realization& real, const AdjacencyRules& rules, const ChannelModel& channel) {
  if (auto p = try_select_path(real, rules, channel)) return std::move(*p);
  throw NoPathAvailable("no grammar-legal successor toward the core network");
}

// Integer tallies over path types plus an outage bucket.
struct PathCounts {
  std::array<std::uint64_t, kPathTypeCount> by_type{};
  std::uint64_t outage = 0;

  std::uint64_t total() const noexcept {
    std::uint64_t n = outage;
    for (auto c : by_type) n += c;
    return n;
  }

  void add(std::optional<PathType> p) noexcept {
    if (p)
      ++by_type[static_cast<std::size_t>(*p)];
    else
      ++outage;
  }

  PathCounts& operator+=(const PathCounts& o) noexcept {
    for (std::size_t i = 0; i < kPathTypeCount; ++i) by_type[i] += o.by_type[i];
    outage += o.outage;
    return *this;
  }

  friend bool operator==(const PathCounts&, const PathCounts&) = default;
};

struct PathShares {
  std::array<double, kPathTypeCount> by_type{};
  double outage = 0.0;

  double operator[](PathType p) const noexcept { return by_type[static_cast<std::size_t>(p)]; }

  friend bool operator==(const PathShares&, const PathShares&) = default;
};

inline PathShares to_shares(const PathCounts& counts) {
  const std::uint64_t n = counts.total();
  if (n == 0) throw InvalidArgument("empty sample: no paths to tally");
  const double inv = 1.0 / static_cast<double>(n);
  PathShares s;
  for (std::size_t i = 0; i < kPathTypeCount; ++i) s.by_type[i] = static_cast<double>(counts.by_type[i]) * inv;
  s.outage = static_cast<double>(counts.outage) * inv;
  return s;
}

// Fractions per path type; std::nullopt entries count as outage.
inline PathShares path_share_histogram(std::span<const std::optional<PathType>> paths) {
  PathCounts c;
  for (const auto& p : paths) c.add(p);
  return to_shares(c);
}

}  // namespace pdcsim
