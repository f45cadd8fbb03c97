#pragma once

// Scenario configuration and the per-trial network realization for the
// small-disaster (LAP + MDRUs) and large-disaster (HAP + satellite) setups.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pdcsim/channel.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/fading.hpp"
#include "pdcsim/geometry.hpp"
#include "pdcsim/random.hpp"

namespace pdcsim {

enum class Setup : std::uint8_t { SmallDisaster, LargeDisaster };

constexpr std::string_view to_string(Setup s) noexcept {
  return s == Setup::SmallDisaster ? "small" : "large";
}

enum class InterferenceMode : std::uint8_t { None, SameTier, AllTier };

constexpr std::string_view to_string(InterferenceMode m) noexcept {
  switch (m) {
    case InterferenceMode::None: return "none";
    case InterferenceMode::SameTier: return "same_tier";
    case InterferenceMode::AllTier: return "all_tier";
  }
  return "?";
}

enum class SatFading : std::uint8_t { ShadowedRician, Nakagami };

enum class CiMethod : std::uint8_t { Normal, Exact };

// Which sampler feeds each link class. Nakagami shapes come from the link
// class's TierParams.
struct FadingPlan {
  SatFading sat_fading = SatFading::ShadowedRician;
  ShadowedRicianParams shadowed_rician{};

  double draw(const TierParams& link_cls, RandomStream& rng) const {
    if (link_cls.tier == Tier::SAT && sat_fading == SatFading::ShadowedRician)
      return shadowed_rician_power_gain(shadowed_rician, rng);
    return nakagami_power_gain(link_cls.nakagami_m, rng);
  }

  friend bool operator==(const FadingPlan&, const FadingPlan&) = default;
};

// Everything a link evaluation needs besides the realization itself.
struct RadioEnvironment {
  ChannelModel channel{};
  FadingPlan fading{};

  friend bool operator==(const RadioEnvironment&, const RadioEnvironment&) = default;
};

// Urban multi-tier defaults. Lengths are meters.
struct ScenarioConfig {
  Setup setup = Setup::SmallDisaster;
  double r_d = 1000.0;
  std::size_t n_m = 0;
  bool satellite_enabled = true;
  bool abs_enabled = true;  // deploy the LAP (small) or HAP (large)
  bool lap_ideal_backhaul = false;

  double tbs_density = 10.0;  // per km^2
  TbsCountMode tbs_count_mode = TbsCountMode::Poisson;
  double sim_margin = 3000.0;  // r_s = r_d + sim_margin
  std::vector<double> pinned_tbs;  // ground x-offsets replacing the random field when nonempty
  std::optional<double> user_radius;  // fixed user at (radius, 0, 0) instead of uniform

  RadioEnvironment radio = default_radio();

  double tau_access = 0.1;
  double tau_backhaul = 0.2;
  double noise = 1e-12;  // W
  InterferenceMode interference = InterferenceMode::SameTier;

  std::size_t realizations = 20000;
  std::uint64_t seed = 1;
  CiMethod ci = CiMethod::Normal;

  double r_s() const noexcept { return r_d + sim_margin; }
  TierParams& tier(Tier t) noexcept { return radio.channel.tiers[index_of(t)]; }
  const TierParams& tier(Tier t) const noexcept { return radio.channel.tiers[index_of(t)]; }

  void validate() const {
    if (!(r_d > 0.0) || !std::isfinite(r_d)) throw InvalidArgument("r_d must be positive");
    if (!(sim_margin > 0.0) || !std::isfinite(sim_margin)) throw InvalidArgument("simulation margin must be positive");
    if (!(tbs_density >= 0.0) || !std::isfinite(tbs_density)) throw InvalidArgument("TBS density must be >= 0");
    for (double x : pinned_tbs)
      if (!(x > r_d) || !std::isfinite(x)) throw InvalidArgument("pinned TBS must lie outside the disaster disk");
    if (user_radius && !(*user_radius >= 0.0 && *user_radius <= r_d))
      throw InvalidArgument("fixed user radius must lie in [0, r_d]");
    for (std::size_t i = 1; i < kTierCount; ++i) radio.channel.tiers[i].validate();
    radio.channel.los.validate();
    radio.fading.shadowed_rician.validate();
    if (!(radio.channel.reference_gain > 0.0)) throw InvalidArgument("reference gain must be positive");
    if (!(radio.channel.min_distance > 0.0)) throw InvalidArgument("minimum distance must be positive");
    if (!(tau_access > 0.0) || !(tau_backhaul > 0.0)) throw InvalidArgument("SINR thresholds must be positive");
    if (!(noise > 0.0) || !std::isfinite(noise)) throw InvalidArgument("noise power must be positive");
    if (realizations == 0) throw InvalidArgument("need at least one realization");
    if (tier(Tier::LAP).altitude <= 0.0 || tier(Tier::HAP).altitude <= 0.0 || tier(Tier::SAT).altitude <= 0.0)
      throw InvalidArgument("aerial altitudes must be positive");
  }

  static RadioEnvironment default_radio() {
    RadioEnvironment env;
    auto& t = env.channel.tiers;
    t[index_of(Tier::User)] = {Tier::User, 1.0, 2.0, 2.0, 1.0, 0.0};
    t[index_of(Tier::MDRU)] = {Tier::MDRU, 10.0, 3.0, 3.0, 1.0, 0.0};
    t[index_of(Tier::TBS)] = {Tier::TBS, 10.0, 2.9, 2.9, 1.0, 0.0};
    t[index_of(Tier::LAP)] = {Tier::LAP, 3.0, 2.5, 3.0, 2.0, 200.0};
    t[index_of(Tier::HAP)] = {Tier::HAP, 20.0, 2.2, 3.0, 3.0, 10'000.0};
    t[index_of(Tier::SAT)] = {Tier::SAT, 1000.0, 2.0, 2.0, 3.0, 500'000.0};
    return env;
  }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

struct LinkState {
  bool los = true;
  double gain = 1.0;

  friend bool operator==(const LinkState&, const LinkState&) = default;
};

// LoS state and fading gain of every link in a realization. A seeded table
// derives each link's state from (seed, unordered endpoint pair) through its
// own sub-stream, so every link has exactly one state no matter how often or
// in what order it is queried. Explicitly recorded states take precedence.
class LinkStates {
public:
  LinkStates() = default;
  explicit LinkStates(std::uint64_t seed) : seed_(seed) {}

  void record(NodeId a, NodeId b, LinkState s) { recorded_[key(a, b)] = s; }

  bool has_seed() const noexcept { return seed_.has_value(); }

  LinkState get(const Node& tx, const Node& rx, const LinkGeometry& g, const RadioEnvironment& env) const {
    if (!recorded_.empty()) {
      if (auto it = recorded_.find(key(tx.id, rx.id)); it != recorded_.end()) return it->second;
    }
    if (!seed_) throw MissingLinkState("no LoS/fading state recorded for link");
    const auto [lo, hi] = key(tx.id, rx.id);
    RandomStream rng(substream_seed(*seed_, lo, hi));
    LinkState s;
    s.los = has_los_split(g.cls) ? bernoulli(env.channel.los_probability_of(g), rng) : true;
    s.gain = env.fading.draw(env.channel.params(g.cls), rng);
    return s;
  }

  friend bool operator==(const LinkStates&, const LinkStates&) = default;

private:
  using Key = std::pair<NodeId, NodeId>;
  static Key key(NodeId a, NodeId b) noexcept { return a < b ? Key{a, b} : Key{b, a}; }

  std::optional<std::uint64_t> seed_;
  std::map<Key, LinkState> recorded_;
};

// One sampled network instance. Node ids equal their index in `nodes`.
class Realization {
public:
  Realization() = default;

  Realization(Setup setup, Point3 user, std::vector<Node> nodes, LinkStates links = {})
      : setup_(setup), user_(make_user_node(user)), nodes_(std::move(nodes)), links_(std::move(links)) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      nodes_[i].id = static_cast<NodeId>(i);
      by_tier_[index_of(nodes_[i].tier)].push_back(nodes_[i].id);
    }
  }

  Setup setup() const noexcept { return setup_; }
  const Node& user() const noexcept { return user_; }
  std::span<const Node> nodes() const noexcept { return nodes_; }
  std::span<const NodeId> ids_of(Tier t) const noexcept { return by_tier_[index_of(t)]; }
  std::size_t count(Tier t) const noexcept { return by_tier_[index_of(t)].size(); }

  const Node& node(NodeId id) const {
    if (id == kUserId) return user_;
    return nodes_.at(id);
  }

  LinkStates& links() noexcept { return links_; }
  const LinkStates& links() const noexcept { return links_; }

  friend bool operator==(const Realization&, const Realization&) = default;

private:
  Setup setup_ = Setup::SmallDisaster;
  Node user_ = make_user_node({});
  std::vector<Node> nodes_;
  std::array<std::vector<NodeId>, kTierCount> by_tier_{};
  LinkStates links_;
};

namespace detail {

inline Point3 draw_user(const ScenarioConfig& cfg, RandomStream& rng) {
  if (cfg.user_radius) return {*cfg.user_radius, 0.0, 0.0};
  return sample_uniform_disk_point(rng, DiskRegion({}, cfg.r_d));
}

inline void append_tbs(const ScenarioConfig& cfg, RandomStream& rng, std::vector<Node>& nodes) {
  if (!cfg.pinned_tbs.empty()) {
    for (double x : cfg.pinned_tbs) nodes.push_back({0, Tier::TBS, {x, 0.0, 0.0}, true});
    return;
  }
  if (cfg.tbs_density <= 0.0) return;
  for (const auto& p : sample_tbs_field(rng, cfg.r_d, cfg.r_s(), cfg.tbs_density, cfg.tbs_count_mode))
    nodes.push_back({0, Tier::TBS, p, true});
}

}  // namespace detail

// Node order (and therefore id order): aerial platform, satellite, TBSs, MDRUs.
// Draw order from `rng`: user, TBS field, MDRUs, link-state seed.
inline Realization build_small_disaster(const ScenarioConfig& cfg, RandomStream& rng) {
  if (cfg.setup != Setup::SmallDisaster) throw InvalidArgument("configuration is not a small-disaster setup");
  cfg.validate();
  const Point3 user = detail::draw_user(cfg, rng);
  std::vector<Node> nodes;
  if (cfg.abs_enabled)
    nodes.push_back({0, Tier::LAP, {0.0, 0.0, cfg.tier(Tier::LAP).altitude}, cfg.lap_ideal_backhaul});
  detail::append_tbs(cfg, rng, nodes);
  for (const auto& p : sample_uniform_disk(rng, DiskRegion({}, cfg.r_d), cfg.n_m))
    nodes.push_back({0, Tier::MDRU, p, false});
  return Realization(Setup::SmallDisaster, user, std::move(nodes), LinkStates(rng()));
}

inline Realization build_large_disaster(const ScenarioConfig& cfg, RandomStream& rng) {
  if (cfg.setup != Setup::LargeDisaster) throw InvalidArgument("configuration is not a large-disaster setup");
  cfg.validate();
  const Point3 user = detail::draw_user(cfg, rng);
  std::vector<Node> nodes;
  if (cfg.abs_enabled) nodes.push_back({0, Tier::HAP, {0.0, 0.0, cfg.tier(Tier::HAP).altitude}, false});
  if (cfg.satellite_enabled) nodes.push_back({0, Tier::SAT, {0.0, 0.0, cfg.tier(Tier::SAT).altitude}, true});
  detail::append_tbs(cfg, rng, nodes);
  return Realization(Setup::LargeDisaster, user, std::move(nodes), LinkStates(rng()));
}

inline Realization build_realization(const ScenarioConfig& cfg, RandomStream& rng) {
  return cfg.setup == Setup::SmallDisaster ? build_small_disaster(cfg, rng) : build_large_disaster(cfg, rng);
}

}  // namespace pdcsim
