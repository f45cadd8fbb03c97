#pragma once

// Deterministic link budget: LoS probability, power-law path loss, and the
// average received power that drives association.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "pdcsim/errors.hpp"
#include "pdcsim/geometry.hpp"

namespace pdcsim {

// Declared in hierarchy order: a link between two tiers takes the class of
// the endpoint that compares greater.
enum class Tier : std::uint8_t { User, MDRU, TBS, LAP, HAP, SAT };

inline constexpr std::size_t kTierCount = 6;

constexpr std::size_t index_of(Tier t) noexcept { return static_cast<std::size_t>(t); }

constexpr std::string_view to_string(Tier t) noexcept {
  switch (t) {
    case Tier::User: return "user";
    case Tier::MDRU: return "mdru";
    case Tier::TBS: return "tbs";
    case Tier::LAP: return "lap";
    case Tier::HAP: return "hap";
    case Tier::SAT: return "sat";
  }
  return "?";
}

inline std::optional<Tier> tier_from_string(std::string_view s) noexcept {
  for (std::size_t i = 0; i < kTierCount; ++i) {
    const auto t = static_cast<Tier>(i);
    if (to_string(t) == s) return t;
  }
  return std::nullopt;
}

constexpr bool is_aerial(Tier t) noexcept { return t == Tier::LAP || t == Tier::HAP || t == Tier::SAT; }

// Tiers whose links carry a LoS/NLoS exponent pair weighted by the
// elevation-angle LoS probability.
constexpr bool has_los_split(Tier t) noexcept { return t == Tier::LAP || t == Tier::HAP; }

using NodeId = std::uint32_t;
inline constexpr NodeId kUserId = std::numeric_limits<NodeId>::max();

struct Node {
  NodeId id = 0;
  Tier tier = Tier::TBS;
  Point3 position{};
  bool core_connected = false;

  friend bool operator==(const Node&, const Node&) = default;
};

inline Node make_user_node(const Point3& p) { return Node{kUserId, Tier::User, p, false}; }

struct TierParams {
  Tier tier = Tier::TBS;
  double tx_power = 1.0;   // W
  double alpha_los = 2.0;  // also the only exponent for tiers without a split
  double alpha_nlos = 2.0;
  double nakagami_m = 1.0;
  double altitude = 0.0;  // m

  void validate() const {
    const auto name = std::string(to_string(tier));
    if (!(tx_power > 0.0) || !std::isfinite(tx_power)) throw InvalidArgument(name + ": tx_power must be positive");
    if (!(alpha_los >= 2.0) || !std::isfinite(alpha_los)) throw InvalidArgument(name + ": alpha_los must be >= 2");
    if (!(alpha_nlos >= alpha_los) || !std::isfinite(alpha_nlos)) throw InvalidArgument(name + ": alpha_nlos must be >= alpha_los");
    if (!(nakagami_m >= 0.5) || !std::isfinite(nakagami_m)) throw InvalidArgument(name + ": nakagami_m must be >= 0.5");
    if (!(altitude >= 0.0) || !std::isfinite(altitude)) throw InvalidArgument(name + ": altitude must be >= 0");
  }

  friend bool operator==(const TierParams&, const TierParams&) = default;
};

// Sigmoid LoS model for air-to-ground links. Defaults are the urban
// constants of the Al-Hourani et al. closed form.
struct LosModel {
  double a = 9.61;
  double b = 0.16;
  std::string environment_label = "urban";

  void validate() const {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
      throw InvalidArgument("LoS model needs a > 0 and b > 0");
  }

  friend bool operator==(const LosModel&, const LosModel&) = default;
};

inline double los_probability(const LosModel& model, double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 90.0)) throw InvalidArgument("elevation angle outside [0, 90] degrees");
  return 1.0 / (1.0 + model.a * std::exp(-model.b * (theta_deg - model.a)));
}

// d^-alpha with d in meters (unit gain at 1 m).
inline double path_loss_gain(double alpha, double d) {
  if (!(d > 0.0)) throw InvalidArgument("path loss needs a positive distance");
  return std::pow(d, -alpha);
}

inline Tier default_link_class(Tier a, Tier b) noexcept { return index_of(a) >= index_of(b) ? a : b; }

// Per-pair override of the hierarchy rule. Symmetric.
class LinkClassTable {
public:
  LinkClassTable() {
    for (std::size_t i = 0; i < kTierCount; ++i)
      for (std::size_t j = 0; j < kTierCount; ++j) table_[i][j] = default_link_class(static_cast<Tier>(i), static_cast<Tier>(j));
  }

  void set(Tier a, Tier b, Tier cls) {
    if (cls != a && cls != b) throw InvalidArgument("link class override must name one of the endpoints");
    table_[index_of(a)][index_of(b)] = cls;
    table_[index_of(b)][index_of(a)] = cls;
  }

  Tier operator()(Tier a, Tier b) const noexcept { return table_[index_of(a)][index_of(b)]; }

  bool is_default() const noexcept { return *this == LinkClassTable{}; }

  friend bool operator==(const LinkClassTable&, const LinkClassTable&) = default;

private:
  std::array<std::array<Tier, kTierCount>, kTierCount> table_{};
};

inline Tier link_class(const Node& a, const Node& b) noexcept { return default_link_class(a.tier, b.tier); }

using TierTable = std::array<TierParams, kTierCount>;

// Geometry of one link as the channel sees it.
struct LinkGeometry {
  Tier cls = Tier::TBS;
  double distance = 1.0;  // m, after the minimum-distance clamp
  double theta_deg = 90.0;  // elevation, meaningful only for split classes
};

// Link-budget evaluator bundling tier parameters, the LoS model, the class
// table, the reference gain and the minimum-distance clamp.
struct ChannelModel {
  TierTable tiers{};
  LosModel los{};
  LinkClassTable classes{};
  double reference_gain = 1.0;
  double min_distance = 1.0;  // m

  const TierParams& params(Tier t) const noexcept { return tiers[index_of(t)]; }

  LinkGeometry geometry(const Node& tx, const Node& rx) const {
    LinkGeometry g;
    g.cls = classes(tx.tier, rx.tier);
    g.distance = std::max(distance3d(tx.position, rx.position), min_distance);
    if (has_los_split(g.cls)) {
      const Point3& hi = tx.position.z >= rx.position.z ? tx.position : rx.position;
      const Point3& lo = tx.position.z >= rx.position.z ? rx.position : tx.position;
      g.theta_deg = hi.z > lo.z ? elevation_angle(lo, hi) : 0.0;
    }
    return g;
  }

  double los_probability_of(const LinkGeometry& g) const {
    return has_los_split(g.cls) ? los_probability(los, g.theta_deg) : 1.0;
  }

  // Path gain for a given LoS state (ignored for classes without a split).
  double path_gain(const LinkGeometry& g, bool los_state) const {
    const TierParams& p = params(g.cls);
    const double alpha = (!has_los_split(g.cls) || los_state) ? p.alpha_los : p.alpha_nlos;
    return reference_gain * path_loss_gain(alpha, g.distance);
  }

  // LoS-probability-weighted path gain; fading has unit mean and drops out.
  double mean_path_gain(const LinkGeometry& g) const {
    const TierParams& p = params(g.cls);
    if (!has_los_split(g.cls)) return reference_gain * path_loss_gain(p.alpha_los, g.distance);
    const double pl = los_probability(los, g.theta_deg);
    return reference_gain * (pl * path_loss_gain(p.alpha_los, g.distance) +
                             (1.0 - pl) * path_loss_gain(p.alpha_nlos, g.distance));
  }

  // Average power at rx when tx transmits at its tier's power.
  double avg_received_power(const Node& tx, const Node& rx) const {
    return params(tx.tier).tx_power * mean_path_gain(geometry(tx, rx));
  }

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

}  // namespace pdcsim
