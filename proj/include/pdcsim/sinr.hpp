#pragma once

// Per-link SINR and the end-to-end coverage predicate.
//
// Access and backhaul hops use orthogonal bands. Interferers transmit on the
// band of the hop they disturb:
//   None      noise only
//   SameTier  every other node of the serving transmitter's tier
//   AllTier   every other non-user node

#include <limits>

#include "pdcsim/association.hpp"
#include "pdcsim/scenario.hpp"

namespace pdcsim {

namespace detail {

inline double received_power(const Node& tx, const Node& rx, const Realization& real, const RadioEnvironment& env) {
  const LinkGeometry g = env.channel.geometry(tx, rx);
  const LinkState s = real.links().get(tx, rx, g, env);
  return env.channel.params(tx.tier).tx_power * s.gain * env.channel.path_gain(g, s.los);
}

// Sums interference at rx, stopping early once the partial sum exceeds
// `cap` (partial sums of nonnegative terms never decrease).
inline double interference(const Hop& hop, const Realization& real, const RadioEnvironment& env,
                           InterferenceMode mode, double cap = std::numeric_limits<double>::infinity()) {
  if (mode == InterferenceMode::None) return 0.0;
  const Node& tx = real.node(hop.tx);
  const Node& rx = real.node(hop.rx);
  double sum = 0.0;
  auto accumulate = [&](const Node& n) {
    if (n.id == tx.id || n.id == rx.id) return false;
    sum += received_power(n, rx, real, env);
    return sum > cap;
  };
  if (mode == InterferenceMode::SameTier) {
    for (NodeId id : real.ids_of(tx.tier))
      if (accumulate(real.node(id))) break;
  } else {
    for (const Node& n : real.nodes())
      if (accumulate(n)) break;
  }
  return sum;
}

}  // namespace detail

inline double link_sinr(const Hop& hop, const Realization& real, const RadioEnvironment& env, InterferenceMode mode,
                        double noise) {
  const double signal = detail::received_power(real.node(hop.tx), real.node(hop.rx), real, env);
  return signal / (detail::interference(hop, real, env, mode) + noise);
}

// Same predicate as link_sinr(...) >= tau, but abandons the interference sum
// as soon as the hop is certain to fail.
inline bool link_meets_threshold(const Hop& hop, const Realization& real, const RadioEnvironment& env,
                                 InterferenceMode mode, double noise, double tau) {
  const double signal = detail::received_power(real.node(hop.tx), real.node(hop.rx), real, env);
  // Any interference above this bound fails the hop with a wide rounding margin.
  const double cap = (signal / tau) * (1.0 + 1e-9);
  const double i = detail::interference(hop, real, env, mode, cap);
  if (i > cap) return false;
  return signal / (i + noise) >= tau;
}

// Every access hop clears tau_access and every backhaul hop tau_backhaul.
inline bool path_covered(const PathSpec& path, const Realization& real, const RadioEnvironment& env,
                         InterferenceMode mode, double tau_access, double tau_backhaul, double noise) {
  for (const Hop& hop : path.hops) {
    const double tau = hop.role == LinkRole::Access ? tau_access : tau_backhaul;
    if (!link_meets_threshold(hop, real, env, mode, noise, tau)) return false;
  }
  return true;
}

}  // namespace pdcsim
