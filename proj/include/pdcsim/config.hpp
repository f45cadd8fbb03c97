#pragma once

// Flat key-value configuration documents.
//
//   # comment
//   setup = large
//   r_d_m = 5000
//
// One key per line. Unknown keys, duplicates, type mismatches, constraint
// violations and keys that belong to the other setup are rejected with the
// key name and line number. Absent keys keep the parameter-table defaults.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pdcsim/errors.hpp"
#include "pdcsim/scenario.hpp"

namespace pdcsim {

namespace detail {

inline std::string_view trim(std::string_view s) noexcept {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace detail

// Shortest decimal that parses back to the same double. Plain notation for
// moderate magnitudes, so 500000 stays 500000 rather than 5e+05.
inline std::string format_double(double v) {
  char buf[400];
  const double a = std::abs(v);
  const bool plain = a == 0.0 || (a >= 1e-4 && a < 1e15);
  const auto res = std::to_chars(buf, buf + sizeof buf, v, plain ? std::chars_format::fixed : std::chars_format::scientific);
  return std::string(buf, res.ptr);
}

// Up to `digits` significant digits, locale independent.
inline std::string format_double(double v, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

struct ConfigKey {
  enum class Scope { Both, Small, Large };

  std::string name;
  Scope scope = Scope::Both;
  std::function<void(ScenarioConfig&, std::string_view, const std::string& key, std::size_t line)> set;
  std::function<std::string(const ScenarioConfig&)> get;
  // Emitted by render only when this returns true (optional keys).
  std::function<bool(const ScenarioConfig&)> present = [](const ScenarioConfig&) { return true; };
};

namespace detail {

inline double parse_number(std::string_view v, const std::string& key, std::size_t line) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != end || !std::isfinite(out))
    throw ConfigError(key, line, "type mismatch: expected a number, got '" + std::string(v) + "'");
  return out;
}

inline std::uint64_t parse_unsigned(std::string_view v, const std::string& key, std::size_t line) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  const auto res = std::from_chars(v.data(), end, out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != end)
    throw ConfigError(key, line, "type mismatch: expected a nonnegative integer, got '" + std::string(v) + "'");
  return out;
}

inline bool parse_bool(std::string_view v, const std::string& key, std::size_t line) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key, line, "type mismatch: expected true/false, got '" + std::string(v) + "'");
}

struct Range {
  double lo = 0.0;
  bool lo_inclusive = false;
  double hi = std::numeric_limits<double>::infinity();
};

inline double checked(double x, Range r, const std::string& key, std::size_t line) {
  const bool ok_lo = r.lo_inclusive ? x >= r.lo : x > r.lo;
  if (!ok_lo || x > r.hi)
    throw ConfigError(key, line,
                      "constraint violation: " + format_double(x) + " must be " + (r.lo_inclusive ? ">= " : "> ") +
                          format_double(r.lo) + (std::isinf(r.hi) ? "" : " and <= " + format_double(r.hi)));
  return x;
}

inline ConfigKey number_key(std::string name, ConfigKey::Scope scope, Range range,
                            std::function<double&(ScenarioConfig&)> field) {
  ConfigKey k;
  k.name = std::move(name);
  k.scope = scope;
  k.set = [range, field](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
    field(c) = checked(parse_number(v, key, line), range, key, line);
  };
  k.get = [field](const ScenarioConfig& c) { return format_double(field(const_cast<ScenarioConfig&>(c))); };
  return k;
}

inline ConfigKey bool_key(std::string name, ConfigKey::Scope scope, std::function<bool&(ScenarioConfig&)> field) {
  ConfigKey k;
  k.name = std::move(name);
  k.scope = scope;
  k.set = [field](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
    field(c) = parse_bool(v, key, line);
  };
  k.get = [field](const ScenarioConfig& c) -> std::string {
    return field(const_cast<ScenarioConfig&>(c)) ? "true" : "false";
  };
  return k;
}

template <typename Enum>
ConfigKey enum_key(std::string name, ConfigKey::Scope scope, std::vector<std::pair<std::string, Enum>> names,
                   std::function<Enum&(ScenarioConfig&)> field) {
  ConfigKey k;
  k.name = std::move(name);
  k.scope = scope;
  k.set = [names, field](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
    for (const auto& [n, e] : names)
      if (n == v) {
        field(c) = e;
        return;
      }
    std::string allowed;
    for (const auto& [n, e] : names) allowed += (allowed.empty() ? "" : "|") + n;
    throw ConfigError(key, line, "type mismatch: expected one of " + allowed + ", got '" + std::string(v) + "'");
  };
  k.get = [names, field](const ScenarioConfig& c) -> std::string {
    const Enum e = field(const_cast<ScenarioConfig&>(c));
    for (const auto& [n, x] : names)
      if (x == e) return n;
    return "?";
  };
  return k;
}

}  // namespace detail

// Every recognized key in canonical (render) order.
inline const std::vector<ConfigKey>& config_keys() {
  using detail::Range;
  using S = ConfigKey::Scope;
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    const Range positive{0.0, false};
    const Range nonneg{0.0, true};
    const Range exponent{2.0, true};
    const Range shape{0.5, true};
    auto tier_keys = [&](Tier t, const std::string& sub, S scope, bool split) {
      k.push_back(detail::number_key("p_" + sub + "_w", scope, positive,
                                     [t](ScenarioConfig& c) -> double& { return c.tier(t).tx_power; }));
      if (split) {
        k.push_back(detail::number_key("alpha_" + sub + "_los", scope, exponent,
                                       [t](ScenarioConfig& c) -> double& { return c.tier(t).alpha_los; }));
        k.push_back(detail::number_key("alpha_" + sub + "_nlos", scope, exponent,
                                       [t](ScenarioConfig& c) -> double& { return c.tier(t).alpha_nlos; }));
      } else {
        // Single exponent: keep the (unused) NLoS copy in step.
        ConfigKey a = detail::number_key("alpha_" + sub, scope, exponent,
                                         [t](ScenarioConfig& c) -> double& { return c.tier(t).alpha_los; });
        auto inner = a.set;
        a.set = [inner, t](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
          inner(c, v, key, line);
          c.tier(t).alpha_nlos = c.tier(t).alpha_los;
        };
        k.push_back(std::move(a));
      }
      k.push_back(detail::number_key("m_" + sub, scope, shape,
                                     [t](ScenarioConfig& c) -> double& { return c.tier(t).nakagami_m; }));
    };

    k.push_back(detail::enum_key<Setup>("setup", S::Both, {{"small", Setup::SmallDisaster}, {"large", Setup::LargeDisaster}},
                                        [](ScenarioConfig& c) -> Setup& { return c.setup; }));
    k.push_back(detail::number_key("r_d_m", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.r_d; }));

    {
      ConfigKey n;
      n.name = "n_m";
      n.scope = S::Small;
      n.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        c.n_m = static_cast<std::size_t>(detail::parse_unsigned(v, key, line));
      };
      n.get = [](const ScenarioConfig& c) { return std::to_string(c.n_m); };
      k.push_back(std::move(n));
    }
    k.push_back(detail::number_key("h_l_m", S::Small, positive,
                                   [](ScenarioConfig& c) -> double& { return c.tier(Tier::LAP).altitude; }));
    k.push_back(detail::bool_key("lap_ideal_backhaul", S::Small,
                                 [](ScenarioConfig& c) -> bool& { return c.lap_ideal_backhaul; }));
    k.push_back(detail::number_key("h_h_m", S::Large, positive,
                                   [](ScenarioConfig& c) -> double& { return c.tier(Tier::HAP).altitude; }));
    k.push_back(detail::number_key("h_s_m", S::Large, positive,
                                   [](ScenarioConfig& c) -> double& { return c.tier(Tier::SAT).altitude; }));
    k.push_back(detail::bool_key("satellite", S::Large, [](ScenarioConfig& c) -> bool& { return c.satellite_enabled; }));
    k.push_back(detail::bool_key("abs_enabled", S::Both, [](ScenarioConfig& c) -> bool& { return c.abs_enabled; }));

    k.push_back(detail::number_key("tbs_density_per_km2", S::Both, nonneg,
                                   [](ScenarioConfig& c) -> double& { return c.tbs_density; }));
    k.push_back(detail::enum_key<TbsCountMode>("tbs_count", S::Both,
                                               {{"poisson", TbsCountMode::Poisson}, {"fixed", TbsCountMode::FixedRounded}},
                                               [](ScenarioConfig& c) -> TbsCountMode& { return c.tbs_count_mode; }));
    k.push_back(detail::number_key("sim_margin_m", S::Both, positive,
                                   [](ScenarioConfig& c) -> double& { return c.sim_margin; }));
    {
      ConfigKey p;
      p.name = "pinned_tbs_m";
      p.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        c.pinned_tbs.clear();
        if (v.empty()) return;
        for (auto item : detail::split(v, ','))
          c.pinned_tbs.push_back(detail::checked(detail::parse_number(item, key, line), Range{0.0, false}, key, line));
      };
      p.get = [](const ScenarioConfig& c) {
        std::string s;
        for (double x : c.pinned_tbs) s += (s.empty() ? "" : ",") + format_double(x);
        return s;
      };
      p.present = [](const ScenarioConfig& c) { return !c.pinned_tbs.empty(); };
      k.push_back(std::move(p));
    }
    {
      ConfigKey u;
      u.name = "user_radius_m";
      u.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        c.user_radius = detail::checked(detail::parse_number(v, key, line), Range{0.0, true}, key, line);
      };
      u.get = [](const ScenarioConfig& c) { return c.user_radius ? format_double(*c.user_radius) : std::string{}; };
      u.present = [](const ScenarioConfig& c) { return c.user_radius.has_value(); };
      k.push_back(std::move(u));
    }

    tier_keys(Tier::TBS, "t", S::Both, false);
    tier_keys(Tier::MDRU, "m", S::Small, false);
    tier_keys(Tier::LAP, "l", S::Small, true);
    tier_keys(Tier::HAP, "h", S::Large, true);
    tier_keys(Tier::SAT, "s", S::Large, false);

    k.push_back(detail::enum_key<SatFading>(
        "sat_fading", S::Large, {{"shadowed_rician", SatFading::ShadowedRician}, {"nakagami", SatFading::Nakagami}},
        [](ScenarioConfig& c) -> SatFading& { return c.radio.fading.sat_fading; }));
    k.push_back(detail::number_key("sr_b0", S::Large, positive,
                                   [](ScenarioConfig& c) -> double& { return c.radio.fading.shadowed_rician.b0; }));
    k.push_back(detail::number_key("sr_m", S::Large, positive,
                                   [](ScenarioConfig& c) -> double& { return c.radio.fading.shadowed_rician.m_sr; }));
    k.push_back(detail::number_key("sr_omega", S::Large, nonneg,
                                   [](ScenarioConfig& c) -> double& { return c.radio.fading.shadowed_rician.omega; }));

    k.push_back(detail::number_key("los_a", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.radio.channel.los.a; }));
    k.push_back(detail::number_key("los_b", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.radio.channel.los.b; }));
    {
      ConfigKey e;
      e.name = "environment";
      e.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        if (v.empty() || v.find_first_of(" \t#=") != std::string_view::npos)
          throw ConfigError(key, line, "type mismatch: expected a single word");
        c.radio.channel.los.environment_label = std::string(v);
      };
      e.get = [](const ScenarioConfig& c) { return c.radio.channel.los.environment_label; };
      k.push_back(std::move(e));
    }
    k.push_back(detail::number_key("reference_gain", S::Both, positive,
                                   [](ScenarioConfig& c) -> double& { return c.radio.channel.reference_gain; }));
    k.push_back(detail::number_key("min_distance_m", S::Both, positive,
                                   [](ScenarioConfig& c) -> double& { return c.radio.channel.min_distance; }));
    {
      // a-b=c pairs, e.g. "mdru-lap=mdru,tbs-hap=tbs"
      ConfigKey o;
      o.name = "link_class_override";
      o.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        LinkClassTable table;
        if (!v.empty()) {
          for (auto item : detail::split(v, ',')) {
            const auto eq = item.find('=');
            const auto dash = item.find('-');
            if (eq == std::string_view::npos || dash == std::string_view::npos || dash > eq)
              throw ConfigError(key, line, "type mismatch: expected tier-tier=tier, got '" + std::string(item) + "'");
            const auto a = tier_from_string(detail::trim(item.substr(0, dash)));
            const auto b = tier_from_string(detail::trim(item.substr(dash + 1, eq - dash - 1)));
            const auto cls = tier_from_string(detail::trim(item.substr(eq + 1)));
            if (!a || !b || !cls) throw ConfigError(key, line, "unknown tier in '" + std::string(item) + "'");
            try {
              table.set(*a, *b, *cls);
            } catch (const InvalidArgument& ex) {
              throw ConfigError(key, line, std::string("constraint violation: ") + ex.what());
            }
          }
        }
        c.radio.channel.classes = table;
      };
      o.get = [](const ScenarioConfig& c) {
        std::string s;
        const LinkClassTable def;
        for (std::size_t i = 0; i < kTierCount; ++i)
          for (std::size_t j = i + 1; j < kTierCount; ++j) {
            const auto a = static_cast<Tier>(i), b = static_cast<Tier>(j);
            const Tier cls = c.radio.channel.classes(a, b);
            if (cls != def(a, b))
              s += (s.empty() ? "" : ",") + std::string(to_string(a)) + "-" + std::string(to_string(b)) + "=" +
                   std::string(to_string(cls));
          }
        return s;
      };
      o.present = [](const ScenarioConfig& c) { return !c.radio.channel.classes.is_default(); };
      k.push_back(std::move(o));
    }

    k.push_back(detail::number_key("tau_access", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.tau_access; }));
    k.push_back(detail::number_key("tau_backhaul", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.tau_backhaul; }));
    k.push_back(detail::number_key("noise_w", S::Both, positive, [](ScenarioConfig& c) -> double& { return c.noise; }));
    k.push_back(detail::enum_key<InterferenceMode>(
        "interference", S::Both,
        {{"none", InterferenceMode::None}, {"same_tier", InterferenceMode::SameTier}, {"all_tier", InterferenceMode::AllTier}},
        [](ScenarioConfig& c) -> InterferenceMode& { return c.interference; }));
    {
      ConfigKey r;
      r.name = "realizations";
      r.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        const auto n = detail::parse_unsigned(v, key, line);
        if (n == 0) throw ConfigError(key, line, "constraint violation: need at least one realization");
        c.realizations = static_cast<std::size_t>(n);
      };
      r.get = [](const ScenarioConfig& c) { return std::to_string(c.realizations); };
      k.push_back(std::move(r));
    }
    {
      ConfigKey s;
      s.name = "seed";
      s.set = [](ScenarioConfig& c, std::string_view v, const std::string& key, std::size_t line) {
        c.seed = detail::parse_unsigned(v, key, line);
      };
      s.get = [](const ScenarioConfig& c) { return std::to_string(c.seed); };
      k.push_back(std::move(s));
    }
    k.push_back(detail::enum_key<CiMethod>("ci", S::Both, {{"normal", CiMethod::Normal}, {"exact", CiMethod::Exact}},
                                           [](ScenarioConfig& c) -> CiMethod& { return c.ci; }));
    return k;
  }();
  return keys;
}

inline const ConfigKey* find_config_key(std::string_view name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

inline bool key_applies(const ConfigKey& k, Setup s) noexcept {
  return k.scope == ConfigKey::Scope::Both || (k.scope == ConfigKey::Scope::Small) == (s == Setup::SmallDisaster);
}

// Assigns one key on an existing config (line 0 = not from a document).
inline void apply_config_value(ScenarioConfig& cfg, std::string_view key, std::string_view value, std::size_t line = 0) {
  const ConfigKey* k = find_config_key(key);
  const std::string name(key);
  if (k == nullptr) throw ConfigError(name, line, "unknown key");
  if (!key_applies(*k, cfg.setup))
    throw ConfigError(name, line,
                      std::string("setup mismatch: key does not apply to the ") + std::string(to_string(cfg.setup)) +
                          "-disaster setup");
  k->set(cfg, detail::trim(value), name, line);
}

inline void validate_config(const ScenarioConfig& cfg) {
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", 0, std::string("constraint violation: ") + e.what());
  }
}

// Parses a document; `overrides` (e.g. from command-line flags) win over
// document values and may set the setup.
inline ScenarioConfig parse_config(std::string_view text, const std::vector<std::pair<std::string, std::string>>& overrides = {}) {
  struct Entry {
    std::string value;
    std::size_t line;
  };
  std::map<std::string, Entry> doc;
  std::vector<std::string> order;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key(detail::trim(line.substr(0, eq)));
    if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
    if (find_config_key(key) == nullptr) throw ConfigError(key, line_no, "unknown key");
    if (doc.contains(key)) throw ConfigError(key, line_no, "duplicate key");
    doc[key] = {std::string(detail::trim(line.substr(eq + 1))), line_no};
    order.push_back(key);
  }
  for (const auto& [k, v] : overrides) {
    if (find_config_key(k) == nullptr) throw ConfigError(k, 0, "unknown key");
    if (!doc.contains(k)) order.push_back(k);
    doc[k] = {v, 0};
  }

  ScenarioConfig cfg;
  if (auto it = doc.find("setup"); it != doc.end()) apply_config_value(cfg, "setup", it->second.value, it->second.line);
  // Canonical order so e.g. r_d_m is known before cross-field checks.
  for (const auto& k : config_keys()) {
    if (k.name == "setup") continue;
    if (auto it = doc.find(k.name); it != doc.end()) apply_config_value(cfg, k.name, it->second.value, it->second.line);
  }
  validate_config(cfg);
  return cfg;
}

// Every key that applies to the config's setup, defaults included.
inline std::string render_config(const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& k : config_keys()) {
    if (!key_applies(k, cfg.setup) || !k.present(cfg)) continue;
    out += k.name;
    out += " = ";
    out += k.get(cfg);
    out += '\n';
  }
  return out;
}

inline bool configs_equal(const ScenarioConfig& a, const ScenarioConfig& b) { return render_config(a) == render_config(b); }

}  // namespace pdcsim
