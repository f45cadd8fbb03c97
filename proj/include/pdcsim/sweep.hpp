#pragma once

// Cartesian parameter sweeps over configuration keys.

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pdcsim/config.hpp"
#include "pdcsim/errors.hpp"
#include "pdcsim/montecarlo.hpp"

namespace pdcsim {

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

struct SweepRecord {
  ScenarioConfig config;  // fully resolved, seed = this point's seed
  std::vector<std::pair<std::string, std::string>> assignment;  // canonical axis values
  CoverageEstimate estimate;
};

constexpr std::uint64_t fnv1a64(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) noexcept {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// A grid point's seed depends only on the base seed and its own canonical
// axis values, so adding values to an axis leaves existing points untouched.
inline std::uint64_t grid_point_seed(std::uint64_t base_seed, const std::vector<std::pair<std::string, std::string>>& assignment) {
  if (assignment.empty()) return base_seed;
  std::string canon;
  for (const auto& [k, v] : assignment) {
    canon += k;
    canon += '=';
    canon += v;
    canon += ';';
  }
  return substream_seed(base_seed, fnv1a64(canon));
}

struct GridPoint {
  ScenarioConfig config;
  std::vector<std::pair<std::string, std::string>> assignment;
};

// Expands the grid in canonical order (first axis outermost) and validates
// every point before anything runs.
inline std::vector<GridPoint> expand_grid(const ScenarioConfig& base, const std::vector<SweepAxis>& axes) {
  std::set<std::string> seen;
  for (const auto& axis : axes) {
    const ConfigKey* k = find_config_key(axis.key);
    if (k == nullptr) throw ConfigError(axis.key, 0, "invalid axis: unknown key");
    if (axis.key == "seed") throw ConfigError(axis.key, 0, "invalid axis: seeds are derived per grid point");
    if (!seen.insert(axis.key).second) throw ConfigError(axis.key, 0, "invalid axis: repeated");
    if (axis.values.empty()) throw ConfigError(axis.key, 0, "invalid axis: no values");
  }

  std::size_t total = 1;
  for (const auto& axis : axes) total *= axis.values.size();

  std::vector<GridPoint> points;
  points.reserve(total);
  std::vector<std::size_t> idx(axes.size());
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t a = axes.size(); a-- > 0;) {
      idx[a] = rest % axes[a].values.size();
      rest /= axes[a].values.size();
    }
    GridPoint p{base, {}};
    // "setup" must land first so scope checks see the right setup.
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (axes[a].key == "setup") apply_config_value(p.config, "setup", axes[a].values[idx[a]]);
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (axes[a].key != "setup") apply_config_value(p.config, axes[a].key, axes[a].values[idx[a]]);
    validate_config(p.config);
    for (const auto& axis : axes) p.assignment.emplace_back(axis.key, find_config_key(axis.key)->get(p.config));
    p.config.seed = grid_point_seed(base.seed, p.assignment);
    points.push_back(std::move(p));
  }

  std::set<std::vector<std::pair<std::string, std::string>>> unique;
  for (const auto& p : points)
    if (!unique.insert(p.assignment).second) throw ConfigError("", 0, "invalid axis: duplicate grid point");
  return points;
}

inline std::vector<SweepRecord> run_sweep(const ScenarioConfig& base, const std::vector<SweepAxis>& axes,
                                          std::size_t threads = 1) {
  std::vector<SweepRecord> out;
  for (auto& p : expand_grid(base, axes)) {
    CoverageEstimate e = estimate_coverage(p.config, threads);
    out.push_back({std::move(p.config), std::move(p.assignment), std::move(e)});
  }
  return out;
}

struct OptimalMdruCount {
  std::size_t n_m_star = 0;
  double p_at_star = 0.0;
};

// Argmax of coverage over n_m; ties go to the smaller n_m.
inline OptimalMdruCount optimal_n_m(std::span<const SweepRecord> records) {
  if (records.empty()) throw InvalidArgument("optimal_n_m: empty input");
  auto signature = [](ScenarioConfig c) {
    c.n_m = 0;
    c.seed = 0;
    return render_config(c);
  };
  const std::string ref = signature(records.front().config);
  OptimalMdruCount best{records.front().config.n_m, records.front().estimate.p_hat};
  for (const auto& r : records) {
    if (r.config.setup != Setup::SmallDisaster) throw InvalidArgument("optimal_n_m: records must be small-disaster");
    if (signature(r.config) != ref) throw InvalidArgument("optimal_n_m: records differ in more than n_m");
    const double p = r.estimate.p_hat;
    if (p > best.p_at_star || (p == best.p_at_star && r.config.n_m < best.n_m_star)) best = {r.config.n_m, p};
  }
  return best;
}

// Default grids for the small- and large-disaster studies.
inline std::vector<SweepAxis> small_disaster_axes() {
  return {{"r_d_m", {"500", "1000", "5000", "10000"}}, {"n_m", {"0", "25", "50", "100", "200", "400", "800"}}};
}

inline std::vector<SweepAxis> large_disaster_axes() {
  return {{"r_d_m", {"1000", "5000", "10000", "15000", "20000"}},
          {"h_h_m", {"10000", "20000"}},
          {"h_s_m", {"500000", "1500000"}},
          {"satellite", {"true", "false"}}};
}

}  // namespace pdcsim
