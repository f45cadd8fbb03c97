#pragma once

// Seeded Monte Carlo coverage estimation.
//
// Realization i draws from the sub-stream substream_seed(master_seed, i), and
// the reduction is an integer sum, so the estimate is a pure function of the
// configuration whatever the thread count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

#include <boost/math/distributions/beta.hpp>

#include "pdcsim/association.hpp"
#include "pdcsim/scenario.hpp"
#include "pdcsim/sinr.hpp"

namespace pdcsim {

struct CoverageEstimate {
  double p_hat = 0.0;
  double ci95_half_width = 0.0;
  double ci95_low = 0.0;
  double ci95_high = 0.0;
  std::uint64_t n_realizations = 0;
  std::uint64_t covered = 0;
  PathCounts path_counts{};
  PathShares path_shares{};
  std::uint64_t master_seed = 0;

  // Binomial standard error of p_hat.
  double std_error() const noexcept {
    return std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_realizations));
  }

  friend bool operator==(const CoverageEstimate&, const CoverageEstimate&) = default;
};

// Outcome of one trial.
struct TrialOutcome {
  std::optional<PathType> path;
  bool covered = false;
};

inline TrialOutcome run_trial(const ScenarioConfig& cfg, const AdjacencyRules& rules, std::uint64_t trial_seed) {
  RandomStream rng(trial_seed);
  const Realization real = build_realization(cfg, rng);
  const auto path = try_select_path(real, rules, cfg.radio.channel);
  if (!path) return {};
  TrialOutcome out;
  out.path = classify(*path, real);
  out.covered = path_covered(*path, real, cfg.radio, cfg.interference, cfg.tau_access, cfg.tau_backhaul, cfg.noise);
  return out;
}

inline std::size_t resolve_threads(std::size_t requested) noexcept {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

inline void fill_interval(CoverageEstimate& e, CiMethod method) {
  const double n = static_cast<double>(e.n_realizations);
  e.p_hat = static_cast<double>(e.covered) / n;
  if (method == CiMethod::Normal) {
    e.ci95_half_width = 1.96 * std::sqrt(e.p_hat * (1.0 - e.p_hat) / n);
    e.ci95_low = std::max(0.0, e.p_hat - e.ci95_half_width);
    e.ci95_high = std::min(1.0, e.p_hat + e.ci95_half_width);
    return;
  }
  // Clopper-Pearson.
  const double k = static_cast<double>(e.covered);
  const double alpha = 0.05;
  e.ci95_low = e.covered == 0 ? 0.0 : boost::math::quantile(boost::math::beta_distribution<>(k, n - k + 1), alpha / 2);
  e.ci95_high = e.covered == e.n_realizations
                    ? 1.0
                    : boost::math::quantile(boost::math::beta_distribution<>(k + 1, n - k), 1 - alpha / 2);
  e.ci95_half_width = 0.5 * (e.ci95_high - e.ci95_low);
}

// `threads` = 0 means one per hardware thread.
inline CoverageEstimate estimate_coverage(const ScenarioConfig& cfg, std::size_t threads = 1) {
  cfg.validate();
  const AdjacencyRules rules = AdjacencyRules::for_setup(cfg.setup);
  const std::uint64_t n = cfg.realizations;
  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), n);

  struct Tally {
    std::uint64_t covered = 0;
    PathCounts paths{};
  };
  std::vector<Tally> tallies(workers);
  std::vector<std::exception_ptr> errors(workers);

  auto work = [&](std::size_t w) {
    try {
      Tally& t = tallies[w];
      for (std::uint64_t i = w; i < n; i += workers) {
        const TrialOutcome o = run_trial(cfg, rules, substream_seed(cfg.seed, i));
        t.paths.add(o.path);
        t.covered += o.covered ? 1 : 0;
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  CoverageEstimate est;
  est.n_realizations = n;
  est.master_seed = cfg.seed;
  for (const Tally& t : tallies) {
    est.covered += t.covered;
    est.path_counts += t.paths;
  }
  est.path_shares = to_shares(est.path_counts);
  fill_interval(est, cfg.ci);
  return est;
}

}  // namespace pdcsim
