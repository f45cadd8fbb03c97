#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "brute_force.hpp"
#include "pdcsim/association.hpp"

using namespace pdcsim;

namespace {

const ChannelModel& default_channel() {
  static const ChannelModel c = ScenarioConfig::default_radio().channel;
  return c;
}

std::set<std::vector<Tier>> grammar(Setup s, std::vector<Tier> terminal) {
  const auto w = AdjacencyRules::for_setup(s).words(terminal);
  return {w.begin(), w.end()};
}

}  // namespace

TEST(AdjacencyRules, SmallGrammarWords) {
  using T = Tier;
  const std::set<std::vector<Tier>> expected{{T::User, T::TBS},
                                             {T::User, T::LAP, T::TBS},
                                             {T::User, T::MDRU, T::TBS},
                                             {T::User, T::MDRU, T::LAP, T::TBS}};
  EXPECT_EQ(grammar(Setup::SmallDisaster, {T::TBS}), expected);
  EXPECT_TRUE(AdjacencyRules::for_setup(Setup::SmallDisaster).is_acyclic());
}

TEST(AdjacencyRules, LargeGrammarWords) {
  using T = Tier;
  const std::set<std::vector<Tier>> expected{{T::User, T::TBS}, {T::User, T::HAP, T::TBS}, {T::User, T::HAP, T::SAT}};
  EXPECT_EQ(grammar(Setup::LargeDisaster, {T::TBS, T::SAT}), expected);
  EXPECT_TRUE(AdjacencyRules::for_setup(Setup::LargeDisaster).is_acyclic());
}

TEST(AdjacencyRules, CycleRejected) {
  AdjacencyRules r;
  r.allow(Tier::User, {Tier::MDRU});
  r.allow(Tier::MDRU, {Tier::LAP});
  EXPECT_THROW(r.allow(Tier::LAP, {Tier::MDRU}), InvalidArgument);
}

TEST(SelectPath, NearTbsBeatsZenithLap) {
  const Node lap{0, Tier::LAP, {0.0, 0.0, 200.0}, false};
  const Node tbs{0, Tier::TBS, {100.0, 0.0, 0.0}, true};
  const Realization r(Setup::SmallDisaster, {}, {lap, tbs});
  EXPECT_NEAR(default_channel().avg_received_power(r.node(1), r.user()), 1.584893192461114e-05, 1e-18);
  EXPECT_NEAR(default_channel().avg_received_power(r.node(0), r.user()), 5.303178018722846e-06, 1e-18);
  const PathSpec p = select_path(r, AdjacencyRules::for_setup(Setup::SmallDisaster), default_channel());
  ASSERT_EQ(p.hops.size(), 1u);
  EXPECT_EQ(p.hops[0], (Hop{1, kUserId, LinkRole::Access}));
  EXPECT_EQ(classify(p, r), PathType::UserTbs);
}

TEST(SelectPath, LargeNoTbsGoesThroughSatellite) {
  const Node hap{0, Tier::HAP, {0.0, 0.0, 10'000.0}, false};
  const Node sat{0, Tier::SAT, {0.0, 0.0, 5e5}, true};
  const Realization r(Setup::LargeDisaster, {300.0, 0.0, 0.0}, {hap, sat});
  const PathSpec p = select_path(r, AdjacencyRules::for_setup(Setup::LargeDisaster), default_channel());
  ASSERT_EQ(p.hops.size(), 2u);
  EXPECT_EQ(p.hops[0], (Hop{0, kUserId, LinkRole::Access}));
  EXPECT_EQ(p.hops[1], (Hop{1, 0, LinkRole::Backhaul}));
  EXPECT_EQ(classify(p, r), PathType::UserHapSat);
}

TEST(SelectPath, SmallNoTbsIsDeadEnd) {
  const Node lap{0, Tier::LAP, {0.0, 0.0, 200.0}, false};
  const Realization r(Setup::SmallDisaster, {}, {lap});
  const auto rules = AdjacencyRules::for_setup(Setup::SmallDisaster);
  EXPECT_THROW(select_path(r, rules, default_channel()), NoPathAvailable);
  EXPECT_FALSE(try_select_path(r, rules, default_channel()).has_value());
}

TEST(SelectPath, IdealLapTerminates) {
  const Node lap{0, Tier::LAP, {0.0, 0.0, 200.0}, true};
  const Realization r(Setup::SmallDisaster, {}, {lap});
  const PathSpec p = select_path(r, AdjacencyRules::for_setup(Setup::SmallDisaster), default_channel());
  EXPECT_EQ(classify(p, r), PathType::UserLap);
}

TEST(SelectPath, TiesGoToLowestId) {
  const Node a{0, Tier::TBS, {500.0, 0.0, 0.0}, true};
  const Node b{0, Tier::TBS, {-500.0, 0.0, 0.0}, true};
  const Node c{0, Tier::TBS, {0.0, 500.0, 0.0}, true};
  const Realization r(Setup::SmallDisaster, {}, {a, b, c});
  const PathSpec p = select_path(r, AdjacencyRules::for_setup(Setup::SmallDisaster), default_channel());
  EXPECT_EQ(p.hops[0].tx, 0u);
}

TEST(SelectPath, MdruRelayChain) {
  // MDRU next to the user, TBS far away: user-MDRU-TBS.
  const Node tbs{0, Tier::TBS, {5000.0, 0.0, 0.0}, true};
  const Node mdru{0, Tier::MDRU, {10.0, 0.0, 0.0}, false};
  const Realization r(Setup::SmallDisaster, {}, {tbs, mdru});
  const PathSpec p = select_path(r, AdjacencyRules::for_setup(Setup::SmallDisaster), default_channel());
  EXPECT_EQ(classify(p, r), PathType::UserMdruTbs);
  EXPECT_EQ(p.hops[0].role, LinkRole::Access);
  EXPECT_EQ(p.hops[1].role, LinkRole::Backhaul);
}

TEST(SelectPath, GreedyMatchesBruteForce) {
  std::size_t with_path = 0, ties = 0;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    const auto [cfg, r] = oracle_paths::micro_instance(s);
    ASSERT_LE(r.nodes().size(), 6u);
    const auto rules = AdjacencyRules::for_setup(cfg.setup);
    const auto greedy = try_select_path(r, rules, cfg.radio.channel);
    const auto brute = oracle_paths::brute_force_path(cfg, r, rules);
    ASSERT_EQ(greedy.has_value(), brute.has_value()) << "seed " << s;
    if (!greedy) continue;
    ++with_path;
    std::vector<NodeId> ids;
    for (const Hop& h : greedy->hops) ids.push_back(h.tx);
    ASSERT_EQ(ids, *brute) << "seed " << s;
    for (std::size_t i = 1; i < r.nodes().size(); ++i)
      if (r.nodes()[i].position == r.nodes()[i - 1].position) ++ties;
  }
  EXPECT_GT(with_path, 1000u);
  EXPECT_GT(ties, 10u);
}

TEST(SelectPath, PathsAreGrammarWordsWithValidRoles) {
  for (pdcsim::Setup s : {Setup::SmallDisaster, Setup::LargeDisaster}) {
    ScenarioConfig cfg;
    cfg.setup = s;
    cfg.n_m = 30;
    cfg.r_d = 5000.0;
    const auto rules = AdjacencyRules::for_setup(s);
    const auto words = rules.words(std::vector<Tier>{Tier::TBS, Tier::SAT});
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      RandomStream rng(seed);
      const Realization r = build_realization(cfg, rng);
      const auto p = try_select_path(r, rules, cfg.radio.channel);
      if (!p) continue;
      const auto tiers = tier_sequence(*p, r);
      EXPECT_NE(std::find(words.begin(), words.end(), tiers), words.end());
      EXPECT_EQ(p->hops.front().rx, kUserId);
      for (std::size_t k = 0; k < p->hops.size(); ++k) {
        EXPECT_EQ(p->hops[k].role, k == 0 ? LinkRole::Access : LinkRole::Backhaul);
        if (k > 0) {
          EXPECT_EQ(p->hops[k].rx, p->hops[k - 1].tx);
        }
      }
      EXPECT_TRUE(r.node(p->hops.back().tx).core_connected);
    }
  }
}

TEST(SelectPath, ScaleInvariantInTransmitPower) {
  for (pdcsim::Setup s : {Setup::SmallDisaster, Setup::LargeDisaster}) {
    ScenarioConfig cfg;
    cfg.setup = s;
    cfg.n_m = 20;
    cfg.r_d = 5000.0;
    const auto rules = AdjacencyRules::for_setup(s);
    for (double k : {1e-3, 0.5, 7.0, 1e4}) {
      ChannelModel scaled = cfg.radio.channel;
      for (auto& t : scaled.tiers) t.tx_power *= k;
      for (std::uint64_t seed = 0; seed < 50; ++seed) {
        RandomStream rng(seed);
        const Realization r = build_realization(cfg, rng);
        EXPECT_EQ(try_select_path(r, rules, cfg.radio.channel), try_select_path(r, rules, scaled));
      }
    }
  }
}

TEST(PathShares, Counting) {
  std::vector<std::optional<PathType>> v{PathType::UserTbs, PathType::UserTbs, PathType::UserTbs, PathType::UserHapSat};
  const PathShares s = path_share_histogram(v);
  EXPECT_DOUBLE_EQ(s[PathType::UserTbs], 0.75);
  EXPECT_DOUBLE_EQ(s[PathType::UserHapSat], 0.25);
  EXPECT_DOUBLE_EQ(s.outage, 0.0);
}

TEST(PathShares, AllOutage) {
  std::vector<std::optional<PathType>> v(5);
  EXPECT_DOUBLE_EQ(path_share_histogram(v).outage, 1.0);
}

TEST(PathShares, EmptyThrows) {
  EXPECT_THROW(path_share_histogram({}), InvalidArgument);
}

TEST(PathShares, SumToOne) {
  RandomStream rng(3);
  std::vector<std::optional<PathType>> v;
  for (int i = 0; i < 997; ++i) {
    const auto k = rng() % (kPathTypeCount + 1);
    v.push_back(k == kPathTypeCount ? std::nullopt : std::optional(kAllPathTypes[k]));
  }
  const PathShares s = path_share_histogram(v);
  double sum = s.outage;
  for (double x : s.by_type) sum += x;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(PathType, NamesRoundTrip) {
  for (PathType p : kAllPathTypes) {
    std::vector<Tier> tiers;
    std::string name(to_string(p));
    std::size_t pos = 0;
    while (pos <= name.size()) {
      const auto us = name.find('_', pos);
      tiers.push_back(*tier_from_string(name.substr(pos, us == std::string::npos ? std::string::npos : us - pos)));
      pos = us == std::string::npos ? name.size() + 1 : us + 1;
    }
    EXPECT_EQ(path_type_of(tiers), p);
  }
}
