#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

#include "pnr/error.hpp"
#include "pnr/planner.hpp"
#include "pnr/scenario.hpp"
#include "support/random_network.hpp"

using namespace pnr;

namespace {

const Scenario& seville() {
  static const Scenario s = load_scenario_file(fixtures::seville_path());
  return s;
}

const UserProfile& profile(const std::string& name) { return seville().profiles.at(name); }

std::map<std::string, PlanResult> by_id(const Plan& p) {
  std::map<std::string, PlanResult> out;
  for (const auto& r : p.ranking) out.emplace(r.parking, r);
  return out;
}

const std::map<std::string, double> kRushHour{{"1", 3}, {"2", 3}, {"5", 1}, {"6", 1}};

// o -> P+ with a fast arc into a dear slot and a slower detour into a cheap one.
MultimodalNetwork slot_priced_network() {
  NetworkBuilder b(TimeHorizon{5, 2});
  b.node("o", NodeKind::origin)
      .node("d", NodeKind::destination)
      .node("v", NodeKind::intermediate, Mode::car)
      .node("P+", NodeKind::park_entry)
      .node("P-", NodeKind::park_exit)
      .arc("o", "P+", Mode::car, 400, {100})
      .arc("o", "v", Mode::car, 400, {100})
      .arc("v", "P+", Mode::car, 200, {100})
      .arc("P-", "d", Mode::walk, 100, {100})
      .parking("1", "P+", "P-", 0.5, {4.0, 0.0}, {1, 1}, 1, 1, 1);
  return b.build();
}

}  // namespace

TEST(Planner, FastestTotalTimes) {
  const Plan p = plan(seville().network, profile("fastest"));
  const auto rows = by_id(p);
  const std::map<std::string, double> want{{"1", 22}, {"2", 20.5}, {"3", 20},
                                           {"4", 34}, {"5", 27},   {"6", 29.5}};
  for (const auto& [id, minutes] : want) EXPECT_EQ(rows.at(id).breakdown->total_minutes, minutes) << id;
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->parking, "3");
  EXPECT_EQ(p.best->breakdown->total, 20.0);
}

TEST(Planner, FastestLegs) {
  const auto rows = by_id(plan(seville().network, profile("fastest")));
  const PlanResult& r = rows.at("3");
  EXPECT_EQ(r.drive_leg->total_time(), 11.0);
  EXPECT_EQ(r.park_transit, 1.0);
  EXPECT_EQ(r.egress_leg->total_wait(), 2.0);
  EXPECT_EQ(r.egress_leg->total_time() - r.egress_leg->total_wait(), 6.0);
  EXPECT_EQ(r.arrival_instant,
            r.depart_instant + r.drive_leg->total_time() + r.park_transit + r.egress_leg->total_time());
}

TEST(Planner, FastestTotalPrices) {
  const auto rows = by_id(plan(seville().network, profile("fastest")));
  const std::map<std::string, double> want{{"1", 1.17}, {"2", 1.01}, {"3", 1.04},
                                           {"4", 1.19}, {"5", 1.09}, {"6", 0.85}};
  for (const auto& [id, price] : want) EXPECT_NEAR(rows.at(id).breakdown->total_price(), price, 1e-12) << id;
  const auto cheapest = std::min_element(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.second.breakdown->total_price() < b.second.breakdown->total_price();
  });
  EXPECT_EQ(cheapest->first, "6");
}

TEST(Planner, ReservationCosts) {
  const Plan p = plan(seville().network, profile("reservation"));
  const auto rows = by_id(p);
  const std::map<std::string, double> want{{"1", 5.33}, {"2", 4.91}, {"3", 4.83},
                                           {"4", 7.75}, {"5", 6.27}, {"6", 6.58}};
  for (const auto& [id, total] : want) EXPECT_NEAR(rows.at(id).breakdown->total, total, 0.01) << id;
  const CostBreakdown& b = *rows.at("3").breakdown;
  EXPECT_NEAR(b.time_component, 4.0, 0.01);
  EXPECT_NEAR(b.money_component, 0.83, 0.01);
  EXPECT_EQ(b.nonattr_component, 0.0);
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->parking, "3");
  EXPECT_NEAR(p.best->breakdown->total, 4.83, 0.01);
}

TEST(Planner, InformationCosts) {
  const Plan p = plan(seville().network, profile("info"));
  const auto rows = by_id(p);
  const std::map<std::string, double> want{{"1", 1.80}, {"2", 1.66}, {"3", 1.63},
                                           {"4", 2.26}, {"5", 1.61}, {"6", 1.67}};
  for (const auto& [id, total] : want) EXPECT_NEAR(rows.at(id).breakdown->total, total, 0.01) << id;
  const CostBreakdown& b = *rows.at("5").breakdown;
  EXPECT_NEAR(b.time_component, 1.08, 0.01);
  EXPECT_NEAR(b.money_component, 0.19, 0.01);
  EXPECT_NEAR(b.nonattr_component, 0.34, 0.01);
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->parking, "5");
  EXPECT_NEAR(p.best->breakdown->total, 1.61, 0.01);
}

TEST(Planner, BreakdownSumsExactly) {
  for (const auto& [name, prof] : seville().profiles)
    for (const auto& r : plan(seville().network, prof).ranking) {
      const CostBreakdown& b = *r.breakdown;
      EXPECT_EQ(b.total, b.time_component + b.money_component + b.nonattr_component);
      EXPECT_GE(b.time_component, 0.0);
      EXPECT_GE(b.money_component, 0.0);
      EXPECT_GE(b.nonattr_component, 0.0);
    }
}

TEST(Planner, RankingOrderedByTotalThenId) {
  const Plan p = plan(seville().network, profile("reservation"));
  std::vector<std::string> order;
  for (const auto& r : p.ranking) order.push_back(r.parking);
  EXPECT_EQ(order, (std::vector<std::string>{"3", "2", "1", "5", "6", "4"}));
}

TEST(Planner, LambdaAboveOneRejectsEverything) {
  UserProfile p = profile("info");
  p.lambda = 1.01;
  const Plan result = plan(seville().network, p);
  EXPECT_FALSE(result.best);
  ASSERT_EQ(result.ranking.size(), 6u);
  for (const auto& r : result.ranking) EXPECT_EQ(r.feasibility, Feasibility::below_lambda) << r.parking;
}

TEST(Planner, DeadlineViolationsAreNeverBest) {
  UserProfile p = profile("fastest");
  p.depart_min = 35.0;  // park 3 arrives at 55, park 2 at 55.5, the rest after 60
  const Plan result = plan(seville().network, p);
  const auto rows = by_id(result);
  EXPECT_EQ(rows.at("3").feasibility, Feasibility::ok);
  EXPECT_EQ(rows.at("4").feasibility, Feasibility::deadline_violated);
  ASSERT_TRUE(result.best);
  EXPECT_EQ(result.best->parking, "3");

  p.depart_min = 45.0;
  const Plan late = plan(seville().network, p);
  EXPECT_FALSE(late.best);
  for (const auto& r : late.ranking) EXPECT_EQ(r.feasibility, Feasibility::deadline_violated);
}

TEST(Planner, UnreachableFacilityHasNoCosts) {
  NetworkBuilder b(TimeHorizon{5, 1});
  b.node("o", NodeKind::origin)
      .node("d", NodeKind::destination)
      .node("P+", NodeKind::park_entry)
      .node("P-", NodeKind::park_exit)
      .node("Q+", NodeKind::park_entry)
      .node("Q-", NodeKind::park_exit)
      .arc("o", "P+", Mode::car, 100, {100})
      .arc("P-", "d", Mode::walk, 100, {100})
      .arc("Q-", "d", Mode::walk, 100, {100})
      .parking("1", "P+", "P-", 1, {0}, {1}, 1, 1, 1)
      .parking("2", "Q+", "Q-", 1, {0}, {1}, 1, 1, 1);
  const Plan p = plan(b.build(), profile("fastest"));
  const auto rows = by_id(p);
  EXPECT_EQ(rows.at("2").feasibility, Feasibility::unreachable);
  EXPECT_FALSE(rows.at("2").breakdown);
  EXPECT_EQ(p.ranking.back().parking, "2");
  EXPECT_EQ(p.best->parking, "1");
}

TEST(Planner, FareAwareEgressPicksCheaperContinuation) {
  // From the exit, walking takes 10 min for free, the bus 6 min for 2 EUR.
  NetworkBuilder b(TimeHorizon{5, 4});
  b.node("o", NodeKind::origin)
      .node("d", NodeKind::destination)
      .node("s", NodeKind::intermediate, Mode::bus, 2.0)
      .node("P+", NodeKind::park_entry)
      .node("P-", NodeKind::park_exit)
      .arc("o", "P+", Mode::car, 100, {100})
      .arc("P-", "d", Mode::walk, 1000, {100})
      .arc("P-", "s", Mode::bus, 500, {100}, {1})
      .arc("s", "d", Mode::bus, 0, {100})
      .parking("1", "P+", "P-", 1, {0}, {1}, 1, 1, 1);
  const auto net = b.build();
  UserProfile thrifty{0.1, 0.9, 0.0, {0, 0, 0, 1}, 0.0, 0.0};
  UserProfile hurried{0.9, 0.1, 0.0, {0, 0, 0, 1}, 0.0, 0.0};
  const auto cheap = price_parking(net, thrifty, net.parkings()[0]);
  const auto fast = price_parking(net, hurried, net.parkings()[0]);
  EXPECT_EQ(cheap.breakdown->fares, 0.0);
  EXPECT_EQ(cheap.breakdown->total_minutes, 12.0);
  EXPECT_EQ(fast.breakdown->fares, 2.0);
  EXPECT_EQ(fast.breakdown->total_minutes, 8.0);
  EXPECT_NEAR(cheap.breakdown->total, brute_force_oracle(net, thrifty)->breakdown->total, 1e-12);
  EXPECT_NEAR(fast.breakdown->total, brute_force_oracle(net, hurried)->breakdown->total, 1e-12);
}

TEST(Planner, EgressPrefersContinuationsWithinHorizon) {
  // Leaving the exit at 11.5: walking reaches d at 21.5, past the end at 20; the bus at 17.5.
  NetworkBuilder b(TimeHorizon{5, 4});
  b.node("o", NodeKind::origin)
      .node("d", NodeKind::destination)
      .node("s", NodeKind::intermediate, Mode::bus, 2.0)
      .node("P+", NodeKind::park_entry)
      .node("P-", NodeKind::park_exit)
      .arc("o", "P+", Mode::car, 100, {100})
      .arc("P-", "d", Mode::walk, 1000, {100})
      .arc("P-", "s", Mode::bus, 500, {100}, {1})
      .arc("s", "d", Mode::bus, 0, {100})
      .parking("1", "P+", "P-", 1, {0}, {1}, 1, 1, 1);
  const auto net = b.build();
  const UserProfile thrifty{0.0, 1.0, 0.0, {0, 0, 0, 1}, 0.0, 9.5};
  const Plan p = plan(net, thrifty);
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->arrival_instant, 17.5);
  EXPECT_EQ(p.best->breakdown->fares, 2.0);
  const auto truth = brute_force_oracle(net, thrifty);
  ASSERT_TRUE(truth);
  EXPECT_EQ(truth->breakdown->total, p.best->breakdown->total);

  const UserProfile early{0.0, 1.0, 0.0, {0, 0, 0, 1}, 0.0, 0.0};
  EXPECT_EQ(plan(net, early).best->breakdown->fares, 0.0);
}

TEST(Perturbation, EmptyIsIdentity) {
  const auto net = apply_perturbation(seville().network, {});
  EXPECT_EQ(net, seville().network);
}

TEST(Perturbation, LengthensDriveLegExactlyInEverySlot) {
  const auto net = apply_perturbation(seville().network, kRushHour);
  const TimeDependentRouter before(seville().network);
  const TimeDependentRouter after(net);
  for (const auto& [id, minutes] : kRushHour) {
    const NodeIndex entry = net.find_parking(id)->entry;
    for (int s = 0; s < net.horizon().num_slots; ++s) {
      const double t = s * net.horizon().slot_minutes;
      const auto a = before.earliest_arrival(*net.origin(), entry, t, drive_arc);
      const auto b = after.earliest_arrival(*net.origin(), entry, t, drive_arc);
      EXPECT_NEAR(b->total_time() - a->total_time(), minutes, 1e-12) << id << " slot " << s;
    }
  }
}

TEST(Perturbation, RushHourKeepsReservationChoice) {
  const Plan p = plan(apply_perturbation(seville().network, kRushHour), profile("reservation"));
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->parking, "3");
  EXPECT_NEAR(p.best->breakdown->total, 4.83, 0.01);
}

TEST(Perturbation, RushHourUnderInformationProfile) {
  // Park 5 gains alpha * 1 min = 0.04 and rises to 1.648, above park 3's
  // untouched 1.631, so the computed choice moves to park 3.
  const auto net = apply_perturbation(seville().network, kRushHour);
  const Plan p = plan(net, profile("info"));
  const auto rows = by_id(p);
  EXPECT_NEAR(rows.at("5").breakdown->total, 1.60816 + 0.04, 1e-9);
  EXPECT_NEAR(rows.at("3").breakdown->total, 1.631157, 1e-9);
  ASSERT_TRUE(p.best);
  EXPECT_EQ(p.best->parking, "3");
  EXPECT_EQ(brute_force_oracle(net, profile("info"))->parking, "3");
}

TEST(Perturbation, LargeDelayMovesChoiceAwayFromPark3) {
  const auto net = apply_perturbation(seville().network, {{"3", 60}});
  const Plan p = plan(net, profile("reservation"));
  ASSERT_TRUE(p.best);
  EXPECT_NE(p.best->parking, "3");
  const auto truth = brute_force_oracle(net, profile("reservation"));
  EXPECT_EQ(p.best->parking, truth->parking);
  EXPECT_NEAR(p.best->breakdown->total, truth->breakdown->total, 1e-9);
}

TEST(Perturbation, Errors) {
  try {
    apply_perturbation(seville().network, {{"42", 1}});
    FAIL() << "expected not_found";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_found);
  }
  try {
    apply_perturbation(seville().network, {{"1", -10}});
    FAIL() << "expected domain";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
  const auto faster = apply_perturbation(seville().network, {{"1", -1}});
  const auto rows = by_id(plan(faster, profile("fastest")));
  EXPECT_NEAR(rows.at("1").breakdown->total_minutes, 21.0, 1e-12);
}

TEST(Oracle, AgreesOnSeville) {
  for (const auto& [name, prof] : seville().profiles) {
    const auto c = fixtures::compare_with_oracle(seville().network, prof, 1e-9);
    EXPECT_TRUE(c.agree) << name << ": " << c.detail;
  }
  const auto truth = brute_force_oracle(seville().network, profile("info"));
  EXPECT_EQ(truth->parking, "5");
  EXPECT_NEAR(truth->breakdown->total, 1.61, 0.01);
}

TEST(Oracle, SingleParkingToy) {
  NetworkBuilder b(TimeHorizon{5, 2});
  b.node("o", NodeKind::origin)
      .node("d", NodeKind::destination)
      .node("P+", NodeKind::park_entry)
      .node("P-", NodeKind::park_exit)
      .arc("o", "P+", Mode::car, 300, {100})
      .arc("P-", "d", Mode::walk, 200, {100})
      .parking("only", "P+", "P-", 1, {0.5}, {1}, 1, 1, 1);
  const auto truth = brute_force_oracle(b.build(), profile("reservation"));
  ASSERT_TRUE(truth);
  EXPECT_EQ(truth->parking, "only");
  EXPECT_EQ(truth->breakdown->total_minutes, 6.0);
  EXPECT_DOUBLE_EQ(truth->breakdown->total, 0.2 * 6 + 0.8 * 0.5);
}

TEST(Oracle, RefusesLargeNetworks) {
  NetworkBuilder b(TimeHorizon{5, 1});
  b.node("o", NodeKind::origin).node("d", NodeKind::destination);
  for (int i = 0; i < 19; ++i) b.node("v" + std::to_string(i), NodeKind::intermediate, Mode::walk);
  try {
    brute_force_oracle(b.build(1), profile("fastest"));
    FAIL() << "expected size_guard";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::size_guard);
  }
}

TEST(Oracle, MatchesPlanOnRandomNetworks) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 600; ++i) {
    const auto net = fixtures::random_network(rng);
    const auto p = fixtures::random_profile(rng, net.horizon().end_minutes() / 2);
    const auto c = fixtures::compare_with_oracle(net, p, 1e-9);
    ASSERT_TRUE(c.agree) << "instance " << i << ": " << c.detail;
  }
}

TEST(Oracle, EveryBoardingMatchesExitArcOnlyOnValidNetworks) {
  // Stops carry one mode each, so an egress leg never changes mode after the exit arc.
  std::mt19937_64 rng(99);
  PlannerOptions every;
  every.fares = FareCounting::every_boarding;
  for (int i = 0; i < 200; ++i) {
    const auto net = fixtures::random_network(rng);
    const auto p = fixtures::random_profile(rng);
    const Plan a = plan(net, p);
    const Plan b = plan(net, p, every);
    ASSERT_EQ(a.best.has_value(), b.best.has_value());
    if (a.best) EXPECT_EQ(a.best->breakdown->total, b.best->breakdown->total);
    EXPECT_TRUE(fixtures::compare_with_oracle(net, p, 1e-9, every).agree);
  }
}

TEST(Oracle, SlotVaryingFeesAreOutsideTheDecomposition) {
  // Arriving early by the direct arc (slot 0, fee 4) is what the decomposition
  // prices; the detour reaches the entry in slot 1 where parking is free.
  const auto net = slot_priced_network();
  const UserProfile p{0.1, 0.9, 0.0, {0, 0, 0, 1}, 0.0, 0.0};
  const Plan planned = plan(net, p);
  const auto truth = brute_force_oracle(net, p);
  ASSERT_TRUE(planned.best && truth);
  EXPECT_EQ(planned.best->entry_slot, 0);
  EXPECT_EQ(truth->entry_slot, 1);
  EXPECT_LT(truth->breakdown->total, planned.best->breakdown->total);
}

TEST(Properties, ScalingWeightsPreservesRanking) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto net = fixtures::random_network(rng);
    const auto p = fixtures::random_profile(rng);
    const Plan base = plan(net, p);
    for (double c : {0.5, 2.0, 8.0, 3.0}) {
      UserProfile q = p;
      q.alpha *= c;
      q.beta *= c;
      q.gamma0 *= c;
      const Plan scaled = plan(net, q);
      ASSERT_EQ(base.ranking.size(), scaled.ranking.size());
      for (std::size_t j = 0; j < base.ranking.size(); ++j) {
        EXPECT_EQ(base.ranking[j].parking, scaled.ranking[j].parking) << "c=" << c;
        if (!base.ranking[j].breakdown) continue;
        EXPECT_NEAR(scaled.ranking[j].breakdown->total, c * base.ranking[j].breakdown->total,
                    1e-9 * std::max(1.0, c * base.ranking[j].breakdown->total));
      }
      EXPECT_EQ(base.best.has_value(), scaled.best.has_value());
      if (base.best) EXPECT_EQ(base.best->parking, scaled.best->parking);
    }
  }
}

TEST(Properties, LambdaFeasibilityIsMonotone) {
  std::mt19937_64 rng(6);
  for (int i = 0; i < 300; ++i) {
    const auto net = fixtures::random_network(rng);
    UserProfile p = fixtures::random_profile(rng);
    p.lambda = 0.0;
    auto previous = by_id(plan(net, p));
    for (double lambda : {0.125, 0.25, 0.5, 0.75, 1.0, 1.01}) {
      p.lambda = lambda;
      const auto now = by_id(plan(net, p));
      for (const auto& [id, r] : now) {
        const PlanResult& before = previous.at(id);
        if (r.feasible()) EXPECT_TRUE(before.feasible()) << id << " became feasible at " << lambda;
        if (r.breakdown && before.breakdown) EXPECT_EQ(r.breakdown->total, before.breakdown->total);
      }
      previous = now;
    }
  }
}

TEST(Properties, TimeOnlyProfileIsEarliestArrival) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    const auto net = fixtures::random_network(rng);
    UserProfile p = fixtures::random_profile(rng);
    p.alpha = 1.0;
    p.beta = 0.0;
    p.gamma0 = 0.0;
    p.gamma = {0, 0, 0, 1};
    const Plan result = plan(net, p);
    double fastest = std::numeric_limits<double>::infinity();
    for (const auto& r : result.ranking)
      if (r.feasible()) fastest = std::min(fastest, r.arrival_instant - r.depart_instant);
    if (!result.best) continue;
    EXPECT_EQ(result.best->arrival_instant - result.best->depart_instant, fastest);
  }
}

TEST(Properties, DeadlineNeverBestOnRandomNetworks) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto net = fixtures::random_network(rng);
    const auto p = fixtures::random_profile(rng, net.horizon().end_minutes());
    const Plan result = plan(net, p);
    for (const auto& r : result.ranking)
      if (r.breakdown && r.arrival_instant > net.horizon().end_minutes())
        EXPECT_EQ(r.feasibility, Feasibility::deadline_violated);
    if (result.best) EXPECT_LE(result.best->arrival_instant, net.horizon().end_minutes());
  }
}

TEST(Properties, AttractivenessMatchesEntrySlot) {
  const auto& net = seville().network;
  for (const auto& [name, prof] : seville().profiles)
    for (const auto& r : plan(net, prof).ranking)
      EXPECT_EQ(r.attractiveness,
                attractiveness(*net.find_parking(r.parking), r.entry_slot, prof, net.big_q()));
}
