#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnr/network.hpp"
#include "pnr/profile.hpp"
#include "pnr/router.hpp"

namespace pnr {

enum class Feasibility { ok, deadline_violated, below_lambda, unreachable };

std::string_view to_string(Feasibility f);

/// How public-transport fares are billed on the egress leg.
enum class FareCounting {
  exit_arc_only,  // fare of the node reached by the arc leaving the parking exit
  every_boarding, // additionally, the fare of every later node where the mode changes
};

struct PlannerOptions {
  FareCounting fares = FareCounting::exit_arc_only;
};

/// Weighted components of the generalized cost together with the raw
/// quantities they were computed from.
struct CostBreakdown {
  double time_component = 0.0;     // alpha * total minutes
  double money_component = 0.0;    // beta * (fee + fares)
  double nonattr_component = 0.0;  // gamma0 * (1 - attractiveness)
  double total = 0.0;

  double total_minutes = 0.0;
  double fee = 0.0;
  double fares = 0.0;

  double total_price() const { return fee + fares; }
};

struct PlanResult {
  std::string parking;
  std::optional<TimedPath> drive_leg;
  double park_transit = 0.0;
  std::optional<TimedPath> egress_leg;
  double depart_instant = 0.0;
  double arrival_instant = 0.0;
  int entry_slot = 0;
  double attractiveness = 0.0;
  std::optional<CostBreakdown> breakdown;  // absent iff unreachable
  Feasibility feasibility = Feasibility::unreachable;

  bool feasible() const { return feasibility == Feasibility::ok; }
};

struct Plan {
  std::optional<PlanResult> best;
  std::vector<PlanResult> ranking;  // by total (unreachable last), then facility id
};

/// Natural order on facility ids: numeric ids compare by value.
bool facility_id_less(std::string_view a, std::string_view b);

/// Prices the strategy origin -> k -> destination.
///
/// The drive leg is the earliest arrival at k's entry by private arcs. The
/// fee and attractiveness are read at the entry slot. The egress leg leaves
/// the exit after the transit: each arc leaving the exit is tried in turn and
/// continued by the earliest non-private route to the destination. Among
/// continuations arriving by the horizon end (all of them if none does), the
/// cheapest alpha*time + beta*fare one is kept.
PlanResult price_parking(const MultimodalNetwork& net, const UserProfile& p,
                         const ParkingFacility& k, const PlannerOptions& opts = {});

/// Same as above but reusing a router built for `net`.
PlanResult price_parking(const TimeDependentRouter& router, const MultimodalNetwork& net,
                         const UserProfile& p, const ParkingFacility& k,
                         const PlannerOptions& opts = {});

/// Minimum generalized-cost strategy over all facilities, plus the full ranking.
Plan plan(const MultimodalNetwork& net, const UserProfile& p, const PlannerOptions& opts = {});

/// Copy of `net` where every private arc into each named facility's entry is
/// slowed so it takes exactly `minutes` longer in every slot. Throws
/// Error(not_found) for unknown facilities and Error(domain) when a negative
/// delta would make an arc faster than instantaneous.
MultimodalNetwork apply_perturbation(const MultimodalNetwork& net,
                                     const std::map<std::string, double>& deltas);

/// Fare billed for an egress leg under the given counting rule.
double egress_fares(const MultimodalNetwork& net, const TimedPath& leg, FareCounting rule);

inline constexpr std::size_t kOracleMaxNodes = 20;

/// Independent ground truth: enumerates every simple origin -> destination
/// path, propagates time along it, and prices it term by term (travel and
/// wait minutes, fees on transit arcs, fares on arcs leaving parking exits,
/// non-attractiveness on arcs entering parking entries), keeping the cheapest
/// one that meets the deadline and the lambda floor. Refuses networks with
/// more than kOracleMaxNodes nodes (Error(size_guard)).
std::optional<PlanResult> brute_force_oracle(const MultimodalNetwork& net, const UserProfile& p,
                                             const PlannerOptions& opts = {});

}  // namespace pnr
