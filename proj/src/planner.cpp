#include "pnr/planner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "pnr/error.hpp"

namespace pnr {

std::string_view to_string(Feasibility f) {
  switch (f) {
    case Feasibility::ok: return "Ok";
    case Feasibility::deadline_violated: return "DeadlineViolated";
    case Feasibility::below_lambda: return "BelowLambda";
    case Feasibility::unreachable: return "Unreachable";
  }
  return "?";
}

bool facility_id_less(std::string_view a, std::string_view b) {
  auto numeric = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  if (numeric(a) && numeric(b)) {
    auto strip = [](std::string_view s) {
      const auto first = s.find_first_not_of('0');
      return first == std::string_view::npos ? std::string_view("0") : s.substr(first);
    };
    const auto x = strip(a);
    const auto y = strip(b);
    if (x.size() != y.size()) return x.size() < y.size();
    if (x != y) return x < y;
  }
  return a < b;
}

double egress_fares(const MultimodalNetwork& net, const TimedPath& leg, FareCounting rule) {
  double fares = 0.0;
  for (std::size_t i = 0; i < leg.steps.size(); ++i) {
    const Arc& arc = net.arc(leg.steps[i].arc);
    const bool leaves_exit = net.node(arc.from).kind == NodeKind::park_exit;
    const bool boards = rule == FareCounting::every_boarding && i > 0 &&
                        net.arc(leg.steps[i - 1].arc).mode != arc.mode;
    if (leaves_exit || boards) fares += net.node(arc.to).boarding_fare;
  }
  return fares;
}

namespace {

struct EgressChoice {
  TimedPath leg;
  double fares = 0.0;
  double score = 0.0;
  bool on_time = false;
};

// Legs meeting the horizon end beat late ones, then lower score.
bool better_egress(const EgressChoice& a, const EgressChoice& b) {
  if (a.on_time != b.on_time) return a.on_time;
  if (a.score != b.score) return a.score < b.score;
  if (a.leg.arrival_instant != b.leg.arrival_instant)
    return a.leg.arrival_instant < b.leg.arrival_instant;
  if (a.leg.steps.size() != b.leg.steps.size()) return a.leg.steps.size() < b.leg.steps.size();
  return a.leg.arc_sequence() < b.leg.arc_sequence();
}

std::optional<EgressChoice> best_egress(const TimeDependentRouter& router,
                                        const MultimodalNetwork& net, const UserProfile& p,
                                        NodeIndex exit, NodeIndex destination, double start,
                                        FareCounting fares) {
  std::optional<EgressChoice> best;
  for (ArcIndex a : net.out_arcs(exit)) {
    if (!egress_arc(net, a)) continue;
    const Traversal first = arc_traversal(net.arc(a), start, net.horizon());
    EgressChoice c;
    c.leg.depart_instant = start;
    c.leg.steps.push_back(TimedStep{a, first.entry_slot, start, first.wait, first.exit_instant});
    const NodeIndex head = net.arc(a).to;
    if (head == destination) {
      c.leg.arrival_instant = first.exit_instant;
    } else {
      auto rest = router.earliest_arrival(head, destination, first.exit_instant, egress_arc);
      if (!rest) continue;
      c.leg.steps.insert(c.leg.steps.end(), rest->steps.begin(), rest->steps.end());
      c.leg.arrival_instant = rest->arrival_instant;
    }
    c.fares = egress_fares(net, c.leg, fares);
    c.score = p.alpha * c.leg.arrival_instant + p.beta * c.fares;
    c.on_time = c.leg.arrival_instant <= net.horizon().end_minutes();
    if (!best || better_egress(c, *best)) best = std::move(c);
  }
  return best;
}

}  // namespace

PlanResult price_parking(const MultimodalNetwork& net, const UserProfile& p,
                         const ParkingFacility& k, const PlannerOptions& opts) {
  const TimeDependentRouter router(net);
  return price_parking(router, net, p, k, opts);
}

PlanResult price_parking(const TimeDependentRouter& router, const MultimodalNetwork& net,
                         const UserProfile& p, const ParkingFacility& k,
                         const PlannerOptions& opts) {
  const auto origin = net.origin();
  const auto destination = net.destination();
  if (!origin || !destination) throw Error(Errc::domain, "network lacks an origin or destination");

  PlanResult r;
  r.parking = k.id;
  r.depart_instant = p.depart_min;
  r.arrival_instant = p.depart_min;
  r.feasibility = Feasibility::unreachable;

  const auto transit = net.transit_arc(k);
  if (!transit) return r;

  r.drive_leg = router.earliest_arrival(*origin, k.entry, p.depart_min, drive_arc);
  if (!r.drive_leg) return r;

  const double entry_instant = r.drive_leg->arrival_instant;
  const Traversal inside = arc_traversal(net.arc(*transit), entry_instant, net.horizon());
  r.entry_slot = inside.entry_slot;
  r.park_transit = inside.exit_instant - entry_instant;
  r.attractiveness = attractiveness(k, r.entry_slot, p, net.big_q());

  auto egress = best_egress(router, net, p, k.exit, *destination, inside.exit_instant, opts.fares);
  if (!egress) return r;
  r.egress_leg = std::move(egress->leg);
  r.arrival_instant = r.egress_leg->arrival_instant;

  CostBreakdown b;
  b.total_minutes = r.arrival_instant - r.depart_instant;
  b.fee = k.fees.at(static_cast<std::size_t>(r.entry_slot));
  b.fares = egress->fares;
  b.time_component = p.alpha * b.total_minutes;
  b.money_component = p.beta * (b.fee + b.fares);
  b.nonattr_component = p.gamma0 * (1.0 - r.attractiveness);
  b.total = b.time_component + b.money_component + b.nonattr_component;
  r.breakdown = b;

  if (r.arrival_instant > net.horizon().end_minutes())
    r.feasibility = Feasibility::deadline_violated;
  else if (r.attractiveness < p.lambda)
    r.feasibility = Feasibility::below_lambda;
  else
    r.feasibility = Feasibility::ok;
  return r;
}

Plan plan(const MultimodalNetwork& net, const UserProfile& p, const PlannerOptions& opts) {
  const TimeDependentRouter router(net);
  Plan out;
  out.ranking.reserve(net.parkings().size());
  for (const auto& k : net.parkings()) out.ranking.push_back(price_parking(router, net, p, k, opts));

  auto total = [](const PlanResult& r) {
    return r.breakdown ? r.breakdown->total : std::numeric_limits<double>::infinity();
  };
  std::stable_sort(out.ranking.begin(), out.ranking.end(),
                   [&](const PlanResult& a, const PlanResult& b) {
                     if (total(a) != total(b)) return total(a) < total(b);
                     return facility_id_less(a.parking, b.parking);
                   });
  for (const auto& r : out.ranking) {
    if (r.feasible()) {
      out.best = r;
      break;
    }
  }
  return out;
}

MultimodalNetwork apply_perturbation(const MultimodalNetwork& net,
                                     const std::map<std::string, double>& deltas) {
  std::vector<Arc> arcs = net.arcs();
  for (const auto& [id, minutes] : deltas) {
    const ParkingFacility* k = net.find_parking(id);
    if (k == nullptr) throw Error(Errc::not_found, "unknown facility '" + id + "'");
    if (!std::isfinite(minutes)) throw Error(Errc::domain, "perturbation must be finite");
    if (minutes == 0.0) continue;
    for (ArcIndex a : net.in_arcs(k->entry)) {
      Arc& arc = arcs[a];
      if (arc.role != ArcRole::travel) continue;
      if (arc.length_m == 0.0) {
        if (minutes < 0.0)
          throw Error(Errc::domain, "cannot shorten an instantaneous arc into facility " + id);
        arc.length_m = minutes;
        std::fill(arc.speeds.begin(), arc.speeds.end(), 1.0);
        continue;
      }
      for (double& speed : arc.speeds) {
        const double slowed = arc.length_m / speed + minutes;
        if (!(slowed > 0.0))
          throw Error(Errc::domain, "perturbation makes an arc into facility " + id +
                                        " non-positive in duration");
        speed = arc.length_m / slowed;
      }
    }
  }
  return MultimodalNetwork(net.nodes(), std::move(arcs), net.parkings(), net.horizon(), net.big_q());
}

}  // namespace pnr
