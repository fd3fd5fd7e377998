// Exhaustive ground truth for the planner. Deliberately shares no search or
// pricing code with price_parking / TimeDependentRouter: time propagation,
// slot lookup and every objective term are evaluated here directly.

#include <algorithm>
#include <cmath>

#include "pnr/error.hpp"
#include "pnr/planner.hpp"

namespace pnr {

namespace {

int slot_at(double instant, const TimeHorizon& h) {
  const double s = std::floor(instant / h.slot_minutes);
  return static_cast<int>(std::min(s, static_cast<double>(h.num_slots - 1)));
}

struct Candidate {
  PlanResult result;
  std::vector<ArcIndex> arcs;
};

bool candidate_less(const Candidate& a, const Candidate& b) {
  const double ta = a.result.breakdown->total;
  const double tb = b.result.breakdown->total;
  if (ta != tb) return ta < tb;
  if (a.result.parking != b.result.parking) return facility_id_less(a.result.parking, b.result.parking);
  if (a.result.arrival_instant != b.result.arrival_instant)
    return a.result.arrival_instant < b.result.arrival_instant;
  if (a.arcs.size() != b.arcs.size()) return a.arcs.size() < b.arcs.size();
  return a.arcs < b.arcs;
}

class Enumerator {
 public:
  Enumerator(const MultimodalNetwork& net, const UserProfile& p, const PlannerOptions& opts)
      : net_(net), p_(p), opts_(opts), on_path_(net.nodes().size(), false) {}

  std::optional<PlanResult> run(NodeIndex origin, NodeIndex destination) {
    destination_ = destination;
    on_path_[origin] = true;
    dfs(origin, p_.depart_min);
    if (!best_) return std::nullopt;
    return best_->result;
  }

 private:
  void dfs(NodeIndex v, double now) {
    if (v == destination_) {
      price(now);
      return;
    }
    for (ArcIndex a : net_.out_arcs(v)) {
      const Arc& arc = net_.arc(a);
      if (on_path_[arc.to]) continue;
      const auto s = static_cast<std::size_t>(slot_at(now, net_.horizon()));
      const double wait = arc.waits.empty() ? 0.0 : arc.waits[s];
      const double travel = arc.length_m == 0.0 ? 0.0 : arc.length_m / arc.speeds[s];
      steps_.push_back(TimedStep{a, static_cast<int>(s), now, wait, now + wait + travel});
      on_path_[arc.to] = true;
      dfs(arc.to, now + wait + travel);
      on_path_[arc.to] = false;
      steps_.pop_back();
    }
  }

  const ParkingFacility* facility_entered_at(NodeIndex entry) const {
    for (const auto& k : net_.parkings())
      if (k.entry == entry) return &k;
    return nullptr;
  }

  double attractiveness_of(const ParkingFacility& k, int slot) const {
    const auto& g = p_.gamma;
    return (g[0] * k.q1[static_cast<std::size_t>(slot)] + g[1] * static_cast<double>(k.q2) +
            g[2] * static_cast<double>(k.q3) + g[3] * static_cast<double>(k.q4)) /
           static_cast<double>(net_.big_q());
  }

  void price(double arrival) {
    double minutes = 0.0;
    double fee = 0.0;
    double fares = 0.0;
    double nonattr_sum = 0.0;
    double attr_sum = 0.0;
    const ParkingFacility* chosen = nullptr;
    std::size_t transit_step = steps_.size();
    int entry_slot = 0;
    Mode previous_mode = Mode::car;

    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const TimedStep& s = steps_[i];
      const Arc& arc = net_.arc(s.arc);
      const NodeKind tail = net_.node(arc.from).kind;
      const NodeKind head = net_.node(arc.to).kind;

      // Travel l/v for every arc, waits on arcs leaving a parking exit.
      minutes += s.exit_instant - s.entry_instant - s.wait;
      if (tail == NodeKind::park_exit) minutes += s.wait;

      if (head == NodeKind::park_entry) {
        if (const ParkingFacility* k = facility_entered_at(arc.to)) {
          const int slot = slot_at(s.exit_instant, net_.horizon());
          const double a = attractiveness_of(*k, slot);
          attr_sum += a;
          nonattr_sum += 1.0 - a;
        }
      }
      if (tail == NodeKind::park_entry && head == NodeKind::park_exit) {
        for (const auto& k : net_.parkings()) {
          if (k.entry == arc.from && k.exit == arc.to) {
            fee += k.fees[static_cast<std::size_t>(s.entry_slot)];
            if (chosen == nullptr) {
              chosen = &k;
              transit_step = i;
              entry_slot = s.entry_slot;
            }
          }
        }
      }
      if (tail == NodeKind::park_exit) {
        fares += net_.node(arc.to).boarding_fare;
      } else if (opts_.fares == FareCounting::every_boarding && i > 0 && transit_step < i &&
                 arc.mode != previous_mode) {
        fares += net_.node(arc.to).boarding_fare;
      }
      previous_mode = arc.mode;
    }
    if (chosen == nullptr) return;

    // Arrival bound and minimum attractiveness.
    if (arrival > net_.horizon().end_minutes()) return;
    if (attr_sum < p_.lambda) return;

    Candidate c;
    PlanResult& r = c.result;
    r.parking = chosen->id;
    r.depart_instant = p_.depart_min;
    r.arrival_instant = arrival;
    r.entry_slot = entry_slot;
    r.attractiveness = attr_sum;
    r.feasibility = Feasibility::ok;

    TimedPath drive;
    drive.depart_instant = p_.depart_min;
    drive.steps.assign(steps_.begin(), steps_.begin() + static_cast<std::ptrdiff_t>(transit_step));
    drive.arrival_instant = steps_[transit_step].entry_instant;
    r.park_transit = steps_[transit_step].exit_instant - steps_[transit_step].entry_instant;
    TimedPath egress;
    egress.depart_instant = steps_[transit_step].exit_instant;
    egress.steps.assign(steps_.begin() + static_cast<std::ptrdiff_t>(transit_step) + 1, steps_.end());
    egress.arrival_instant = arrival;
    r.drive_leg = std::move(drive);
    r.egress_leg = std::move(egress);

    CostBreakdown b;
    b.total_minutes = minutes;
    b.fee = fee;
    b.fares = fares;
    b.time_component = p_.alpha * minutes;
    b.money_component = p_.beta * (fee + fares);
    b.nonattr_component = p_.gamma0 * nonattr_sum;
    b.total = b.time_component + b.money_component + b.nonattr_component;
    r.breakdown = b;

    for (const auto& s : steps_) c.arcs.push_back(s.arc);
    if (!best_ || candidate_less(c, *best_)) best_ = std::move(c);
  }

  const MultimodalNetwork& net_;
  const UserProfile& p_;
  const PlannerOptions& opts_;
  std::vector<bool> on_path_;
  std::vector<TimedStep> steps_;
  NodeIndex destination_ = kNoNode;
  std::optional<Candidate> best_;
};

}  // namespace

std::optional<PlanResult> brute_force_oracle(const MultimodalNetwork& net, const UserProfile& p,
                                             const PlannerOptions& opts) {
  if (net.nodes().size() > kOracleMaxNodes)
    throw Error(Errc::size_guard, "brute_force_oracle: network has " +
                                      std::to_string(net.nodes().size()) + " nodes, limit is " +
                                      std::to_string(kOracleMaxNodes));
  if (net.big_q() <= 0) throw Error(Errc::domain, "brute_force_oracle: Q must be positive");
  const auto origin = net.origin();
  const auto destination = net.destination();
  if (!origin || !destination) throw Error(Errc::domain, "network lacks an origin or destination");
  return Enumerator(net, p, opts).run(*origin, *destination);
}

}  // namespace pnr
