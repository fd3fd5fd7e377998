#include "pnr/router.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <memory>
#include <queue>

#include "pnr/error.hpp"

namespace pnr {

Traversal arc_traversal(const Arc& arc, double entry_instant, const TimeHorizon& horizon) {
  const SlotLookup slot = slot_of(entry_instant, horizon);
  const auto s = static_cast<std::size_t>(slot.slot);
  Traversal t;
  t.entry_slot = slot.slot;
  t.clamped = slot.clamped;
  t.wait = s < arc.waits.size() ? arc.waits[s] : 0.0;
  const double travel = arc.length_m == 0.0 ? 0.0 : arc.length_m / arc.speeds.at(s);
  t.exit_instant = entry_instant + t.wait + travel;
  return t;
}

bool is_fifo(const Arc& arc, const TimeHorizon& horizon) {
  double previous = 0.0;
  for (int s = 0; s < horizon.num_slots; ++s) {
    const auto i = static_cast<std::size_t>(s);
    const double wait = i < arc.waits.size() ? arc.waits[i] : 0.0;
    const double travel = arc.length_m == 0.0 ? 0.0 : arc.length_m / arc.speeds.at(i);
    const double duration = wait + travel;
    if (s > 0 && duration < previous) return false;
    previous = duration;
  }
  return true;
}

double TimedPath::total_wait() const {
  double w = 0.0;
  for (const auto& s : steps) w += s.wait;
  return w;
}

std::vector<ArcIndex> TimedPath::arc_sequence() const {
  std::vector<ArcIndex> seq;
  seq.reserve(steps.size());
  for (const auto& s : steps) seq.push_back(s.arc);
  return seq;
}

bool drive_arc(const MultimodalNetwork& net, ArcIndex a) {
  const Arc& arc = net.arc(a);
  return arc.role == ArcRole::travel && is_private(arc.mode);
}

bool egress_arc(const MultimodalNetwork& net, ArcIndex a) {
  const Arc& arc = net.arc(a);
  return arc.role == ArcRole::travel && !is_private(arc.mode);
}

namespace {

struct Label {
  double arrival = 0.0;
  std::vector<TimedStep> steps;
};

// Strict order: earlier arrival, then fewer arcs, then smaller arc sequence.
bool precedes(const Label& a, const Label& b) {
  if (a.arrival != b.arrival) return a.arrival < b.arrival;
  if (a.steps.size() != b.steps.size()) return a.steps.size() < b.steps.size();
  return std::lexicographical_compare(
      a.steps.begin(), a.steps.end(), b.steps.begin(), b.steps.end(),
      [](const TimedStep& x, const TimedStep& y) { return x.arc < y.arc; });
}

Label extend(const Label& from, ArcIndex a, const MultimodalNetwork& net) {
  const Traversal t = arc_traversal(net.arc(a), from.arrival, net.horizon());
  Label next;
  next.arrival = t.exit_instant;
  next.steps = from.steps;
  next.steps.push_back(TimedStep{a, t.entry_slot, from.arrival, t.wait, t.exit_instant});
  return next;
}

TimedPath to_path(double depart, Label label) {
  TimedPath p;
  p.depart_instant = depart;
  p.arrival_instant = label.arrival;
  p.steps = std::move(label.steps);
  return p;
}

[[maybe_unused]] int parking_entries_on(const MultimodalNetwork& net, const TimedPath& p) {
  int count = 0;
  for (const auto& s : p.steps)
    if (net.node(net.arc(s.arc).to).kind == NodeKind::park_entry) ++count;
  return count;
}

}  // namespace

TimeDependentRouter::TimeDependentRouter(const MultimodalNetwork& net) : net_(net) {
  fifo_ = std::all_of(net.arcs().begin(), net.arcs().end(),
                      [&](const Arc& a) { return is_fifo(a, net.horizon()); });
}

std::optional<TimedPath> TimeDependentRouter::earliest_arrival(NodeIndex source, NodeIndex target,
                                                               double depart_instant,
                                                               const ArcFilter& filter) const {
  if (!filter) throw Error(Errc::domain, "earliest_arrival: empty arc filter");
  if (!net_.valid_index(source) || !net_.valid_index(target))
    throw Error(Errc::domain, "earliest_arrival: unknown source or target node");
  if (!std::isfinite(depart_instant) || depart_instant < 0.0)
    throw Error(Errc::domain, "earliest_arrival: departure must be finite and >= 0");

  if (source == target) {
    TimedPath p;
    p.depart_instant = p.arrival_instant = depart_instant;
    return p;
  }
  auto result = fifo_ ? label_setting(source, target, depart_instant, filter)
                      : label_correcting(source, target, depart_instant, filter);
  assert(!result || parking_entries_on(net_, *result) <= 1);
  return result;
}

std::optional<TimedPath> TimeDependentRouter::label_setting(NodeIndex source, NodeIndex target,
                                                            double depart,
                                                            const ArcFilter& filter) const {
  const std::size_t n = net_.nodes().size();
  std::vector<std::optional<Label>> best(n);
  std::vector<bool> settled(n, false);

  struct Entry {
    NodeIndex node;
    const Label* label;
  };
  // Entries point into `best`; an entry is stale once best[node] changed.
  std::vector<std::unique_ptr<Label>> storage;
  auto cmp = [](const Entry& a, const Entry& b) { return precedes(*b.label, *a.label); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> queue(cmp);

  best[source] = Label{depart, {}};
  storage.push_back(std::make_unique<Label>(*best[source]));
  queue.push({source, storage.back().get()});

  while (!queue.empty()) {
    const Entry top = queue.top();
    queue.pop();
    const NodeIndex v = top.node;
    if (settled[v]) continue;
    const Label& current = *best[v];
    if (precedes(current, *top.label) || precedes(*top.label, current)) continue;
    settled[v] = true;
    if (v == target) return to_path(depart, current);

    for (ArcIndex a : net_.out_arcs(v)) {
      if (!filter(net_, a)) continue;
      const NodeIndex w = net_.arc(a).to;
      if (settled[w]) continue;
      Label next = extend(current, a, net_);
      if (!best[w] || precedes(next, *best[w])) {
        best[w] = next;
        storage.push_back(std::make_unique<Label>(std::move(next)));
        queue.push({w, storage.back().get()});
      }
    }
  }
  return std::nullopt;
}

std::optional<TimedPath> TimeDependentRouter::label_correcting(NodeIndex source, NodeIndex target,
                                                               double depart,
                                                               const ArcFilter& filter) const {
  // Without FIFO an earlier arrival at an intermediate node does not dominate
  // a later one, so labels carry their whole (simple) path and are only
  // compared at the target.
  std::optional<Label> best;
  std::vector<bool> on_path(net_.nodes().size(), false);
  std::vector<Label> stack;
  stack.push_back(Label{depart, {}});

  struct Frame {
    NodeIndex node;
    std::size_t next_arc = 0;
  };
  std::vector<Frame> frames{{source, 0}};
  on_path[source] = true;

  while (!frames.empty()) {
    Frame& f = frames.back();
    const auto outs = net_.out_arcs(f.node);
    if (f.next_arc == outs.size()) {
      on_path[f.node] = false;
      frames.pop_back();
      stack.pop_back();
      continue;
    }
    const ArcIndex a = outs[f.next_arc++];
    if (!filter(net_, a)) continue;
    const NodeIndex w = net_.arc(a).to;
    if (on_path[w]) continue;
    Label next = extend(stack.back(), a, net_);
    if (w == target) {
      if (!best || precedes(next, *best)) best = std::move(next);
      continue;
    }
    on_path[w] = true;
    stack.push_back(std::move(next));
    frames.push_back({w, 0});
  }
  if (!best) return std::nullopt;
  return to_path(depart, std::move(*best));
}

}  // namespace pnr
