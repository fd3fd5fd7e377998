#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pnr/network.hpp"

namespace pnr {

struct Traversal {
  double exit_instant = 0.0;
  double wait = 0.0;
  int entry_slot = 0;
  bool clamped = false;
};

/// Enters the arc at `entry_instant`, waits the entry slot's wait, then
/// travels length / speed at the entry slot's speed.
Traversal arc_traversal(const Arc& arc, double entry_instant, const TimeHorizon& horizon);

/// An arc is FIFO iff its per-slot traversal time (wait + travel) never
/// decreases from one slot to the next.
bool is_fifo(const Arc& arc, const TimeHorizon& horizon);

struct TimedStep {
  ArcIndex arc = 0;
  int entry_slot = 0;
  double entry_instant = 0.0;
  double wait = 0.0;
  double exit_instant = 0.0;

  friend bool operator==(const TimedStep&, const TimedStep&) = default;
};

struct TimedPath {
  double depart_instant = 0.0;
  double arrival_instant = 0.0;
  std::vector<TimedStep> steps;

  double total_time() const { return arrival_instant - depart_instant; }
  double total_wait() const;
  std::vector<ArcIndex> arc_sequence() const;

  friend bool operator==(const TimedPath&, const TimedPath&) = default;
};

using ArcFilter = std::function<bool(const MultimodalNetwork&, ArcIndex)>;

/// Time-dependent earliest-arrival search over the subgraph admitted by an arc
/// filter. Construction checks FIFO on every arc: FIFO networks are searched
/// label-setting (Dijkstra on arrival instants), otherwise the router falls
/// back to label-correcting over simple paths.
///
/// Ties on arrival are broken by fewer arcs, then by the lexicographically
/// smallest arc-index sequence.
///
/// Holds a reference to the network; many searches may run concurrently.
class TimeDependentRouter {
 public:
  explicit TimeDependentRouter(const MultimodalNetwork& net);

  bool fifo() const { return fifo_; }

  /// Empty optional when the target is unreachable. Throws Error(domain) for
  /// an empty filter, unknown nodes, or a negative departure.
  std::optional<TimedPath> earliest_arrival(NodeIndex source, NodeIndex target,
                                            double depart_instant,
                                            const ArcFilter& filter) const;

 private:
  std::optional<TimedPath> label_setting(NodeIndex source, NodeIndex target, double depart,
                                         const ArcFilter& filter) const;
  std::optional<TimedPath> label_correcting(NodeIndex source, NodeIndex target, double depart,
                                            const ArcFilter& filter) const;

  const MultimodalNetwork& net_;
  bool fifo_ = true;
};

/// Private-vehicle travel arcs (the drive leg up to a parking entry).
bool drive_arc(const MultimodalNetwork& net, ArcIndex a);

/// Non-private travel arcs (walking or public transport after parking).
bool egress_arc(const MultimodalNetwork& net, ArcIndex a);

}  // namespace pnr
