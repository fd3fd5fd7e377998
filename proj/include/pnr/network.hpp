#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pnr/validation.hpp"

namespace pnr {

// Units are fixed throughout: meters, minutes, euros.

enum class Mode : std::uint8_t { car, motorcycle, walk, bus, tram, train, subway };

/// Private vehicle modes may only be used before the parking facility.
constexpr bool is_private(Mode m) { return m == Mode::car || m == Mode::motorcycle; }

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

enum class NodeKind : std::uint8_t { origin, destination, intermediate, park_entry, park_exit };

std::string_view to_string(NodeKind k);
std::optional<NodeKind> parse_node_kind(std::string_view s);

using NodeIndex = std::uint32_t;
using ArcIndex = std::uint32_t;
inline constexpr NodeIndex kNoNode = std::numeric_limits<NodeIndex>::max();

struct TimeHorizon {
  double slot_minutes = 5.0;
  int num_slots = 12;
  double origin_clock_min = 0.0;  // wall-clock minute of day at the start of slot 0; display only

  /// End of the last slot, in minutes after slot 0 starts.
  double end_minutes() const { return slot_minutes * num_slots; }

  friend bool operator==(const TimeHorizon&, const TimeHorizon&) = default;
};

struct SlotLookup {
  int slot = 0;
  bool clamped = false;  // instant lies past the last slot
};

/// Maps an instant (minutes after the start of slot 0) to its slot:
/// floor(instant / slot_minutes), clamped to the last slot.
/// Throws Error(domain) for negative or non-finite instants.
SlotLookup slot_of(double instant, const TimeHorizon& horizon);

struct Node {
  std::string id;
  NodeKind kind = NodeKind::intermediate;
  std::optional<Mode> mode;  // required for intermediate nodes
  double boarding_fare = 0.0;

  friend bool operator==(const Node&, const Node&) = default;
};

enum class ArcRole : std::uint8_t { travel, park_transit };

struct Arc {
  NodeIndex from = kNoNode;
  NodeIndex to = kNoNode;
  Mode mode = Mode::walk;
  double length_m = 0.0;
  std::vector<double> speeds;  // meters per minute, one per slot
  std::vector<double> waits;   // minutes, one per slot; nonzero only when leaving a parking exit
  ArcRole role = ArcRole::travel;

  friend bool operator==(const Arc&, const Arc&) = default;
};

struct ParkingFacility {
  std::string id;
  NodeIndex entry = kNoNode;
  NodeIndex exit = kNoNode;
  double transit_minutes = 0.0;
  std::vector<double> fees;  // euros, one per slot
  std::vector<double> q1;    // estimated free places at a future slot
  std::int64_t q2 = 0;       // free places now
  std::int64_t q3 = 0;       // capacity if not full now, else 0
  std::int64_t q4 = 1;       // capacity

  friend bool operator==(const ParkingFacility&, const ParkingFacility&) = default;
};

/// Directed multimodal graph o -> V -> P+ -> P- -> V -> d with its time
/// discretization and per-parking data. Immutable once constructed; arcs and
/// nodes are addressed by their position in the stored vectors.
class MultimodalNetwork {
 public:
  MultimodalNetwork() = default;
  MultimodalNetwork(std::vector<Node> nodes, std::vector<Arc> arcs,
                    std::vector<ParkingFacility> parkings, TimeHorizon horizon,
                    std::int64_t big_q);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<ParkingFacility>& parkings() const { return parkings_; }
  const TimeHorizon& horizon() const { return horizon_; }
  std::int64_t big_q() const { return big_q_; }

  const Node& node(NodeIndex i) const { return nodes_.at(i); }
  const Arc& arc(ArcIndex a) const { return arcs_.at(a); }

  /// Outgoing / incoming arcs in ascending arc index. Dangling arcs are omitted.
  std::span<const ArcIndex> out_arcs(NodeIndex n) const;
  std::span<const ArcIndex> in_arcs(NodeIndex n) const;

  std::optional<NodeIndex> find_node(std::string_view id) const;
  const ParkingFacility* find_parking(std::string_view id) const;

  /// First node of the given kind, if any.
  std::optional<NodeIndex> origin() const;
  std::optional<NodeIndex> destination() const;

  /// The unique transit arc entry -> exit of a facility, if present.
  std::optional<ArcIndex> transit_arc(const ParkingFacility& p) const;

  bool valid_index(NodeIndex n) const { return n < nodes_.size(); }

  friend bool operator==(const MultimodalNetwork& a, const MultimodalNetwork& b) {
    return a.nodes_ == b.nodes_ && a.arcs_ == b.arcs_ && a.parkings_ == b.parkings_ &&
           a.horizon_ == b.horizon_ && a.big_q_ == b.big_q_;
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<ParkingFacility> parkings_;
  TimeHorizon horizon_;
  std::int64_t big_q_ = 0;

  std::vector<std::vector<ArcIndex>> out_;
  std::vector<std::vector<ArcIndex>> in_;
  std::unordered_map<std::string, NodeIndex> node_by_id_;
};

/// Incremental construction by string id. Unknown ids are kept as dangling
/// references so that validate_network can report them.
class NetworkBuilder {
 public:
  explicit NetworkBuilder(TimeHorizon horizon) : horizon_(horizon) {}

  NetworkBuilder& node(std::string id, NodeKind kind, std::optional<Mode> mode = std::nullopt,
                       double boarding_fare = 0.0);

  /// Travel arc. An empty wait vector means no waiting in any slot; a single
  /// speed (or wait) is replicated across all slots.
  NetworkBuilder& arc(std::string_view from, std::string_view to, Mode mode, double length_m,
                      std::vector<double> speeds, std::vector<double> waits = {});

  /// Adds the facility plus its entry -> exit transit arc. A single fee or q1
  /// value is replicated across all slots.
  NetworkBuilder& parking(std::string id, std::string_view entry, std::string_view exit,
                          double transit_minutes, std::vector<double> fees,
                          std::vector<double> q1, std::int64_t q2, std::int64_t q3,
                          std::int64_t q4);

  /// Q defaults to the largest facility capacity.
  MultimodalNetwork build(std::optional<std::int64_t> big_q = std::nullopt) const;

 private:
  NodeIndex lookup(std::string_view id) const;
  std::vector<double> per_slot(std::vector<double> v) const;

  TimeHorizon horizon_;
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<Arc> transit_arcs_;
  std::vector<ParkingFacility> parkings_;
};

/// Transit arc representation: its length holds the transit minutes and it is
/// traversed at 1 m/min in every slot.
Arc make_transit_arc(NodeIndex entry, NodeIndex exit, double transit_minutes, int num_slots);

/// Checks the node partition, arc rules R1-R4, per-arc and per-parking data,
/// Q, and the absence of zero-cost cycles. Never throws; every rule instance
/// that fails is one entry of the (sorted) report.
ValidationReport validate_network(const MultimodalNetwork& net);

}  // namespace pnr
