#include "pnr/network.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "pnr/error.hpp"

namespace pnr {

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 7> kModeNames{{
    {Mode::car, "car"},
    {Mode::motorcycle, "motorcycle"},
    {Mode::walk, "walk"},
    {Mode::bus, "bus"},
    {Mode::tram, "tram"},
    {Mode::train, "train"},
    {Mode::subway, "subway"},
}};

constexpr std::array<std::pair<NodeKind, std::string_view>, 5> kKindNames{{
    {NodeKind::origin, "origin"},
    {NodeKind::destination, "destination"},
    {NodeKind::intermediate, "intermediate"},
    {NodeKind::park_entry, "park_entry"},
    {NodeKind::park_exit, "park_exit"},
}};

}  // namespace

std::string_view to_string(Mode m) {
  for (const auto& [mode, name] : kModeNames)
    if (mode == m) return name;
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (const auto& [mode, name] : kModeNames)
    if (name == s) return mode;
  return std::nullopt;
}

std::string_view to_string(NodeKind k) {
  for (const auto& [kind, name] : kKindNames)
    if (kind == k) return name;
  return "?";
}

std::optional<NodeKind> parse_node_kind(std::string_view s) {
  for (const auto& [kind, name] : kKindNames)
    if (name == s) return kind;
  return std::nullopt;
}

SlotLookup slot_of(double instant, const TimeHorizon& horizon) {
  if (!std::isfinite(instant) || instant < 0.0)
    throw Error(Errc::domain, "slot_of: instant must be finite and >= 0");
  if (!(horizon.slot_minutes > 0.0) || horizon.num_slots < 1)
    throw Error(Errc::domain, "slot_of: degenerate time horizon");
  const double raw = std::floor(instant / horizon.slot_minutes);
  const double last = static_cast<double>(horizon.num_slots - 1);
  if (raw > last) return {horizon.num_slots - 1, true};
  return {static_cast<int>(raw), false};
}

MultimodalNetwork::MultimodalNetwork(std::vector<Node> nodes, std::vector<Arc> arcs,
                                     std::vector<ParkingFacility> parkings, TimeHorizon horizon,
                                     std::int64_t big_q)
    : nodes_(std::move(nodes)),
      arcs_(std::move(arcs)),
      parkings_(std::move(parkings)),
      horizon_(horizon),
      big_q_(big_q),
      out_(nodes_.size()),
      in_(nodes_.size()) {
  for (ArcIndex a = 0; a < arcs_.size(); ++a) {
    const Arc& arc = arcs_[a];
    if (arc.from < nodes_.size() && arc.to < nodes_.size()) {
      out_[arc.from].push_back(a);
      in_[arc.to].push_back(a);
    }
  }
  for (NodeIndex n = 0; n < nodes_.size(); ++n) node_by_id_.emplace(nodes_[n].id, n);
}

std::span<const ArcIndex> MultimodalNetwork::out_arcs(NodeIndex n) const {
  if (n >= out_.size()) return {};
  return out_[n];
}

std::span<const ArcIndex> MultimodalNetwork::in_arcs(NodeIndex n) const {
  if (n >= in_.size()) return {};
  return in_[n];
}

std::optional<NodeIndex> MultimodalNetwork::find_node(std::string_view id) const {
  auto it = node_by_id_.find(std::string(id));
  if (it == node_by_id_.end()) return std::nullopt;
  return it->second;
}

const ParkingFacility* MultimodalNetwork::find_parking(std::string_view id) const {
  for (const auto& p : parkings_)
    if (p.id == id) return &p;
  return nullptr;
}

std::optional<NodeIndex> MultimodalNetwork::origin() const {
  for (NodeIndex n = 0; n < nodes_.size(); ++n)
    if (nodes_[n].kind == NodeKind::origin) return n;
  return std::nullopt;
}

std::optional<NodeIndex> MultimodalNetwork::destination() const {
  for (NodeIndex n = 0; n < nodes_.size(); ++n)
    if (nodes_[n].kind == NodeKind::destination) return n;
  return std::nullopt;
}

std::optional<ArcIndex> MultimodalNetwork::transit_arc(const ParkingFacility& p) const {
  for (ArcIndex a : out_arcs(p.entry))
    if (arcs_[a].to == p.exit) return a;
  return std::nullopt;
}

Arc make_transit_arc(NodeIndex entry, NodeIndex exit, double transit_minutes, int num_slots) {
  Arc arc;
  arc.from = entry;
  arc.to = exit;
  arc.mode = Mode::car;
  arc.length_m = transit_minutes;
  arc.speeds.assign(static_cast<std::size_t>(std::max(num_slots, 0)), 1.0);
  arc.waits.assign(arc.speeds.size(), 0.0);
  arc.role = ArcRole::park_transit;
  return arc;
}

NetworkBuilder& NetworkBuilder::node(std::string id, NodeKind kind, std::optional<Mode> mode,
                                     double boarding_fare) {
  nodes_.push_back(Node{std::move(id), kind, mode, boarding_fare});
  return *this;
}

NetworkBuilder& NetworkBuilder::arc(std::string_view from, std::string_view to, Mode mode,
                                    double length_m, std::vector<double> speeds,
                                    std::vector<double> waits) {
  Arc a;
  a.from = lookup(from);
  a.to = lookup(to);
  a.mode = mode;
  a.length_m = length_m;
  a.speeds = per_slot(std::move(speeds));
  a.waits = waits.empty() ? std::vector<double>(static_cast<std::size_t>(horizon_.num_slots), 0.0)
                          : per_slot(std::move(waits));
  arcs_.push_back(std::move(a));
  return *this;
}

NetworkBuilder& NetworkBuilder::parking(std::string id, std::string_view entry,
                                        std::string_view exit, double transit_minutes,
                                        std::vector<double> fees, std::vector<double> q1,
                                        std::int64_t q2, std::int64_t q3, std::int64_t q4) {
  ParkingFacility p;
  p.id = std::move(id);
  p.entry = lookup(entry);
  p.exit = lookup(exit);
  p.transit_minutes = transit_minutes;
  p.fees = per_slot(std::move(fees));
  p.q1 = per_slot(std::move(q1));
  p.q2 = q2;
  p.q3 = q3;
  p.q4 = q4;
  transit_arcs_.push_back(make_transit_arc(p.entry, p.exit, transit_minutes, horizon_.num_slots));
  parkings_.push_back(std::move(p));
  return *this;
}

MultimodalNetwork NetworkBuilder::build(std::optional<std::int64_t> big_q) const {
  std::int64_t q = 0;
  for (const auto& p : parkings_) q = std::max(q, p.q4);
  std::vector<Arc> arcs = arcs_;
  arcs.insert(arcs.end(), transit_arcs_.begin(), transit_arcs_.end());
  return MultimodalNetwork(nodes_, std::move(arcs), parkings_, horizon_, big_q.value_or(q));
}

NodeIndex NetworkBuilder::lookup(std::string_view id) const {
  for (NodeIndex n = 0; n < nodes_.size(); ++n)
    if (nodes_[n].id == id) return n;
  return kNoNode;
}

std::vector<double> NetworkBuilder::per_slot(std::vector<double> v) const {
  if (v.size() == 1 && horizon_.num_slots > 1)
    v.assign(static_cast<std::size_t>(horizon_.num_slots), v.front());
  return v;
}

}  // namespace pnr
