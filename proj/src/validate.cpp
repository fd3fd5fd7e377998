#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>

#include "pnr/network.hpp"
#include "pnr/validation.hpp"

namespace pnr {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::structure: return "structure";
    case Rule::data: return "data";
    case Rule::zero_cost_cycle: return "zero-cost-cycle";
    case Rule::profile: return "profile";
  }
  return "?";
}

void ValidationReport::add(Rule rule, std::string subject, std::string message,
                           Severity severity) {
  items_.push_back(Violation{rule, severity, std::move(subject), std::move(message)});
}

bool ValidationReport::ok() const { return error_count() == 0; }

std::size_t ValidationReport::count(Rule rule) const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [&](const Violation& v) { return v.rule == rule; }));
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      items_.begin(), items_.end(), [](const Violation& v) { return v.severity == Severity::error; }));
}

void ValidationReport::sort() { std::sort(items_.begin(), items_.end()); }

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : items_) {
    os << (v.severity == Severity::error ? "error " : "warning ") << pnr::to_string(v.rule)
       << " [" << v.subject << "]: " << v.message << '\n';
  }
  return os.str();
}

namespace {

bool finite_nonneg(double x) { return std::isfinite(x) && x >= 0.0; }

class NetworkChecker {
 public:
  explicit NetworkChecker(const MultimodalNetwork& net) : net_(net) {}

  ValidationReport run() {
    check_horizon();
    check_nodes();
    check_arcs();
    check_parkings();
    check_rules();
    check_zero_cost_cycles();
    report_.sort();
    return std::move(report_);
  }

 private:
  std::string node_name(NodeIndex n) const {
    return net_.valid_index(n) ? net_.node(n).id : std::string("<dangling>");
  }

  std::string arc_name(const Arc& a) const {
    return node_name(a.from) + "->" + node_name(a.to) + " " + std::string(to_string(a.mode));
  }

  bool arc_attached(const Arc& a) const { return net_.valid_index(a.from) && net_.valid_index(a.to); }

  void check_horizon() {
    const auto& h = net_.horizon();
    if (!(std::isfinite(h.slot_minutes) && h.slot_minutes > 0.0))
      report_.add(Rule::structure, "horizon", "slot duration must be positive");
    if (h.num_slots < 1) report_.add(Rule::structure, "horizon", "at least one slot is required");
  }

  void check_nodes() {
    std::unordered_map<std::string, int> seen;
    int origins = 0;
    int destinations = 0;
    for (const auto& n : net_.nodes()) {
      if (++seen[n.id] == 2) report_.add(Rule::structure, n.id, "duplicate node id");
      if (n.kind == NodeKind::origin) ++origins;
      if (n.kind == NodeKind::destination) ++destinations;
      if (n.kind == NodeKind::intermediate && !n.mode)
        report_.add(Rule::structure, n.id, "intermediate node without a mode tag");
      if (!finite_nonneg(n.boarding_fare))
        report_.add(Rule::data, n.id, "boarding fare must be finite and >= 0");
    }
    if (origins != 1)
      report_.add(Rule::structure, "network",
                  "expected exactly one origin node, found " + std::to_string(origins));
    if (destinations != 1)
      report_.add(Rule::structure, "network",
                  "expected exactly one destination node, found " + std::to_string(destinations));
  }

  void check_arcs() {
    const auto slots = static_cast<std::size_t>(std::max(net_.horizon().num_slots, 0));
    for (const auto& a : net_.arcs()) {
      const std::string name = arc_name(a);
      if (!arc_attached(a)) {
        report_.add(Rule::structure, name, "arc references an unknown node");
        continue;
      }
      if (!finite_nonneg(a.length_m)) report_.add(Rule::data, name, "length must be finite and >= 0");
      if (a.speeds.size() != slots)
        report_.add(Rule::data, name, "speed profile needs one entry per slot");
      if (std::any_of(a.speeds.begin(), a.speeds.end(),
                      [](double v) { return !(std::isfinite(v) && v > 0.0); }))
        report_.add(Rule::data, name, "speeds must be finite and > 0");
      if (a.waits.size() != slots)
        report_.add(Rule::data, name, "wait profile needs one entry per slot");
      if (!std::all_of(a.waits.begin(), a.waits.end(), finite_nonneg))
        report_.add(Rule::data, name, "waits must be finite and >= 0");
      const bool any_wait =
          std::any_of(a.waits.begin(), a.waits.end(), [](double w) { return w != 0.0; });
      if (any_wait && net_.node(a.from).kind != NodeKind::park_exit)
        report_.add(Rule::data, name, "waits are only allowed on arcs leaving a parking exit");
      if (a.role == ArcRole::park_transit) {
        const bool matches = std::any_of(net_.parkings().begin(), net_.parkings().end(),
                                         [&](const ParkingFacility& p) {
                                           return p.entry == a.from && p.exit == a.to;
                                         });
        if (!matches)
          report_.add(Rule::structure, name, "transit arc does not join a facility's entry and exit");
      }
    }
  }

  void check_parkings() {
    const auto slots = static_cast<std::size_t>(std::max(net_.horizon().num_slots, 0));
    std::unordered_map<std::string, int> seen;
    std::unordered_map<NodeIndex, int> entry_owner;
    std::unordered_map<NodeIndex, int> exit_owner;
    std::int64_t max_q4 = 0;

    for (const auto& p : net_.parkings()) {
      if (++seen[p.id] == 2) report_.add(Rule::structure, p.id, "duplicate facility id");
      max_q4 = std::max(max_q4, p.q4);

      if (!net_.valid_index(p.entry) || net_.node(p.entry).kind != NodeKind::park_entry)
        report_.add(Rule::structure, p.id, "entry must reference a park_entry node");
      else
        ++entry_owner[p.entry];
      if (!net_.valid_index(p.exit) || net_.node(p.exit).kind != NodeKind::park_exit)
        report_.add(Rule::structure, p.id, "exit must reference a park_exit node");
      else
        ++exit_owner[p.exit];

      if (!finite_nonneg(p.transit_minutes))
        report_.add(Rule::data, p.id, "transit time must be finite and >= 0");
      if (p.fees.size() != slots) report_.add(Rule::data, p.id, "fee profile needs one entry per slot");
      if (!std::all_of(p.fees.begin(), p.fees.end(), finite_nonneg))
        report_.add(Rule::data, p.id, "fees must be finite and >= 0");
      if (p.q1.size() != slots) report_.add(Rule::data, p.id, "q1 profile needs one entry per slot");
      if (std::any_of(p.q1.begin(), p.q1.end(), [&](double q) {
            return !finite_nonneg(q) || q > static_cast<double>(p.q4);
          }))
        report_.add(Rule::data, p.id, "q1 must lie in [0, q4] in every slot");
      if (p.q4 < 1) report_.add(Rule::data, p.id, "capacity q4 must be >= 1");
      if (p.q2 < 0 || p.q2 > p.q4) report_.add(Rule::data, p.id, "q2 must lie in [0, q4]");
      if (p.q3 != 0 && p.q3 != p.q4) report_.add(Rule::data, p.id, "q3 must be 0 or q4");

      if (auto t = net_.transit_arc(p)) {
        const Arc& arc = net_.arc(*t);
        const bool consistent =
            arc.role == ArcRole::park_transit && arc.length_m == p.transit_minutes &&
            std::all_of(arc.speeds.begin(), arc.speeds.end(), [](double v) { return v == 1.0; });
        if (!consistent)
          report_.add(Rule::data, p.id, "transit arc does not encode the facility's transit time");
      }
    }

    for (NodeIndex n = 0; n < net_.nodes().size(); ++n) {
      const Node& node = net_.node(n);
      if (node.kind == NodeKind::park_entry && entry_owner[n] != 1)
        report_.add(Rule::structure, node.id, "park_entry must belong to exactly one facility");
      if (node.kind == NodeKind::park_exit && exit_owner[n] != 1)
        report_.add(Rule::structure, node.id, "park_exit must belong to exactly one facility");
    }

    if (!net_.parkings().empty() && net_.big_q() != max_q4)
      report_.add(Rule::structure, "Q",
                  "Q must equal the largest capacity (" + std::to_string(max_q4) + ")");
    if (net_.big_q() < 1 && !net_.parkings().empty())
      report_.add(Rule::structure, "Q", "Q must be >= 1");
  }

  const ParkingFacility* facility_by_entry(NodeIndex n) const {
    for (const auto& p : net_.parkings())
      if (p.entry == n) return &p;
    return nullptr;
  }

  const ParkingFacility* facility_by_exit(NodeIndex n) const {
    for (const auto& p : net_.parkings())
      if (p.exit == n) return &p;
    return nullptr;
  }

  void check_rules() {
    for (NodeIndex n = 0; n < net_.nodes().size(); ++n) {
      const Node& node = net_.node(n);
      const auto outs = net_.out_arcs(n);
      const auto ins = net_.in_arcs(n);
      switch (node.kind) {
        case NodeKind::origin:
          for (ArcIndex a : ins)
            report_.add(Rule::R1, arc_name(net_.arc(a)), "arc enters the origin");
          for (ArcIndex a : outs)
            if (!is_private(net_.arc(a).mode))
              report_.add(Rule::R1, arc_name(net_.arc(a)), "non-private arc leaves the origin");
          break;

        case NodeKind::destination:
          for (ArcIndex a : outs)
            report_.add(Rule::R2, arc_name(net_.arc(a)), "arc leaves the destination");
          for (ArcIndex a : ins)
            if (is_private(net_.arc(a).mode))
              report_.add(Rule::R2, arc_name(net_.arc(a)), "private arc enters the destination");
          break;

        case NodeKind::park_entry: {
          for (ArcIndex a : ins)
            if (!is_private(net_.arc(a).mode))
              report_.add(Rule::R3, arc_name(net_.arc(a)), "non-private arc enters a parking entry");
          if (outs.size() != 1) {
            report_.add(Rule::R3, node.id,
                        "parking entry has " + std::to_string(outs.size()) +
                            " outgoing arcs, expected exactly 1");
          } else {
            const ParkingFacility* p = facility_by_entry(n);
            if (p == nullptr || net_.arc(outs.front()).to != p->exit)
              report_.add(Rule::R3, node.id, "parking entry does not lead to its own exit");
          }
          break;
        }

        case NodeKind::park_exit: {
          for (ArcIndex a : outs)
            if (is_private(net_.arc(a).mode))
              report_.add(Rule::R3, arc_name(net_.arc(a)), "private arc leaves a parking exit");
          const ParkingFacility* p = facility_by_exit(n);
          for (ArcIndex a : ins)
            if (p == nullptr || net_.arc(a).from != p->entry)
              report_.add(Rule::R3, arc_name(net_.arc(a)),
                          "parking exit entered other than from its own entry");
          break;
        }

        case NodeKind::intermediate: {
          std::set<Mode> modes;
          for (ArcIndex a : ins) modes.insert(net_.arc(a).mode);
          for (ArcIndex a : outs) modes.insert(net_.arc(a).mode);
          if (node.mode) modes.insert(*node.mode);
          if (modes.size() > 1) {
            std::string list;
            for (Mode m : modes) list += (list.empty() ? "" : ",") + std::string(to_string(m));
            report_.add(Rule::R4, node.id, "intermediate node mixes modes {" + list + "}");
          }
          break;
        }
      }
    }
  }

  // Strongly connected components of the zero-duration subgraph; any
  // component with a cycle is reported once, named by its smallest node id.
  void check_zero_cost_cycles() {
    const std::size_t n = net_.nodes().size();
    std::vector<std::vector<NodeIndex>> adj(n);
    std::vector<bool> self_loop(n, false);
    for (const auto& a : net_.arcs()) {
      if (!arc_attached(a)) continue;
      const bool zero = a.length_m == 0.0 &&
                        std::all_of(a.waits.begin(), a.waits.end(), [](double w) { return w == 0.0; });
      if (!zero) continue;
      adj[a.from].push_back(a.to);
      if (a.from == a.to) self_loop[a.from] = true;
    }

    std::vector<int> index(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeIndex> stack;
    int counter = 0;

    std::function<void(NodeIndex)> strongconnect = [&](NodeIndex v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack[v] = true;
      for (NodeIndex w : adj[v]) {
        if (index[w] < 0) {
          strongconnect(w);
          low[v] = std::min(low[v], low[w]);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v]) {
        std::vector<NodeIndex> component;
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        if (component.size() > 1 || self_loop[v]) {
          std::string smallest = net_.node(component.front()).id;
          for (NodeIndex c : component) smallest = std::min(smallest, net_.node(c).id);
          report_.add(Rule::zero_cost_cycle, smallest,
                      "cycle of zero-duration arcs through " + std::to_string(component.size()) +
                          " node(s)");
        }
      }
    };
    for (NodeIndex v = 0; v < n; ++v)
      if (index[v] < 0) strongconnect(v);
  }

  const MultimodalNetwork& net_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_network(const MultimodalNetwork& net) { return NetworkChecker(net).run(); }

}  // namespace pnr
