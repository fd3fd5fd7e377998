#include "pnr/report.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

#include "json.hpp"

namespace pnr {

using nlohmann::json;

std::optional<ReportKind> parse_report_kind(std::string_view s) {
  if (s == "times") return ReportKind::times;
  if (s == "prices") return ReportKind::prices;
  if (s == "availability") return ReportKind::availability;
  if (s == "cost") return ReportKind::cost;
  return std::nullopt;
}

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "table") return OutputFormat::table;
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  return std::nullopt;
}

RankTable make_rank_table(const MultimodalNetwork& net, const UserProfile& p, const Plan& plan) {
  RankTable t;
  t.profile = p;
  if (plan.best) {
    t.best = plan.best->parking;
    t.best_total = plan.best->breakdown->total;
  }
  for (std::size_t i = 0; i < plan.ranking.size(); ++i) {
    const PlanResult& r = plan.ranking[i];
    const ParkingFacility* k = net.find_parking(r.parking);
    RankRow row;
    row.parking = r.parking;
    row.rank = static_cast<int>(i) + 1;
    row.feasibility = r.feasibility;
    row.reachable = r.breakdown.has_value();
    if (k != nullptr) {
      row.q1 = k->q1.at(static_cast<std::size_t>(r.entry_slot));
      row.q2 = k->q2;
      row.q3 = k->q3;
      row.q4 = k->q4;
    }
    row.big_q = net.big_q();
    if (r.drive_leg) {
      row.time_to_park = r.drive_leg->total_time();
      row.attractiveness = r.attractiveness;
    }
    if (r.breakdown) {
      const CostBreakdown& b = *r.breakdown;
      row.time_in_park = r.park_transit;
      row.wait = r.egress_leg->total_wait();
      row.time_to_destination = r.egress_leg->total_time() - row.wait;
      row.total_time = b.total_minutes;
      row.fee = b.fee;
      row.fare = b.fares;
      row.total_price = b.total_price();
      row.weighted_time = b.time_component;
      row.weighted_price = b.money_component;
      row.nonattr = b.nonattr_component;
      row.total_cost = b.total;
    }
    t.rows.push_back(std::move(row));
  }
  std::sort(t.rows.begin(), t.rows.end(),
            [](const RankRow& a, const RankRow& b) { return facility_id_less(a.parking, b.parking); });
  return t;
}

namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid printing "-0.00".
  if (std::string_view(buf) == "-0.00") return "0.00";
  return buf;
}

struct Column {
  std::string header;   // table header
  std::string csv_key;  // csv header
  bool needs_route;     // blank for unreachable rows
  std::function<std::string(const RankTable&, const RankRow&)> value;
};

Column num(std::string header, std::string key, bool needs_route, double RankRow::*field) {
  return Column{std::move(header), std::move(key), needs_route,
                [field](const RankTable&, const RankRow& r) { return fixed2(r.*field); }};
}

Column weight(std::string header, std::string key, std::function<double(const UserProfile&)> w) {
  return Column{std::move(header), std::move(key), false,
                [w](const RankTable& t, const RankRow&) { return fixed2(w(t.profile)); }};
}

Column count(std::string header, std::string key, std::int64_t RankRow::*field) {
  return Column{std::move(header), std::move(key), false,
                [field](const RankTable&, const RankRow& r) { return std::to_string(r.*field); }};
}

std::vector<Column> columns(ReportKind kind) {
  std::vector<Column> cols;
  cols.push_back(Column{"Park", "park", false,
                        [](const RankTable&, const RankRow& r) { return r.parking; }});
  switch (kind) {
    case ReportKind::times:
      cols.push_back(num("Time to park", "time_to_park", true, &RankRow::time_to_park));
      cols.push_back(num("Time in park", "time_in_park", true, &RankRow::time_in_park));
      cols.push_back(num("Waiting time", "waiting_time", true, &RankRow::wait));
      cols.push_back(num("Time to DES", "time_to_des", true, &RankRow::time_to_destination));
      cols.push_back(num("Total time", "total_time", true, &RankRow::total_time));
      break;
    case ReportKind::prices:
      cols.push_back(num("Parking fee", "parking_fee", true, &RankRow::fee));
      cols.push_back(num("Fare rate", "fare_rate", true, &RankRow::fare));
      cols.push_back(num("Total price", "total_price", true, &RankRow::total_price));
      break;
    case ReportKind::availability:
      cols.push_back(num("q1", "q1", false, &RankRow::q1));
      cols.push_back(count("q2", "q2", &RankRow::q2));
      cols.push_back(count("q3", "q3", &RankRow::q3));
      cols.push_back(count("q4", "q4", &RankRow::q4));
      cols.push_back(count("Q", "big_q", &RankRow::big_q));
      cols.push_back(num("Attractiveness", "attractiveness", false, &RankRow::attractiveness));
      break;
    case ReportKind::cost:
      cols.push_back(weight("alpha", "alpha", [](const UserProfile& p) { return p.alpha; }));
      cols.push_back(num("Total time", "total_time", true, &RankRow::weighted_time));
      cols.push_back(weight("beta", "beta", [](const UserProfile& p) { return p.beta; }));
      cols.push_back(num("Total price", "total_price", true, &RankRow::weighted_price));
      cols.push_back(weight("gamma0", "gamma0", [](const UserProfile& p) { return p.gamma0; }));
      for (int i = 0; i < 4; ++i) {
        const std::string name = "gamma" + std::to_string(i + 1);
        cols.push_back(weight(name, name, [i](const UserProfile& p) { return p.gamma[static_cast<std::size_t>(i)]; }));
      }
      cols.push_back(num("Non-attractiveness", "non_attractiveness", true, &RankRow::nonattr));
      cols.push_back(num("Total cost", "total_cost", true, &RankRow::total_cost));
      break;
  }
  cols.push_back(Column{"Status", "status", false, [](const RankTable&, const RankRow& r) {
                          return std::string(to_string(r.feasibility));
                        }});
  return cols;
}

std::string cell(const Column& c, const RankTable& t, const RankRow& r) {
  if (c.needs_route && !r.reachable) return "-";
  return c.value(t, r);
}

std::string best_line(const RankTable& t) {
  if (!t.best) return "best: none (no feasible plan)\n";
  return "best: " + *t.best + " (total cost " + fixed2(*t.best_total) + ")\n";
}

}  // namespace

std::string render_table(const RankTable& t, ReportKind kind) {
  const auto cols = columns(kind);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].header.size();
  for (const auto& r : t.rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < cols.size(); ++c) {
      line.push_back(cell(cols[c], t, r));
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }

  std::ostringstream os;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) os << "  ";
      const std::string pad(width[c] - line[c].size(), ' ');
      // Park and Status are left-aligned, numbers right-aligned.
      if (c == 0 || c + 1 == line.size())
        os << line[c] << (c + 1 == line.size() ? "" : pad);
      else
        os << pad << line[c];
    }
    os << '\n';
  };
  std::vector<std::string> header;
  for (const auto& c : cols) header.push_back(c.header);
  emit(header);
  std::size_t total_width = 0;
  for (std::size_t w : width) total_width += w;
  os << std::string(total_width + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& line : cells) emit(line);
  os << best_line(t);
  return os.str();
}

std::string render_csv(const RankTable& t, ReportKind kind) {
  const auto cols = columns(kind);
  std::ostringstream os;
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c].csv_key;
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      std::string v = cell(cols[c], t, r);
      if (v == "-") v.clear();
      os << (c ? "," : "") << v;
    }
    os << '\n';
  }
  return os.str();
}

namespace {

json steps_json(const MultimodalNetwork& net, const TimedPath& path) {
  json out = json::array();
  for (const auto& s : path.steps) {
    const Arc& a = net.arc(s.arc);
    out.push_back(json{{"arc", s.arc},
                       {"from", net.node(a.from).id},
                       {"to", net.node(a.to).id},
                       {"mode", std::string(to_string(a.mode))},
                       {"entry_slot", s.entry_slot},
                       {"entry_min", s.entry_instant},
                       {"wait_min", s.wait},
                       {"exit_min", s.exit_instant}});
  }
  return out;
}

}  // namespace

std::string render_json(const MultimodalNetwork& net, const RankTable& t, const Plan& plan) {
  json doc = json::object();
  doc["profile"] = json{{"alpha", t.profile.alpha},   {"beta", t.profile.beta},
                        {"gamma0", t.profile.gamma0}, {"gamma", t.profile.gamma},
                        {"lambda", t.profile.lambda}, {"depart_min", t.profile.depart_min},
                        {"kind", std::string(to_string(t.profile.kind()))}};
  doc["best"] = t.best ? json(*t.best) : json(nullptr);
  doc["best_total"] = t.best_total ? json(*t.best_total) : json(nullptr);

  auto route_value = [](const RankRow& r, double v) { return r.reachable ? json(v) : json(nullptr); };
  json ranking = json::array();
  for (const auto& r : t.rows) {
    ranking.push_back(json{
        {"parking", r.parking},
        {"rank", r.rank},
        {"feasibility", std::string(to_string(r.feasibility))},
        {"reachable", r.reachable},
        {"time_to_park", route_value(r, r.time_to_park)},
        {"time_in_park", route_value(r, r.time_in_park)},
        {"waiting_time", route_value(r, r.wait)},
        {"time_to_des", route_value(r, r.time_to_destination)},
        {"total_time", route_value(r, r.total_time)},
        {"parking_fee", route_value(r, r.fee)},
        {"fare_rate", route_value(r, r.fare)},
        {"total_price", route_value(r, r.total_price)},
        {"q1", r.q1},
        {"q2", r.q2},
        {"q3", r.q3},
        {"q4", r.q4},
        {"big_q", r.big_q},
        {"attractiveness", r.attractiveness},
        {"weighted_time", route_value(r, r.weighted_time)},
        {"weighted_price", route_value(r, r.weighted_price)},
        {"non_attractiveness", route_value(r, r.nonattr)},
        {"total_cost", route_value(r, r.total_cost)},
    });
  }
  doc["ranking"] = std::move(ranking);

  json legs = json::array();
  std::vector<const PlanResult*> ordered;
  for (const auto& r : plan.ranking) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const PlanResult* a, const PlanResult* b) {
    return facility_id_less(a->parking, b->parking);
  });
  for (const PlanResult* r : ordered) {
    json leg{{"parking", r->parking}, {"transit_min", r->park_transit}};
    leg["drive"] = r->drive_leg ? steps_json(net, *r->drive_leg) : json(nullptr);
    leg["egress"] = r->egress_leg ? steps_json(net, *r->egress_leg) : json(nullptr);
    legs.push_back(std::move(leg));
  }
  doc["legs"] = std::move(legs);
  return doc.dump(2) + "\n";
}

}  // namespace pnr
