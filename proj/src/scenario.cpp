#include "pnr/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "json_io.hpp"

namespace pnr {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw ScenarioError(Errc::parse, "schema error at '" + where + "': " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, "missing required key '" + key + "'");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema_error(where, "expected a number");
  return v.get<double>();
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema_error(where, "expected an integer");
  return v.get<std::int64_t>();
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) schema_error(where, "expected a string");
  return v.get<std::string>();
}

// A per-slot profile is an array, or a single number meaning "every slot".
std::vector<double> per_slot(const json& v, int num_slots, const std::string& where) {
  if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(std::max(num_slots, 0)), v.get<double>());
  if (!v.is_array()) schema_error(where, "expected a number or an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

void check_units(const json& doc) {
  auto it = doc.find("units");
  if (it == doc.end())
    throw ScenarioError(Errc::units, "missing 'units' block; declare {distance: m, time: min, money: EUR}");
  const std::pair<const char*, const char*> expected[] = {
      {"distance", "m"}, {"time", "min"}, {"money", "EUR"}};
  for (const auto& [key, unit] : expected) {
    auto u = it->find(key);
    if (u == it->end() || !u->is_string())
      throw ScenarioError(Errc::units, std::string("units block lacks '") + key + "'");
    if (u->get<std::string>() != unit)
      throw ScenarioError(Errc::units, std::string("unsupported ") + key + " unit '" +
                                           u->get<std::string>() + "', expected '" + unit + "'");
  }
}

}  // namespace

UserProfile detail::parse_profile(const json& v, const std::string& where) {
  UserProfile p;
  p.alpha = number(field(v, "alpha", where), where + ".alpha");
  p.beta = number(field(v, "beta", where), where + ".beta");
  p.gamma0 = number(field(v, "gamma0", where), where + ".gamma0");
  const json& g = field(v, "gamma", where);
  if (!g.is_array() || g.size() != 4) schema_error(where + ".gamma", "expected an array of 4 numbers");
  for (std::size_t i = 0; i < 4; ++i) p.gamma[i] = number(g[i], where + ".gamma[" + std::to_string(i) + "]");
  p.lambda = number(field(v, "lambda", where), where + ".lambda");
  p.depart_min = number(field(v, "depart_min", where), where + ".depart_min");
  return p;
}

json detail::profile_json(const UserProfile& p) {
  return json{{"alpha", p.alpha},   {"beta", p.beta},     {"gamma0", p.gamma0},
              {"gamma", p.gamma},   {"lambda", p.lambda}, {"depart_min", p.depart_min}};
}

namespace {

using detail::parse_profile;
using detail::profile_json;

Expectation parse_expectation(const json& v, const std::string& where) {
  Expectation e;
  if (const json* best = optional_field(v, "best"))
    if (!best->is_null()) e.best = text(*best, where + ".best");
  if (const json* t = optional_field(v, "best_total")) e.best_total = number(*t, where + ".best_total");
  if (const json* t = optional_field(v, "tolerance")) e.tolerance = number(*t, where + ".tolerance");
  if (const json* rows = optional_field(v, "rows")) {
    if (!rows->is_object()) schema_error(where + ".rows", "expected an object");
    for (const auto& [id, row] : rows->items()) {
      const std::string w = where + ".rows." + id;
      ExpectedRow r;
      if (const json* x = optional_field(row, "total_time")) r.total_time = number(*x, w + ".total_time");
      if (const json* x = optional_field(row, "total_price")) r.total_price = number(*x, w + ".total_price");
      if (const json* x = optional_field(row, "nonattr")) r.nonattr = number(*x, w + ".nonattr");
      if (const json* x = optional_field(row, "total_cost")) r.total_cost = number(*x, w + ".total_cost");
      e.rows.emplace(id, r);
    }
  }
  return e;
}

json expectation_json(const Expectation& e) {
  json out = json::object();
  out["best"] = e.best ? json(*e.best) : json(nullptr);
  if (e.best_total) out["best_total"] = *e.best_total;
  out["tolerance"] = e.tolerance;
  if (!e.rows.empty()) {
    json rows = json::object();
    for (const auto& [id, r] : e.rows) {
      json row = json::object();
      if (r.total_time) row["total_time"] = *r.total_time;
      if (r.total_price) row["total_price"] = *r.total_price;
      if (r.nonattr) row["nonattr"] = *r.nonattr;
      if (r.total_cost) row["total_cost"] = *r.total_cost;
      rows[id] = row;
    }
    out["rows"] = rows;
  }
  return out;
}

Scenario parse_document(const json& doc) {
  if (!doc.is_object()) schema_error("<root>", "expected an object");
  check_units(doc);

  Scenario s;
  s.name = text(field(doc, "name", "<root>"), "name");
  if (const json* d = optional_field(doc, "description")) s.description = text(*d, "description");

  const json& h = field(doc, "horizon", "<root>");
  TimeHorizon horizon;
  horizon.slot_minutes = number(field(h, "slot_minutes", "horizon"), "horizon.slot_minutes");
  horizon.num_slots = static_cast<int>(integer(field(h, "num_slots", "horizon"), "horizon.num_slots"));
  if (const json* c = optional_field(h, "origin_clock_min"))
    horizon.origin_clock_min = number(*c, "horizon.origin_clock_min");

  std::vector<Node> nodes;
  const json& jn = field(doc, "nodes", "<root>");
  if (!jn.is_array()) schema_error("nodes", "expected an array");
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string w = "nodes[" + std::to_string(i) + "]";
    Node n;
    n.id = text(field(jn[i], "id", w), w + ".id");
    const std::string kind = text(field(jn[i], "kind", w), w + ".kind");
    auto k = parse_node_kind(kind);
    if (!k) schema_error(w + ".kind", "unknown node kind '" + kind + "'");
    n.kind = *k;
    if (const json* m = optional_field(jn[i], "mode")) {
      const std::string mode = text(*m, w + ".mode");
      n.mode = parse_mode(mode);
      if (!n.mode) schema_error(w + ".mode", "unknown mode '" + mode + "'");
    }
    if (const json* f = optional_field(jn[i], "boarding_fare")) n.boarding_fare = number(*f, w + ".boarding_fare");
    nodes.push_back(std::move(n));
  }

  auto index_of = [&](const std::string& id) -> NodeIndex {
    for (NodeIndex n = 0; n < nodes.size(); ++n)
      if (nodes[n].id == id) return n;
    return kNoNode;
  };

  std::vector<Arc> arcs;
  const json& ja = field(doc, "arcs", "<root>");
  if (!ja.is_array()) schema_error("arcs", "expected an array");
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const std::string w = "arcs[" + std::to_string(i) + "]";
    Arc a;
    a.from = index_of(text(field(ja[i], "from", w), w + ".from"));
    a.to = index_of(text(field(ja[i], "to", w), w + ".to"));
    const std::string mode = text(field(ja[i], "mode", w), w + ".mode");
    auto m = parse_mode(mode);
    if (!m) schema_error(w + ".mode", "unknown mode '" + mode + "'");
    a.mode = *m;
    a.length_m = number(field(ja[i], "length_m", w), w + ".length_m");
    a.speeds = per_slot(field(ja[i], "speeds_m_per_min", w), horizon.num_slots, w + ".speeds_m_per_min");
    if (const json* wt = optional_field(ja[i], "waits_min"))
      a.waits = per_slot(*wt, horizon.num_slots, w + ".waits_min");
    else
      a.waits.assign(static_cast<std::size_t>(std::max(horizon.num_slots, 0)), 0.0);
    arcs.push_back(std::move(a));
  }

  std::vector<ParkingFacility> parkings;
  const json& jp = field(doc, "parkings", "<root>");
  if (!jp.is_array()) schema_error("parkings", "expected an array");
  for (std::size_t i = 0; i < jp.size(); ++i) {
    const std::string w = "parkings[" + std::to_string(i) + "]";
    ParkingFacility p;
    p.id = text(field(jp[i], "id", w), w + ".id");
    p.entry = index_of(text(field(jp[i], "entry", w), w + ".entry"));
    p.exit = index_of(text(field(jp[i], "exit", w), w + ".exit"));
    p.transit_minutes = number(field(jp[i], "transit_min", w), w + ".transit_min");
    p.fees = per_slot(field(jp[i], "fees", w), horizon.num_slots, w + ".fees");
    p.q1 = per_slot(field(jp[i], "q1", w), horizon.num_slots, w + ".q1");
    p.q2 = integer(field(jp[i], "q2", w), w + ".q2");
    p.q3 = integer(field(jp[i], "q3", w), w + ".q3");
    p.q4 = integer(field(jp[i], "q4", w), w + ".q4");
    parkings.push_back(std::move(p));
  }
  for (const auto& p : parkings)
    arcs.push_back(make_transit_arc(p.entry, p.exit, p.transit_minutes, horizon.num_slots));

  const std::int64_t big_q = integer(field(doc, "big_q", "<root>"), "big_q");
  s.network = MultimodalNetwork(std::move(nodes), std::move(arcs), std::move(parkings), horizon, big_q);

  if (const json* jprof = optional_field(doc, "profiles")) {
    if (!jprof->is_object()) schema_error("profiles", "expected an object");
    for (const auto& [name, v] : jprof->items()) s.profiles.emplace(name, parse_profile(v, "profiles." + name));
  }
  if (const json* jexp = optional_field(doc, "expectations")) {
    if (!jexp->is_object()) schema_error("expectations", "expected an object");
    for (const auto& [name, v] : jexp->items())
      s.expectations.emplace(name, parse_expectation(v, "expectations." + name));
  }
  return s;
}

}  // namespace

ValidationReport validate_scenario(const Scenario& s) {
  ValidationReport out = validate_network(s.network);
  for (const auto& [name, profile] : s.profiles) {
    const ValidationReport r = validate_profile(profile);
    for (const auto& v : r.items())
      out.add(v.rule, "profile " + name + ": " + v.subject, v.message, v.severity);
  }
  for (const auto& [name, e] : s.expectations) {
    if (!s.profiles.contains(name))
      out.add(Rule::structure, "expectations." + name, "expectation for an unknown profile");
    if (e.best && s.network.find_parking(*e.best) == nullptr)
      out.add(Rule::structure, "expectations." + name, "best references unknown facility '" + *e.best + "'");
    for (const auto& [id, row] : e.rows)
      if (s.network.find_parking(id) == nullptr)
        out.add(Rule::structure, "expectations." + name, "row for unknown facility '" + id + "'");
  }
  out.sort();
  return out;
}

Scenario load_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ScenarioError(Errc::parse, "parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  Scenario s = parse_document(doc);
  ValidationReport report = validate_scenario(s);
  if (!report.ok()) {
    std::string what = "scenario '" + s.name + "' failed validation:\n" + report.to_string();
    throw ScenarioError(Errc::validation, what, std::move(report));
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(Errc::io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ScenarioError(Errc::io, "cannot read '" + path + "'");
  return load_scenario(buf.str());
}

std::string save_scenario(const Scenario& s) {
  const MultimodalNetwork& net = s.network;
  json doc = json::object();
  doc["name"] = s.name;
  if (!s.description.empty()) doc["description"] = s.description;
  doc["units"] = json{{"distance", "m"}, {"time", "min"}, {"money", "EUR"}};

  json horizon{{"slot_minutes", net.horizon().slot_minutes}, {"num_slots", net.horizon().num_slots}};
  if (net.horizon().origin_clock_min != 0.0) horizon["origin_clock_min"] = net.horizon().origin_clock_min;
  doc["horizon"] = horizon;

  auto node_id = [&](NodeIndex n) { return net.valid_index(n) ? net.node(n).id : std::string(); };

  json nodes = json::array();
  for (const auto& n : net.nodes()) {
    json j{{"id", n.id}, {"kind", std::string(to_string(n.kind))}};
    if (n.mode) j["mode"] = std::string(to_string(*n.mode));
    if (n.boarding_fare != 0.0) j["boarding_fare"] = n.boarding_fare;
    nodes.push_back(std::move(j));
  }
  doc["nodes"] = std::move(nodes);

  json arcs = json::array();
  for (const auto& a : net.arcs()) {
    if (a.role == ArcRole::park_transit) continue;
    json j{{"from", node_id(a.from)},
           {"to", node_id(a.to)},
           {"mode", std::string(to_string(a.mode))},
           {"length_m", a.length_m},
           {"speeds_m_per_min", a.speeds}};
    if (std::any_of(a.waits.begin(), a.waits.end(), [](double w) { return w != 0.0; })) j["waits_min"] = a.waits;
    arcs.push_back(std::move(j));
  }
  doc["arcs"] = std::move(arcs);

  json parkings = json::array();
  for (const auto& p : net.parkings()) {
    parkings.push_back(json{{"id", p.id},
                            {"entry", node_id(p.entry)},
                            {"exit", node_id(p.exit)},
                            {"transit_min", p.transit_minutes},
                            {"fees", p.fees},
                            {"q1", p.q1},
                            {"q2", p.q2},
                            {"q3", p.q3},
                            {"q4", p.q4}});
  }
  doc["parkings"] = std::move(parkings);
  doc["big_q"] = net.big_q();

  json profiles = json::object();
  for (const auto& [name, p] : s.profiles) profiles[name] = profile_json(p);
  doc["profiles"] = std::move(profiles);

  if (!s.expectations.empty()) {
    json exp = json::object();
    for (const auto& [name, e] : s.expectations) exp[name] = expectation_json(e);
    doc["expectations"] = std::move(exp);
  }
  return doc.dump(2) + "\n";
}

}  // namespace pnr
