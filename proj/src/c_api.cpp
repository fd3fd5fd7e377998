#include "pnr/pnr.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "json.hpp"
#include "json_io.hpp"
#include "pnr/planner.hpp"
#include "pnr/report.hpp"
#include "pnr/scenario.hpp"

struct pnr_scenario {
  pnr::Scenario scenario;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

pnr_status status_for(pnr::Errc code) {
  switch (code) {
    case pnr::Errc::domain: return PNR_E_INVALID_ARGUMENT;
    case pnr::Errc::not_found: return PNR_E_NOT_FOUND;
    case pnr::Errc::parse: return PNR_E_PARSE;
    case pnr::Errc::validation: return PNR_E_VALIDATION;
    case pnr::Errc::units: return PNR_E_UNITS;
    case pnr::Errc::io: return PNR_E_IO;
    case pnr::Errc::size_guard: return PNR_E_INVALID_ARGUMENT;
  }
  return PNR_E_INTERNAL;
}

pnr_status fail(pnr_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename F>
pnr_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const pnr::Error& e) {
    return fail(status_for(e.code()), e.what());
  } catch (const json::exception& e) {
    return fail(PNR_E_PARSE, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PNR_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PNR_E_INTERNAL, e.what());
  } catch (...) {
    return fail(PNR_E_INTERNAL, "unknown exception");
  }
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

std::map<std::string, double> parse_deltas(const json& j) {
  std::map<std::string, double> deltas;
  if (j.is_null()) return deltas;
  if (!j.is_object()) throw pnr::Error(pnr::Errc::parse, "perturbation must be a JSON object");
  for (const auto& [id, v] : j.items()) {
    if (!v.is_number()) throw pnr::Error(pnr::Errc::parse, "perturbation for '" + id + "' is not a number");
    deltas[id] = v.get<double>();
  }
  return deltas;
}

std::map<std::string, double> parse_deltas_text(const char* text) {
  if (text == nullptr || *text == '\0') return {};
  return parse_deltas(json::parse(text));
}

std::string render(const pnr::MultimodalNetwork& net, const pnr::UserProfile& p,
                   const pnr::Plan& plan, pnr_format format, pnr_report report) {
  const pnr::RankTable table = pnr::make_rank_table(net, p, plan);
  pnr::ReportKind kind = pnr::ReportKind::cost;
  switch (report) {
    case PNR_REPORT_TIMES: kind = pnr::ReportKind::times; break;
    case PNR_REPORT_PRICES: kind = pnr::ReportKind::prices; break;
    case PNR_REPORT_AVAILABILITY: kind = pnr::ReportKind::availability; break;
    case PNR_REPORT_COST: kind = pnr::ReportKind::cost; break;
    default: throw pnr::Error(pnr::Errc::domain, "unknown report kind");
  }
  switch (format) {
    case PNR_FORMAT_TABLE: return pnr::render_table(table, kind);
    case PNR_FORMAT_CSV: return pnr::render_csv(table, kind);
    case PNR_FORMAT_JSON: return pnr::render_json(net, table, plan);
  }
  throw pnr::Error(pnr::Errc::domain, "unknown output format");
}

}  // namespace

extern "C" {

const char* pnr_version(void) { return "1.0.0"; }

const char* pnr_last_error(void) { return g_last_error.c_str(); }

const char* pnr_status_name(pnr_status status) {
  switch (status) {
    case PNR_OK: return "ok";
    case PNR_E_INVALID_ARGUMENT: return "invalid argument";
    case PNR_E_NOT_FOUND: return "not found";
    case PNR_E_PARSE: return "parse error";
    case PNR_E_VALIDATION: return "validation failed";
    case PNR_E_UNITS: return "units error";
    case PNR_E_IO: return "i/o error";
    case PNR_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pnr_string_free(char* s) { std::free(s); }

pnr_status pnr_scenario_load_file(const char* path, pnr_scenario** out) {
  if (path == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pnr_scenario{pnr::load_scenario_file(path)};
    return PNR_OK;
  });
}

pnr_status pnr_scenario_load_text(const char* text, size_t length, pnr_scenario** out) {
  if (text == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    *out = new pnr_scenario{pnr::load_scenario(std::string_view(text, length))};
    return PNR_OK;
  });
}

void pnr_scenario_free(pnr_scenario* scenario) { delete scenario; }

pnr_status pnr_scenario_save(const pnr_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    *out = duplicate(pnr::save_scenario(scenario->scenario));
    return PNR_OK;
  });
}

pnr_status pnr_scenario_validate(const pnr_scenario* scenario, char** report) {
  if (scenario == nullptr || report == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const pnr::ValidationReport r = pnr::validate_scenario(scenario->scenario);
    *report = duplicate(r.to_string());
    if (!r.ok()) return fail(PNR_E_VALIDATION, r.to_string());
    return PNR_OK;
  });
}

pnr_status pnr_scenario_perturb(const pnr_scenario* scenario, const char* deltas_json,
                                pnr_scenario** out) {
  if (scenario == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    pnr::Scenario copy = scenario->scenario;
    copy.network = pnr::apply_perturbation(copy.network, parse_deltas_text(deltas_json));
    *out = new pnr_scenario{std::move(copy)};
    return PNR_OK;
  });
}

pnr_status pnr_scenario_info_json(const pnr_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const pnr::Scenario& s = scenario->scenario;
    const pnr::TimeHorizon& h = s.network.horizon();
    json profiles = json::array();
    for (const auto& [name, p] : s.profiles) profiles.push_back(name);
    json doc{{"name", s.name},
             {"description", s.description},
             {"horizon",
              {{"slot_minutes", h.slot_minutes},
               {"num_slots", h.num_slots},
               {"end_min", h.end_minutes()},
               {"origin_clock_min", h.origin_clock_min}}},
             {"profiles", profiles},
             {"nodes", s.network.nodes().size()},
             {"arcs", s.network.arcs().size()},
             {"parkings", s.network.parkings().size()},
             {"big_q", s.network.big_q()}};
    *out = duplicate(doc.dump(2) + "\n");
    return PNR_OK;
  });
}

pnr_status pnr_parkings_json(const pnr_scenario* scenario, char** out) {
  if (scenario == nullptr || out == nullptr) return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const pnr::MultimodalNetwork& net = scenario->scenario.network;
    json doc = json::array();
    for (const auto& p : net.parkings()) {
      doc.push_back(json{{"id", p.id},
                         {"entry", net.node(p.entry).id},
                         {"exit", net.node(p.exit).id},
                         {"transit_min", p.transit_minutes},
                         {"fees", p.fees},
                         {"q1", p.q1},
                         {"q2", p.q2},
                         {"q3", p.q3},
                         {"q4", p.q4},
                         {"big_q", net.big_q()}});
    }
    *out = duplicate(doc.dump(2) + "\n");
    return PNR_OK;
  });
}

pnr_status pnr_plan_profile(const pnr_scenario* scenario, const char* profile_name,
                            const char* deltas_json, pnr_format format, pnr_report report,
                            char** out, int* has_best) {
  if (scenario == nullptr || profile_name == nullptr || out == nullptr)
    return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const pnr::Scenario& s = scenario->scenario;
    auto it = s.profiles.find(profile_name);
    if (it == s.profiles.end())
      throw pnr::Error(pnr::Errc::not_found, std::string("unknown profile '") + profile_name + "'");
    const auto deltas = parse_deltas_text(deltas_json);
    const pnr::MultimodalNetwork net =
        deltas.empty() ? s.network : pnr::apply_perturbation(s.network, deltas);
    const pnr::Plan plan = pnr::plan(net, it->second);
    *out = duplicate(render(net, it->second, plan, format, report));
    if (has_best != nullptr) *has_best = plan.best ? 1 : 0;
    return PNR_OK;
  });
}

pnr_status pnr_plan_request_json(const pnr_scenario* scenario, const char* request_json,
                                 char** response_json, int* has_best) {
  if (scenario == nullptr || request_json == nullptr || response_json == nullptr)
    return fail(PNR_E_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const json request = json::parse(request_json);
    if (!request.is_object() || !request.contains("profile"))
      throw pnr::Error(pnr::Errc::parse, "request must be an object with a 'profile' member");
    const pnr::UserProfile profile = pnr::detail::parse_profile(request.at("profile"), "profile");
    const pnr::ValidationReport report = pnr::validate_profile(profile);
    if (!report.ok()) return fail(PNR_E_VALIDATION, report.to_string());

    pnr::PlannerOptions opts;
    if (auto f = request.find("fares"); f != request.end()) {
      const std::string rule = f->get<std::string>();
      if (rule == "every_boarding")
        opts.fares = pnr::FareCounting::every_boarding;
      else if (rule != "exit_arc_only")
        throw pnr::Error(pnr::Errc::domain, "unknown fare rule '" + rule + "'");
    }

    const pnr::Scenario& s = scenario->scenario;
    const auto deltas = request.contains("perturb") ? parse_deltas(request.at("perturb"))
                                                     : std::map<std::string, double>{};
    const pnr::MultimodalNetwork net =
        deltas.empty() ? s.network : pnr::apply_perturbation(s.network, deltas);
    const pnr::Plan plan = pnr::plan(net, profile, opts);
    *response_json = duplicate(render(net, profile, plan, PNR_FORMAT_JSON, PNR_REPORT_COST));
    if (has_best != nullptr) *has_best = plan.best ? 1 : 0;
    return PNR_OK;
  });
}

}  // extern "C"
