// pnr: command-line front end over the C API.
//
//   pnr validate <scenario>
//   pnr plan <scenario> <profile> [--perturb ID=+MIN ...] [--format table|csv|json]
//                                 [--report times|prices|availability|cost]
//   pnr serve <scenario> [--host H] [--port P]
//   pnr canon <scenario> [-o FILE]
//
// Exit codes: 0 ok, 1 domain failure, 2 I/O or environment, 3 no feasible plan.

#include <pnr/pnr.h>

#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;
constexpr int kExitNoPlan = 3;

struct ScenarioDeleter {
  void operator()(pnr_scenario* s) const { pnr_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<pnr_scenario, ScenarioDeleter>;

struct StringDeleter {
  void operator()(char* s) const { pnr_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

int exit_code_for(pnr_status s) {
  switch (s) {
    case PNR_OK: return kExitOk;
    case PNR_E_IO: return kExitIo;
    default: return kExitDomain;
  }
}

int report_failure(pnr_status s) {
  std::cerr << "pnr: " << pnr_status_name(s) << ": " << pnr_last_error() << '\n';
  return exit_code_for(s);
}

pnr_status load(const std::string& path, ScenarioPtr& out) {
  pnr_scenario* raw = nullptr;
  const pnr_status s = pnr_scenario_load_file(path.c_str(), &raw);
  out.reset(raw);
  return s;
}

// "3=+3" or "3=-1.5" -> {"3": 3.0}
bool parse_perturbations(const std::vector<std::string>& specs, nlohmann::json& out,
                         std::string& error) {
  out = nlohmann::json::object();
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      error = "malformed perturbation '" + spec + "', expected ID=+MIN";
      return false;
    }
    const std::string id = spec.substr(0, eq);
    const std::string value = spec.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double minutes = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      out[id] = out.value(id, 0.0) + minutes;
    } catch (const std::exception&) {
      error = "malformed perturbation minutes '" + value + "'";
      return false;
    }
  }
  return true;
}

int cmd_validate(const std::string& path) {
  ScenarioPtr scenario;
  if (pnr_status s = load(path, scenario); s != PNR_OK) return report_failure(s);
  char* raw = nullptr;
  const pnr_status s = pnr_scenario_validate(scenario.get(), &raw);
  CString report(raw);
  if (report && *report) std::cout << report.get();
  if (s != PNR_OK) return report_failure(s);
  std::cout << "ok\n";
  return kExitOk;
}

int cmd_plan(const std::string& path, const std::string& profile,
             const std::vector<std::string>& perturb, pnr_format format, pnr_report report) {
  nlohmann::json deltas;
  std::string error;
  if (!parse_perturbations(perturb, deltas, error)) {
    std::cerr << "pnr: " << error << '\n';
    return kExitDomain;
  }
  ScenarioPtr scenario;
  if (pnr_status s = load(path, scenario); s != PNR_OK) return report_failure(s);

  const std::string deltas_text = deltas.dump();
  char* raw = nullptr;
  int has_best = 0;
  pnr_status s = pnr_plan_profile(scenario.get(), profile.c_str(), deltas_text.c_str(), format,
                                  report, &raw, &has_best);
  CString out(raw);
  if (s != PNR_OK) return report_failure(s);
  std::cout << out.get();

  // CSV stays machine-readable; the verdict goes to stderr.
  if (format == PNR_FORMAT_CSV) {
    char* table_raw = nullptr;
    s = pnr_plan_profile(scenario.get(), profile.c_str(), deltas_text.c_str(), PNR_FORMAT_TABLE,
                         report, &table_raw, nullptr);
    CString table(table_raw);
    if (s != PNR_OK) return report_failure(s);
    std::string text(table.get());
    text.pop_back();
    std::cerr << text.substr(text.rfind('\n') + 1) << '\n';
  }
  return has_best ? kExitOk : kExitNoPlan;
}

int cmd_canon(const std::string& path, const std::string& output) {
  ScenarioPtr scenario;
  if (pnr_status s = load(path, scenario); s != PNR_OK) return report_failure(s);
  char* raw = nullptr;
  const pnr_status s = pnr_scenario_save(scenario.get(), &raw);
  CString text(raw);
  if (s != PNR_OK) return report_failure(s);
  if (output.empty() || output == "-") {
    std::cout << text.get();
    return kExitOk;
  }
  std::ofstream f(output, std::ios::binary);
  f << text.get();
  if (!f) {
    std::cerr << "pnr: cannot write '" << output << "'\n";
    return kExitIo;
  }
  return kExitOk;
}

void send_json(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_header("Access-Control-Allow-Origin", "*");
  res.set_content(body, "application/json");
}

void send_error(httplib::Response& res, int status, pnr_status code) {
  const nlohmann::json body{{"error", pnr_status_name(code)}, {"message", pnr_last_error()}};
  send_json(res, status, body.dump(2) + "\n");
}

httplib::Server* g_server = nullptr;

void stop_server(int) {
  if (g_server != nullptr) g_server->stop();
}

int cmd_serve(const std::string& path, const std::string& host, int port) {
  ScenarioPtr scenario;
  if (pnr_status s = load(path, scenario); s != PNR_OK) return report_failure(s);
  const pnr_scenario* shared = scenario.get();

  httplib::Server server;
  auto emit = [](httplib::Response& res, pnr_status s, char* raw) {
    CString body(raw);
    if (s != PNR_OK) return send_error(res, 500, s);
    send_json(res, 200, body.get());
  };
  server.Get("/api/scenario", [&](const httplib::Request&, httplib::Response& res) {
    char* raw = nullptr;
    const pnr_status s = pnr_scenario_info_json(shared, &raw);
    emit(res, s, raw);
  });
  server.Get("/api/parkings", [&](const httplib::Request&, httplib::Response& res) {
    char* raw = nullptr;
    const pnr_status s = pnr_parkings_json(shared, &raw);
    emit(res, s, raw);
  });
  server.Options("/api/plan", [](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.status = 204;
  });
  server.Post("/api/plan", [&](const httplib::Request& req, httplib::Response& res) {
    char* raw = nullptr;
    const pnr_status s = pnr_plan_request_json(shared, req.body.c_str(), &raw, nullptr);
    CString body(raw);
    switch (s) {
      case PNR_OK: return send_json(res, 200, body.get());
      case PNR_E_PARSE:
      case PNR_E_VALIDATION:
      case PNR_E_INVALID_ARGUMENT:
      case PNR_E_NOT_FOUND:
        return send_error(res, 400, s);
      default: return send_error(res, 500, s);
    }
  });

  // Exclusive bind: no SO_REUSEPORT.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  if (!server.bind_to_port(host, port)) {
    std::cerr << "pnr: cannot listen on " << host << ':' << port << '\n';
    return kExitIo;
  }
  g_server = &server;
  std::signal(SIGINT, stop_server);
  std::signal(SIGTERM, stop_server);
  std::cerr << "pnr: serving on http://" << host << ':' << port << '\n';
  const bool clean = server.listen_after_bind();
  g_server = nullptr;
  return clean ? kExitOk : kExitIo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Park-and-ride planner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pnr_version()));

  std::string scenario_path;
  auto* validate = app.add_subcommand("validate", "Check a scenario against the network and profile rules");
  validate->add_option("scenario", scenario_path, "Scenario file")->required();

  std::string profile;
  std::vector<std::string> perturb;
  pnr_format format = PNR_FORMAT_TABLE;
  pnr_report report = PNR_REPORT_COST;
  const std::map<std::string, pnr_format> formats{
      {"table", PNR_FORMAT_TABLE}, {"csv", PNR_FORMAT_CSV}, {"json", PNR_FORMAT_JSON}};
  const std::map<std::string, pnr_report> reports{{"times", PNR_REPORT_TIMES},
                                                  {"prices", PNR_REPORT_PRICES},
                                                  {"availability", PNR_REPORT_AVAILABILITY},
                                                  {"cost", PNR_REPORT_COST}};
  auto* plan = app.add_subcommand("plan", "Rank every facility for a named profile");
  plan->add_option("scenario", scenario_path, "Scenario file")->required();
  plan->add_option("profile", profile, "Profile name")->required();
  plan->add_option("--perturb", perturb, "Add minutes to the access arcs of a facility, ID=+MIN")
      ->expected(1, -1);
  plan->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("table|csv|json (default table)");
  plan->add_option("--report", report, "Column set")
      ->transform(CLI::CheckedTransformer(reports, CLI::ignore_case).description(""))
      ->option_text("times|prices|availability|cost (default cost)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP JSON API");
  serve->add_option("scenario", scenario_path, "Scenario file")->required();
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));

  std::string output;
  auto* canon = app.add_subcommand("canon", "Rewrite a scenario in canonical form");
  canon->add_option("scenario", scenario_path, "Scenario file")->required();
  canon->add_option("-o,--output", output, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitDomain;
  }

  if (validate->parsed()) return cmd_validate(scenario_path);
  if (plan->parsed()) return cmd_plan(scenario_path, profile, perturb, format, report);
  if (serve->parsed()) return cmd_serve(scenario_path, host, port);
  if (canon->parsed()) return cmd_canon(scenario_path, output);
  return kExitDomain;
}
