#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pnr/error.hpp"
#include "pnr/network.hpp"
#include "pnr/profile.hpp"
#include "pnr/validation.hpp"

namespace pnr {

struct ExpectedRow {
  std::optional<double> total_time;
  std::optional<double> total_price;
  std::optional<double> nonattr;
  std::optional<double> total_cost;

  friend bool operator==(const ExpectedRow&, const ExpectedRow&) = default;
};

/// Golden outcome of planning one named profile.
struct Expectation {
  std::optional<std::string> best;  // facility id; nullopt means "no feasible plan"
  std::optional<double> best_total;
  double tolerance = 0.01;
  std::map<std::string, ExpectedRow> rows;  // by facility id

  friend bool operator==(const Expectation&, const Expectation&) = default;
};

struct Scenario {
  std::string name;
  std::string description;
  MultimodalNetwork network;
  std::map<std::string, UserProfile> profiles;
  std::map<std::string, Expectation> expectations;  // by profile name

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Load failure. For Errc::validation the full report is attached.
class ScenarioError : public Error {
 public:
  ScenarioError(Errc code, const std::string& what, ValidationReport report = {})
      : Error(code, what), report_(std::move(report)) {}

  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

/// Parses and fully validates a scenario document (network, every profile,
/// expectation references). Throws ScenarioError.
Scenario load_scenario(std::string_view text);

/// Reads a file and calls load_scenario; I/O failure is Errc::io.
Scenario load_scenario_file(const std::string& path);

/// Canonical form: sorted keys, two-space indentation, shortest round-trip
/// number formatting, trailing newline.
std::string save_scenario(const Scenario& s);

/// Validation used by load_scenario, exposed for already-built scenarios.
ValidationReport validate_scenario(const Scenario& s);

}  // namespace pnr
