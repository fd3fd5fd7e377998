#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pnr {

/// Categories of problems found by network and profile validation.
///
/// R1..R4 are the four arc-construction rules of the park-and-ride graph:
///   R1  no arc enters the origin and every arc leaving it is private-vehicle
///   R2  no arc leaves the destination and no private-vehicle arc enters it
///   R3  parking entries are entered by private vehicle only and have the
///       single transit arc to their own exit; exits are entered only by that
///       transit arc and left by non-private modes only
///   R4  every intermediate node sees one transport mode on all incident arcs
enum class Rule {
  R1,
  R2,
  R3,
  R4,
  structure,       // node partition, ids, references
  data,            // per-arc / per-parking numeric data
  zero_cost_cycle,
  profile,
};

enum class Severity { error, warning };

std::string_view to_string(Rule rule);

struct Violation {
  Rule rule;
  Severity severity = Severity::error;
  std::string subject;  // node / arc / facility / parameter the finding is about
  std::string message;

  friend auto operator<=>(const Violation&, const Violation&) = default;
};

class ValidationReport {
 public:
  void add(Rule rule, std::string subject, std::string message,
           Severity severity = Severity::error);

  /// True when no error-severity finding is present; warnings are allowed.
  bool ok() const;
  bool empty() const { return items_.empty(); }
  std::size_t count(Rule rule) const;
  std::size_t error_count() const;

  const std::vector<Violation>& items() const { return items_; }

  /// Orders findings by (rule, subject, message) so reports compare stably.
  void sort();

  /// One finding per line, e.g. "error R1 [O->S]: walk arc leaves the origin".
  std::string to_string() const;

 private:
  std::vector<Violation> items_;
};

}  // namespace pnr
