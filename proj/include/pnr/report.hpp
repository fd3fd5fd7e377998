#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnr/planner.hpp"

namespace pnr {

/// Column sets, one per table layout.
enum class ReportKind {
  times,         // drive, transit, wait, egress, total minutes
  prices,        // fee, fare, total price
  availability,  // q1..q4, Q, attractiveness
  cost,          // weights with weighted components and total cost
};

enum class OutputFormat { table, csv, json };

std::optional<ReportKind> parse_report_kind(std::string_view s);
std::optional<OutputFormat> parse_output_format(std::string_view s);

struct RankRow {
  std::string parking;
  int rank = 0;  // 1-based position in the plan ranking
  Feasibility feasibility = Feasibility::unreachable;
  bool reachable = false;

  double time_to_park = 0.0;
  double time_in_park = 0.0;
  double wait = 0.0;
  double time_to_destination = 0.0;  // egress minutes excluding the wait
  double total_time = 0.0;

  double fee = 0.0;
  double fare = 0.0;
  double total_price = 0.0;

  double q1 = 0.0;  // at the entry slot
  std::int64_t q2 = 0;
  std::int64_t q3 = 0;
  std::int64_t q4 = 0;
  std::int64_t big_q = 0;
  double attractiveness = 0.0;

  double weighted_time = 0.0;
  double weighted_price = 0.0;
  double nonattr = 0.0;  // gamma0-weighted
  double total_cost = 0.0;
};

/// Rows in ascending facility id.
struct RankTable {
  UserProfile profile;
  std::optional<std::string> best;
  std::optional<double> best_total;
  std::vector<RankRow> rows;
};

RankTable make_rank_table(const MultimodalNetwork& net, const UserProfile& p, const Plan& plan);

/// Fixed-width text with two decimals, followed by a "best:" line.
std::string render_table(const RankTable& t, ReportKind kind);

/// Header plus one line per facility, two decimals.
std::string render_csv(const RankTable& t, ReportKind kind);

/// {"best", "best_total", "profile", "ranking": [rows], "legs": [...]} with
/// full precision. The same document is served by POST /api/plan.
std::string render_json(const MultimodalNetwork& net, const RankTable& t, const Plan& plan);

}  // namespace pnr
