#pragma once

#include <string>

#include "json.hpp"
#include "pnr/profile.hpp"

namespace pnr::detail {

/// {"alpha", "beta", "gamma0", "gamma": [4], "lambda", "depart_min"}; throws
/// ScenarioError(parse) naming `where` on schema problems.
UserProfile parse_profile(const nlohmann::json& v, const std::string& where);
nlohmann::json profile_json(const UserProfile& p);

}  // namespace pnr::detail
