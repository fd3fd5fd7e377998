#include "pnr/profile.hpp"

#include <cmath>
#include <string>

#include "pnr/error.hpp"

namespace pnr {

std::string_view to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::reservation: return "reservation";
    case ProfileKind::free_places_info: return "free_places_info";
    case ProfileKind::full_or_not_info: return "full_or_not_info";
    case ProfileKind::size_only: return "size_only";
  }
  return "?";
}

ProfileKind UserProfile::kind() const {
  if (gamma0 == 0.0) return ProfileKind::reservation;
  if (gamma[1] > 0.0) return ProfileKind::free_places_info;
  if (gamma[2] > 0.0) return ProfileKind::full_or_not_info;
  return ProfileKind::size_only;
}

ValidationReport validate_profile(const UserProfile& p) {
  ValidationReport r;
  auto weight = [&](const char* name, double w) {
    if (!(std::isfinite(w) && w >= 0.0))
      r.add(Rule::profile, name, std::string(name) + " must be finite and >= 0");
  };
  weight("alpha", p.alpha);
  weight("beta", p.beta);
  weight("gamma0", p.gamma0);
  if (!std::isfinite(p.depart_min) || p.depart_min < 0.0)
    r.add(Rule::profile, "depart_min", "departure must be finite and >= 0");

  double sum = 0.0;
  bool gammas_finite = true;
  for (std::size_t i = 0; i < p.gamma.size(); ++i) {
    const double g = p.gamma[i];
    const std::string name = "gamma" + std::to_string(i + 1);
    if (!(std::isfinite(g) && g >= 0.0 && g <= 1.0)) {
      r.add(Rule::profile, name, name + " must lie in [0, 1]");
      gammas_finite = gammas_finite && std::isfinite(g);
    }
    sum += g;
  }
  if (gammas_finite && std::abs(sum - 1.0) > kGammaSumTolerance)
    r.add(Rule::profile, "gamma", "gamma1..gamma4 must sum to 1 (sum is " + std::to_string(sum) + ")");

  if (p.gamma0 == 0.0 && (p.gamma[0] != 0.0 || p.gamma[1] != 0.0 || p.gamma[2] != 0.0))
    r.add(Rule::profile, "gamma",
          "reservation profile (gamma0 = 0) requires gamma1 = gamma2 = gamma3 = 0");
  if (p.gamma[1] > 0.0 && p.gamma[2] > 0.0)
    r.add(Rule::profile, "gamma", "gamma2/gamma3 mutually exclusive");

  if (!std::isfinite(p.lambda)) {
    r.add(Rule::profile, "lambda", "lambda must be finite");
  } else if (p.lambda < 0.0 || p.lambda > 1.0) {
    r.add(Rule::profile, "lambda", "lambda outside [0, 1]; the floor is vacuous or unattainable",
          Severity::warning);
  }

  const double weights = p.alpha + p.beta + p.gamma0;
  if (std::isfinite(weights) && std::abs(weights - 1.0) > kWeightSumWarnTolerance)
    r.add(Rule::profile, "alpha+beta+gamma0",
          "criteria weights sum to " + std::to_string(weights) + ", not 1", Severity::warning);

  r.sort();
  return r;
}

double attractiveness(const ParkingFacility& k, int slot, const UserProfile& p, std::int64_t big_q) {
  if (big_q <= 0) throw Error(Errc::domain, "attractiveness: Q must be positive");
  if (slot < 0 || static_cast<std::size_t>(slot) >= k.q1.size())
    throw Error(Errc::domain, "attractiveness: slot out of range for facility " + k.id);
  const double weighted = p.gamma[0] * k.q1[static_cast<std::size_t>(slot)] +
                          p.gamma[1] * static_cast<double>(k.q2) +
                          p.gamma[2] * static_cast<double>(k.q3) +
                          p.gamma[3] * static_cast<double>(k.q4);
  return weighted / static_cast<double>(big_q);
}

double non_attractiveness_cost(const ParkingFacility& k, int slot, const UserProfile& p,
                               std::int64_t big_q) {
  return p.gamma0 * (1.0 - attractiveness(k, slot, p, big_q));
}

}  // namespace pnr
