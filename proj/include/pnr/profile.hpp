#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "pnr/network.hpp"
#include "pnr/validation.hpp"

namespace pnr {

enum class ProfileKind { reservation, free_places_info, full_or_not_info, size_only };

std::string_view to_string(ProfileKind k);

/// Weights of the generalized cost (alpha: minutes, beta: euros, gamma0:
/// non-attractiveness) and of the attractiveness signals
/// gamma = (future free places, free places now, full-or-not, size).
struct UserProfile {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma0 = 0.0;
  std::array<double, 4> gamma{0.0, 0.0, 0.0, 1.0};
  double lambda = 0.0;      // minimum accepted attractiveness of the chosen facility
  double depart_min = 0.0;  // departure instant, minutes after the start of slot 0

  /// Derived from the weights; meaningful for valid profiles.
  ProfileKind kind() const;

  friend bool operator==(const UserProfile&, const UserProfile&) = default;
};

inline constexpr double kGammaSumTolerance = 1e-9;
inline constexpr double kWeightSumWarnTolerance = 1e-6;

/// Errors: negative or non-finite weights, gamma_i outside [0,1], gamma
/// sum != 1, reservation profiles (gamma0 = 0) with availability weights,
/// gamma2 and gamma3 both positive. Warnings: alpha + beta + gamma0 != 1,
/// lambda outside [0,1].
ValidationReport validate_profile(const UserProfile& p);

/// (g1*q1[t] + g2*q2 + g3*q3 + g4*q4) / Q. Throws Error(domain) when Q <= 0
/// or the slot is out of range.
double attractiveness(const ParkingFacility& k, int slot, const UserProfile& p, std::int64_t big_q);

/// gamma0 * (1 - attractiveness).
double non_attractiveness_cost(const ParkingFacility& k, int slot, const UserProfile& p,
                               std::int64_t big_q);

}  // namespace pnr
