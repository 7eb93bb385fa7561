// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace leomarket::market {

/// Users lease zero or one channel per round.
inline constexpr int kMaxChannelsPerUser = 1;

enum class Misbehavior : std::uint8_t {
  none,
  power_exceed,      // transmits above the declared power after leasing
  over_count,        // access count beyond the contract
  duration_violate,  // holds the lease too long or too short
};

std::string_view to_string(Misbehavior m) noexcept;
Misbehavior misbehavior_from_string(std::string_view s);

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct TerrestrialUser {
  int id = 0;
  Position position;
  double budget = 0.0;          // price units
  double required_power = 0.1;  // W
  double active_factor = 1.0;
  Misbehavior misbehavior = Misbehavior::none;

  bool malicious() const noexcept { return misbehavior != Misbehavior::none; }
};

/// Saturating integer level on a uniform grid: value = level * step.
struct LevelGrid {
  int level = 0;
  int min_level = 0;
  int max_level = 0;
  double step = 1.0;

  double value() const noexcept { return level * step; }
  /// Returns true when the level actually changed.
  bool move(int delta) noexcept;
};

/// Price P_s = level * step, levels in [0, max_level].
struct PriceSchedule : LevelGrid {
  double price() const noexcept { return value(); }
};

/// Uplink transmit-power limit l_s * step (W); min_level >= 1 keeps the limit positive.
struct PowerControl : LevelGrid {
  double limit() const noexcept { return value(); }
};

struct LeaseOutcome {
  std::vector<std::uint8_t> indicators;
  double revenue = 0.0;
  int accepted = 0;   // compliant leasers (N_acc)
  int malicious = 0;  // leasers whose misbehavior triggered (N_mal)

  int leasers() const noexcept { return accepted + malicious; }
};

double budget_from_sinr(double zeta, double sinr);

bool lease_indicator(double price, const TerrestrialUser& user, double power_limit) noexcept;

double user_utility(const TerrestrialUser& user, double price) noexcept;

/// Uniform-price leasing round. `max_leases` caps the number of leasers (taken
/// in user order); unset means every willing user leases.
LeaseOutcome round_revenue(double price, std::span<const TerrestrialUser> users,
                           double power_limit, std::optional<int> max_leases = std::nullopt);

/// u_s: leasing revenue plus the blockchain contribution reward.
double satellite_utility(const LeaseOutcome& outcome, double chain_reward) noexcept;

/// u'_s: the part of the utility the learning state sees (no blockchain reward).
double learning_utility(const LeaseOutcome& outcome) noexcept;

struct PriceOptimum {
  double price = 0.0;
  double revenue = 0.0;
};

/// Exhaustive revenue maximum over the eligible users' budgets, ties toward
/// the lower price. Throws NoEligibleUsers when nobody passes the power gate.
PriceOptimum optimal_price_oracle(std::span<const TerrestrialUser> users, double power_limit,
                                  std::optional<int> max_leases = std::nullopt);

}  // namespace leomarket::market
