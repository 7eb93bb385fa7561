// SPDX-License-Identifier: Apache-2.0
#include "leomarket/market.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "leomarket/error.hpp"

namespace leomarket::market {

std::string_view to_string(Misbehavior m) noexcept {
  switch (m) {
    case Misbehavior::none: return "none";
    case Misbehavior::power_exceed: return "power-exceed";
    case Misbehavior::over_count: return "over-count";
    case Misbehavior::duration_violate: return "duration-violate";
  }
  return "none";
}

Misbehavior misbehavior_from_string(std::string_view s) {
  for (auto m : {Misbehavior::none, Misbehavior::power_exceed, Misbehavior::over_count,
                 Misbehavior::duration_violate}) {
    if (to_string(m) == s) return m;
  }
  throw Error(Errc::parse, "unknown misbehavior '" + std::string(s) + "'");
}

bool LevelGrid::move(int delta) noexcept {
  const int next = std::clamp(level + delta, min_level, max_level);
  const bool changed = next != level;
  level = next;
  return changed;
}

double budget_from_sinr(double zeta, double sinr) {
  if (zeta <= 0.0 || sinr <= 0.0) throw std::invalid_argument("zeta and sinr must be positive");
  return zeta * sinr;
}

bool lease_indicator(double price, const TerrestrialUser& user, double power_limit) noexcept {
  return price <= user.budget && user.required_power <= power_limit;
}

double user_utility(const TerrestrialUser& user, double price) noexcept {
  return user.budget - price;
}

LeaseOutcome round_revenue(double price, std::span<const TerrestrialUser> users,
                           double power_limit, std::optional<int> max_leases) {
  if (users.empty()) throw std::invalid_argument("round_revenue needs at least one user");
  LeaseOutcome out;
  out.indicators.assign(users.size(), 0);
  const int cap = max_leases.value_or(static_cast<int>(users.size()));
  for (std::size_t i = 0; i < users.size() && out.leasers() < cap; ++i) {
    if (!lease_indicator(price, users[i], power_limit)) continue;
    out.indicators[i] = 1;
    // Detected malice still pays; the penalty goes through reputation.
    if (users[i].malicious()) {
      ++out.malicious;
    } else {
      ++out.accepted;
    }
  }
  out.revenue = price * out.leasers();
  return out;
}

double satellite_utility(const LeaseOutcome& outcome, double chain_reward) noexcept {
  return outcome.revenue + chain_reward;
}

double learning_utility(const LeaseOutcome& outcome) noexcept { return outcome.revenue; }

PriceOptimum optimal_price_oracle(std::span<const TerrestrialUser> users, double power_limit,
                                  std::optional<int> max_leases) {
  std::vector<double> budgets;
  for (const auto& u : users) {
    if (u.required_power <= power_limit) budgets.push_back(u.budget);
  }
  if (budgets.empty()) throw Error(Errc::no_eligible_users, "no user passes the power gate");
  std::sort(budgets.begin(), budgets.end());

  const auto n = static_cast<int>(budgets.size());
  const int cap = max_leases.value_or(n);
  PriceOptimum best{budgets.front(), -1.0};
  for (int i = 0; i < n; ++i) {
    // Equal budgets: the first occurrence counts every tied user.
    if (i > 0 && budgets[i] == budgets[i - 1]) continue;
    const double revenue = budgets[i] * std::min(n - i, cap);
    if (revenue > best.revenue) best = {budgets[i], revenue};
  }
  return best;
}

}  // namespace leomarket::market
