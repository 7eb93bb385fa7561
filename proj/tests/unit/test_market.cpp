// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "leomarket/error.hpp"
#include "leomarket/market.hpp"

using namespace leomarket;
using namespace leomarket::market;

namespace {

std::vector<TerrestrialUser> with_budgets(std::initializer_list<double> budgets) {
  std::vector<TerrestrialUser> users;
  int id = 0;
  for (double b : budgets) {
    TerrestrialUser u;
    u.id = id++;
    u.budget = b;
    u.required_power = 0.1;
    users.push_back(u);
  }
  return users;
}

std::vector<TerrestrialUser> random_users(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> budget(0.0, 20.0);
  std::uniform_real_distribution<double> power(0.1, 1.0);
  std::vector<TerrestrialUser> users(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    users[static_cast<std::size_t>(i)].id = i;
    users[static_cast<std::size_t>(i)].budget = budget(rng);
    users[static_cast<std::size_t>(i)].required_power = power(rng);
  }
  return users;
}

}  // namespace

TEST_CASE("budget is proportional to SINR") {
  CHECK(budget_from_sinr(1.0, 10.0) == 10.0);
  CHECK(budget_from_sinr(2.0, 10.0) == 20.0);
  CHECK_THROWS_AS(budget_from_sinr(0.0, 10.0), std::invalid_argument);
  CHECK_THROWS_AS(budget_from_sinr(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("lease indicator") {
  TerrestrialUser u;
  u.budget = 10.0;
  u.required_power = 0.3;
  CHECK(lease_indicator(5.0, u, 0.5));
  CHECK(lease_indicator(10.0, u, 0.5));  // equality leases
  CHECK_FALSE(lease_indicator(10.5, u, 0.5));
  CHECK_FALSE(lease_indicator(5.0, u, 0.2));
}

TEST_CASE("user utility") {
  TerrestrialUser u;
  u.budget = 10.0;
  CHECK(user_utility(u, 4.0) == 6.0);
  CHECK(user_utility(u, 10.0) == 0.0);
  u.budget = 3.0;
  CHECK(user_utility(u, 5.0) == -2.0);
  CHECK_FALSE(lease_indicator(5.0, u, 1.0));
}

TEST_CASE("round revenue") {
  auto users = with_budgets({3, 5, 8});
  auto out = round_revenue(5.0, users, 1.0);
  CHECK(out.indicators == std::vector<std::uint8_t>{0, 1, 1});
  CHECK(out.revenue == 10.0);
  CHECK(round_revenue(9.0, users, 1.0).revenue == 0.0);

  users[2].misbehavior = Misbehavior::power_exceed;
  out = round_revenue(5.0, users, 1.0);
  CHECK(out.malicious == 1);
  CHECK(out.accepted == 1);
  CHECK(out.revenue == 10.0);  // the cheat still pays

  out = round_revenue(3.0, users, 1.0, 2);
  CHECK(out.leasers() == 2);
  CHECK(out.indicators == std::vector<std::uint8_t>{1, 1, 0});
}

TEST_CASE("satellite and learning utility") {
  LeaseOutcome o;
  o.revenue = 10.0;
  CHECK(satellite_utility(o, 0.0) == 10.0);
  CHECK(satellite_utility(o, 5.0) == 15.0);
  CHECK(learning_utility(o) == 10.0);
}

TEST_CASE("level grids saturate") {
  PriceSchedule p;
  p.level = 0;
  p.max_level = 2;
  p.step = 1.5;
  CHECK_FALSE(p.move(-1));
  CHECK(p.level == 0);
  CHECK(p.move(+1));
  CHECK(p.move(+1));
  CHECK_FALSE(p.move(+1));
  CHECK(p.price() == 3.0);

  PowerControl w;
  w.level = 1;
  w.min_level = 1;
  w.max_level = 10;
  w.step = 0.1;
  CHECK_FALSE(w.move(-1));
  CHECK(w.limit() == doctest::Approx(0.1));
}

TEST_CASE("misbehavior names round-trip") {
  for (auto m : {Misbehavior::none, Misbehavior::power_exceed, Misbehavior::over_count,
                 Misbehavior::duration_violate}) {
    CHECK(misbehavior_from_string(to_string(m)) == m);
  }
  CHECK_THROWS(misbehavior_from_string("bogus"));
}

TEST_CASE("optimal price oracle examples") {
  auto best = optimal_price_oracle(with_budgets({3, 5, 8}), 1.0);
  CHECK(best.price == 5.0);
  CHECK(best.revenue == 10.0);
  best = optimal_price_oracle(with_budgets({7}), 1.0);
  CHECK(best.price == 7.0);
  CHECK(best.revenue == 7.0);
  best = optimal_price_oracle(with_budgets({4, 4, 4}), 1.0);
  CHECK(best.price == 4.0);
  CHECK(best.revenue == 12.0);
  // 2 * 2 == 4 * 1: the lower price wins.
  best = optimal_price_oracle(with_budgets({2, 4}), 1.0);
  CHECK(best.price == 2.0);

  auto users = with_budgets({5});
  users[0].required_power = 0.9;
  try {
    optimal_price_oracle(users, 0.5);
    FAIL("expected NoEligibleUsers");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::no_eligible_users);
  }
}

TEST_CASE("revenue identity on a price grid") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto users = random_users(rng, 1 + trial % 40);
    for (int k = 0; k < 100; ++k) {
      const double price = 0.2 * k;
      const auto out = round_revenue(price, users, 0.6);
      int leasers = 0;
      for (const auto& u : users) leasers += lease_indicator(price, u, 0.6) ? 1 : 0;
      REQUIRE(out.revenue == price * leasers);
      for (std::size_t i = 0; i < users.size(); ++i) {
        if (out.indicators[i]) REQUIRE(user_utility(users[i], price) >= 0.0);
      }
    }
  }
}

TEST_CASE("oracle beats every budget and matches exhaustive enumeration") {
  std::mt19937_64 rng(12);
  for (int n = 1; n <= 50; ++n) {
    const auto users = random_users(rng, n);
    const double limit = 0.7;
    bool any = false;
    for (const auto& u : users) any = any || u.required_power <= limit;
    if (!any) continue;
    const auto best = optimal_price_oracle(users, limit);
    double enum_price = 0.0;
    double enum_revenue = -1.0;
    std::set<double> budgets;
    for (const auto& u : users) budgets.insert(u.budget);
    for (double p : budgets) {
      const double r = round_revenue(p, users, limit).revenue;
      REQUIRE(r <= best.revenue);
      if (r > enum_revenue) {
        enum_revenue = r;
        enum_price = p;
      }
    }
    CHECK(best.revenue == enum_revenue);
    CHECK(best.price == enum_price);
    CHECK(budgets.contains(best.price));
  }
}

TEST_CASE("scaling budgets and price scales revenue") {
  std::mt19937_64 rng(13);
  auto users = random_users(rng, 30);
  const auto base = round_revenue(7.0, users, 1.0);
  for (auto& u : users) u.budget *= 4.0;
  const auto scaled = round_revenue(28.0, users, 1.0);
  CHECK(scaled.indicators == base.indicators);
  CHECK(scaled.revenue == doctest::Approx(4.0 * base.revenue));
}
