// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "leomarket/error.hpp"
#include "leomarket/qlearn/agent.hpp"

using namespace leomarket;
using namespace leomarket::qlearn;

namespace {

// Output biases only: Q(s) = b2 for every state.
QNetwork constant_q(const QValues& q) {
  QNetwork net;
  for (std::size_t a = 0; a < kActionCount; ++a) net.b2(a) = q[a];
  return net;
}

MdpState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return {u(rng), u(rng)};
}

// Price level on a 0..max grid; price_up earns +1 until saturation.
class ClimbEnv final : public Environment {
 public:
  explicit ClimbEnv(int max_level) : max_(max_level) {}
  void reset() override { level_ = 0; }
  MdpState observe() const override { return {level_ / double(max_), 0.0}; }
  Transition step(AgentAction a) override {
    const int before = level_;
    if (a == AgentAction::price_up) level_ = std::min(max_, level_ + 1);
    if (a == AgentAction::price_down) level_ = std::max(0, level_ - 1);
    return {observe(), reward(level_, before)};
  }
  EnvReport report() const override { return {double(level_), double(level_)}; }
  int level() const { return level_; }

 private:
  int max_;
  int level_ = 0;
};

Experience random_experience(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> a(0, 3);
  std::uniform_int_distribution<int> r(-1, 1);
  return {random_state(rng), kAllActions[static_cast<std::size_t>(a(rng))], random_state(rng), r(rng)};
}

bool near_kink(const QNetwork& net, const std::vector<TdSample>& batch, double margin) {
  for (const auto& b : batch) {
    for (std::size_t j = 0; j < kHidden; ++j) {
      const double z = net.w1(j, 0) * b.state.price + net.w1(j, 1) * b.state.utility + net.b1(j);
      if (std::abs(z) < margin) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("reward is the sign of the utility change") {
  CHECK(reward(5, 4) == 1);
  CHECK(reward(4, 4) == 0);
  CHECK(reward(3, 4) == -1);
  CHECK(reward(4.0 + 1e-10, 4.0) == 0);
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    const int r = reward(n(rng), n(rng));
    CHECK((r == -1 || r == 0 || r == 1));
  }
}

TEST_CASE("forward pass") {
  QNetwork zero;
  CHECK(forward(zero, {0.3, 0.7}) == QValues{0, 0, 0, 0});

  // One hidden unit copies the price input; action 2 reads it with weight 2.
  QNetwork net;
  net.w1(0, 0) = 1.0;
  net.b1(0) = 0.5;
  net.w2(2, 0) = 2.0;
  net.b2(1) = -1.0;
  const auto q = forward(net, {0.25, 0.9});
  CHECK(q[0] == 0.0);
  CHECK(q[1] == -1.0);
  CHECK(q[2] == doctest::Approx(1.5));
  CHECK(q[3] == 0.0);
  net.b1(0) = -1.0;  // unit switched off by the rectifier
  CHECK(forward(net, {0.25, 0.9})[2] == 0.0);

  std::mt19937_64 rng(2);
  const auto g = QNetwork::glorot(rng);
  CHECK(forward(g, {0.1, 0.2}) == forward(g, {0.1, 0.2}));
}

TEST_CASE("glorot initialisation bounds") {
  std::mt19937_64 rng(3);
  const auto net = QNetwork::glorot(rng);
  const double l1 = std::sqrt(6.0 / (kStateDim + kHidden));
  const double l2 = std::sqrt(6.0 / (kHidden + kActionCount));
  for (std::size_t j = 0; j < kHidden; ++j) {
    CHECK(net.b1(j) == 0.0);
    for (std::size_t i = 0; i < kStateDim; ++i) CHECK(std::abs(net.w1(j, i)) <= l1);
    for (std::size_t a = 0; a < kActionCount; ++a) CHECK(std::abs(net.w2(a, j)) <= l2);
  }
  for (std::size_t a = 0; a < kActionCount; ++a) CHECK(net.b2(a) == 0.0);
}

TEST_CASE("greedy selection") {
  std::mt19937_64 rng(4);
  CHECK(select_action({}, constant_q({0.1, 0.9, 0.2, 0.3}), 0.0, rng) == AgentAction::price_up);
  CHECK(select_action({}, constant_q({1, 1, 1, 1}), 0.0, rng) == AgentAction::price_down);

  // Adding a constant to every value never changes the greedy choice.
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const QValues q{u(rng), u(rng), u(rng), u(rng)};
    const double c = u(rng);
    CHECK(select_action({}, constant_q(q), 0.0, rng) ==
          select_action({}, constant_q({q[0] + c, q[1] + c, q[2] + c, q[3] + c}), 0.0, rng));
  }
}

TEST_CASE("fully random selection is uniform") {
  std::mt19937_64 rng(5);
  std::array<int, 4> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) ++counts[index_of(select_action({}, constant_q({0, 9, 0, 0}), 1.0, rng))];
  const double mean = n / 4.0;
  const double sigma = std::sqrt(n * 0.25 * 0.75);
  for (int c : counts) CHECK(std::abs(c - mean) <= 3.0 * sigma);
}

TEST_CASE("double-Q target") {
  const QNetwork basic = constant_q({0.0, 5.0, 1.0, 2.0});  // picks action 1
  const QNetwork target = constant_q({9.0, 2.0, 3.0, 4.0});  // would pick action 0
  CHECK(td_target(1.0, 0.95, {}, basic, target) == doctest::Approx(1.0 + 0.95 * 2.0));
  CHECK(td_target(1.0, 0.95, {}, constant_q({0, 0, 2, 0}), constant_q({0, 0, 2, 0})) ==
        doctest::Approx(2.9));
  CHECK(td_target(-1.0, 0.0, {}, basic, target) == -1.0);

  // Only the target entry at the basic argmax matters.
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    QValues t{u(rng), u(rng), u(rng), u(rng)};
    const double y = td_target(0.5, 0.9, {}, basic, constant_q(t));
    for (std::size_t a : {0, 2, 3}) t[a] = u(rng);
    CHECK(td_target(0.5, 0.9, {}, basic, constant_q(t)) == y);
  }
}

TEST_CASE("analytic gradient matches central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    QNetwork net;
    std::vector<TdSample> batch;
    // Central differences are meaningless across a rectifier kink, so redraw
    // until every pre-activation is clear of zero.
    do {
      net = QNetwork::glorot(rng);
      for (std::size_t j = 0; j < kHidden; ++j) net.b1(j) = 0.3 * u(rng);
      batch.clear();
      for (int b = 0; b < 8; ++b) {
        batch.push_back({random_state(rng), kAllActions[static_cast<std::size_t>(b % 4)], 2.0 * u(rng)});
      }
    } while (near_kink(net, batch, 1e-3));
    const auto g = loss_gradient(net, batch);
    double num2 = 0.0;
    double den2 = 0.0;
    for (std::size_t p = 0; p < kParamCount; ++p) {
      const double h = 1e-5;
      QNetwork plus = net;
      QNetwork minus = net;
      plus.params()[p] += h;
      minus.params()[p] -= h;
      const double fd = (batch_loss(plus, batch) - batch_loss(minus, batch)) / (2.0 * h);
      num2 += (fd - g[p]) * (fd - g[p]);
      den2 += std::max(fd * fd, g[p] * g[p]);
    }
    const double rel = std::sqrt(num2) / std::max(std::sqrt(den2), 1e-12);
    if (!(rel < 1e-4)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("train step") {
  Hyperparams hp;
  std::mt19937_64 rng(8);
  const QNetwork target = QNetwork::glorot(rng);

  // Targets already met: with gamma = 0 the target is the reward itself.
  QNetwork exact = constant_q({1.0, 1.0, 1.0, 1.0});
  const QNetwork before = exact;
  Hyperparams myopic = hp;
  myopic.discount = 0.0;
  std::vector<Experience> met{{{0.2, 0.3}, AgentAction::price_up, {0.4, 0.1}, 1}};
  train_step(exact, met, myopic, target);
  CHECK(exact == before);

  // A single step lowers the loss for a small learning rate.
  QNetwork net = QNetwork::glorot(rng);
  const Experience e{{0.5, 0.5}, AgentAction::power_up, {0.6, 0.5}, 1};
  const double y = td_target(e.reward, hp.discount, e.next_state, net, target);
  const std::vector<TdSample> sample{{e.state, e.action, y}};
  const double loss_before = batch_loss(net, sample);
  const std::vector<Experience> one{e};
  train_step(net, one, hp, target);
  CHECK(batch_loss(net, sample) < loss_before);

  // With Q = b2[a] the update is w' = w - 2l(w - y), the tabular blend with weight 2l.
  QNetwork tab = constant_q({0.0, 0.7, 0.0, 0.0});
  const QNetwork frozen = constant_q({0.0, 0.0, 0.0, 0.0});
  const std::vector<Experience> step{{{0.1, 0.1}, AgentAction::price_up, {0.1, 0.1}, 1}};
  train_step(tab, step, hp, frozen);
  const double l = hp.learning_rate;
  CHECK(tab.b2(1) == doctest::Approx((1.0 - 2.0 * l) * 0.7 + 2.0 * l * 1.0).epsilon(1e-14));

  CHECK_THROWS_AS(train_step(net, std::vector<Experience>{}, hp, target), std::invalid_argument);
  QNetwork broken = net;
  broken.b2(0) = std::numeric_limits<double>::infinity();
  const std::vector<Experience> hit{{{0.1, 0.1}, AgentAction::price_down, {0.1, 0.1}, 1}};
  try {
    train_step(broken, hit, hp, target);
    FAIL("expected NonFiniteGradient");
  } catch (const Error& err) {
    CHECK(err.code() == Errc::non_finite_gradient);
  }
}

TEST_CASE("target sync is a deep copy") {
  std::mt19937_64 rng(9);
  QNetwork basic = QNetwork::glorot(rng);
  QNetwork target;
  sync_target(basic, target);
  CHECK(target == basic);
  const auto s = random_state(rng);
  CHECK(forward(target, s) == forward(basic, s));
  basic.b2(0) += 1.0;
  CHECK_FALSE(target == basic);
  QNetwork again = target;
  sync_target(target, again);
  CHECK(again == target);
}

TEST_CASE("replay buffer keeps the newest entries in order") {
  ReplayBuffer buf(5);
  for (int i = 0; i < 12; ++i) buf.push({{double(i), 0.0}, AgentAction::price_down, {}, 0});
  CHECK(buf.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(buf.at(i).state.price == 7.0 + double(i));

  std::mt19937_64 rng(10);
  const auto s = buf.sample(5, rng);
  std::vector<double> prices;
  for (const auto& e : s) prices.push_back(e.state.price);
  std::sort(prices.begin(), prices.end());
  CHECK(prices == std::vector<double>{7, 8, 9, 10, 11});
  CHECK_THROWS(buf.sample(6, rng));
}

TEST_CASE("replay sampling is uniform") {
  ReplayBuffer buf(20);
  for (int i = 0; i < 20; ++i) buf.push({{double(i), 0.0}, AgentAction::price_down, {}, 0});
  std::mt19937_64 rng(11);
  std::array<int, 20> counts{};
  const int rounds = 5000;
  for (int r = 0; r < rounds; ++r) {
    for (const auto& e : buf.sample(4, rng)) ++counts[static_cast<std::size_t>(e.state.price)];
  }
  const double p = 4.0 / 20.0;
  const double mean = rounds * p;
  const double sigma = std::sqrt(rounds * p * (1 - p));
  for (int c : counts) CHECK(std::abs(c - mean) <= 4.0 * sigma);
}

TEST_CASE("local training round") {
  Hyperparams hp;
  hp.exploration = 0.0;
  hp.episodes_per_round = 3;
  hp.steps_per_episode = 20;

  SUBCASE("a climbing environment saturates at the top level") {
    Agent agent(constant_q({0.0, 1.0, 0.0, 0.0}), hp);
    ClimbEnv env(10);
    std::mt19937_64 rng(12);
    const auto r = local_training_round(agent, env, hp, rng);
    CHECK(env.level() == 10);
    CHECK(r.episodes.size() == 3);
    CHECK(r.episodes.back().price == 10.0);
    CHECK(agent.steps() == 60);
  }

  SUBCASE("zero episodes leave the parameters alone") {
    Hyperparams none = hp;
    none.episodes_per_round = 0;
    std::mt19937_64 init(13);
    const QNetwork start = QNetwork::glorot(init);
    Agent agent(start, none);
    ClimbEnv env(10);
    std::mt19937_64 rng(14);
    const auto r = local_training_round(agent, env, none, rng);
    CHECK(r.episodes.empty());
    CHECK(r.params == start.params());
  }

  SUBCASE("same seed, same trace") {
    Hyperparams noisy = hp;
    noisy.exploration = 0.3;
    auto run = [&] {
      std::mt19937_64 init(15);
      Agent agent(QNetwork::glorot(init), noisy);
      ClimbEnv env(10);
      std::mt19937_64 rng(16);
      return local_training_round(agent, env, noisy, rng);
    };
    const auto a = run();
    const auto b = run();
    CHECK(a.params == b.params);
    REQUIRE(a.episodes.size() == b.episodes.size());
    for (std::size_t i = 0; i < a.episodes.size(); ++i) {
      CHECK(a.episodes[i].reward_sum == b.episodes[i].reward_sum);
      CHECK(a.episodes[i].price == b.episodes[i].price);
    }
  }
}

TEST_CASE("random experiences train without blowing up") {
  Hyperparams hp;
  std::mt19937_64 rng(17);
  QNetwork basic = QNetwork::glorot(rng);
  const QNetwork target = basic;
  for (int i = 0; i < 200; ++i) {
    std::vector<Experience> batch;
    for (int b = 0; b < 16; ++b) batch.push_back(random_experience(rng));
    train_step(basic, batch, hp, target);
  }
  for (double p : basic.params()) CHECK(std::isfinite(p));
}

TEST_CASE("parameter serialization") {
  std::mt19937_64 rng(18);
  const QNetwork net = QNetwork::glorot(rng);
  const auto bytes = serialize(net);
  CHECK(bytes.size() == 4 + 3 * 4 + kParamCount * 8);
  CHECK(bytes[0] == 3);
  CHECK(bytes[4] == 2);
  CHECK(bytes[8] == 16);
  CHECK(bytes[12] == 4);
  CHECK(deserialize(bytes) == net);

  auto wrong = bytes;
  wrong[8] = 8;
  try {
    deserialize(wrong);
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::shape_mismatch);
  }
  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(deserialize(truncated), Error);
}
