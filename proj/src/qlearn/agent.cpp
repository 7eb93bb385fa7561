// SPDX-License-Identifier: Apache-2.0
#include "leomarket/qlearn/agent.hpp"

#include <cmath>
#include <stdexcept>

#include "leomarket/bytes.hpp"
#include "leomarket/error.hpp"

namespace leomarket::qlearn {

void Hyperparams::validate() const {
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("learning rate must lie in (0, 1]");
  }
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw std::invalid_argument("discount must lie in (0, 1]");
  }
  if (!(exploration >= 0.0 && exploration <= 1.0)) {
    throw std::invalid_argument("exploration must lie in [0, 1]");
  }
  if (batch_size == 0 || replay_capacity < batch_size) {
    throw std::invalid_argument("batch must be positive and fit the replay buffer");
  }
  if (target_sync_every <= 0 || episodes_per_round < 0 || steps_per_episode <= 0) {
    throw std::invalid_argument("sync period, episodes and steps must be positive");
  }
}

AgentAction select_action(const MdpState& s, const QNetwork& target, double exploration,
                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < exploration) {
    std::uniform_int_distribution<std::size_t> pick(0, kActionCount - 1);
    return kAllActions[pick(rng)];
  }
  return kAllActions[argmax(forward(target, s))];
}

double td_target(double reward, double discount, const MdpState& next, const QNetwork& basic,
                 const QNetwork& target) noexcept {
  const std::size_t chosen = argmax(forward(basic, next));
  return reward + discount * forward(target, next)[chosen];
}

void train_step(QNetwork& basic, std::span<const Experience> batch, const Hyperparams& hp,
                const QNetwork& target) {
  if (batch.empty()) throw std::invalid_argument("train_step needs a non-empty batch");
  std::vector<TdSample> samples;
  samples.reserve(batch.size());
  for (const auto& e : batch) {
    samples.push_back({e.state, e.action, td_target(e.reward, hp.discount, e.next_state, basic, target)});
  }
  const ParamArray grad = loss_gradient(basic, samples);
  for (double g : grad) {
    if (!std::isfinite(g)) throw Error(Errc::non_finite_gradient, "gradient has a non-finite entry");
  }
  auto& params = basic.params();
  for (std::size_t i = 0; i < kParamCount; ++i) params[i] -= hp.learning_rate * grad[i];
}

void sync_target(const QNetwork& basic, QNetwork& target) noexcept { target = basic; }

Agent::Agent(const QNetwork& initial, const Hyperparams& hp)
    : basic_(initial), target_(initial), memory_(hp.replay_capacity) {}

int RoundResult::reward_sum() const noexcept {
  int total = 0;
  for (const auto& ep : episodes) total += ep.reward_sum;
  return total;
}

RoundResult local_training_round(Agent& agent, Environment& env, const Hyperparams& hp,
                                 std::mt19937_64& rng) {
  RoundResult result;
  result.episodes.reserve(static_cast<std::size_t>(hp.episodes_per_round));
  for (int episode = 0; episode < hp.episodes_per_round; ++episode) {
    env.reset();
    MdpState state = env.observe();
    EpisodeTrace trace;
    for (int step = 0; step < hp.steps_per_episode; ++step) {
      const AgentAction action = select_action(state, agent.target(), hp.exploration, rng);
      const Transition t = env.step(action);
      agent.memory().push({state, action, t.next, t.reward});
      trace.reward_sum += t.reward;
      state = t.next;

      if (agent.memory().size() >= hp.batch_size) {
        const auto batch = agent.memory().sample(hp.batch_size, rng);
        train_step(agent.basic(), batch, hp, agent.target());
      }
      agent.count_step();
      if (agent.steps() % hp.target_sync_every == 0) sync_target(agent.basic(), agent.target());
    }
    const EnvReport report = env.report();
    trace.price = report.price;
    trace.revenue = report.revenue;
    result.episodes.push_back(trace);
  }
  result.params = agent.basic().params();
  return result;
}

EnvReport greedy_rollout(const Agent& agent, Environment& env, int steps) {
  std::mt19937_64 unused(0);
  env.reset();
  MdpState state = env.observe();
  for (int i = 0; i < steps; ++i) {
    state = env.step(select_action(state, agent.target(), 0.0, unused)).next;
  }
  return env.report();
}

std::vector<std::uint8_t> serialize(const QNetwork& net) {
  bytes::Writer w;
  const auto shape = QNetwork::shape();
  w.u32(static_cast<std::uint32_t>(shape.size()));
  for (auto s : shape) w.u32(s);
  for (double p : net.params()) w.f64(p);
  return std::move(w).take();
}

QNetwork deserialize(std::span<const std::uint8_t> in) {
  bytes::Reader r(in);
  const auto expected = QNetwork::shape();
  if (r.u32() != expected.size()) throw Error(Errc::shape_mismatch, "layer count differs");
  for (auto s : expected) {
    if (r.u32() != s) throw Error(Errc::shape_mismatch, "layer size differs");
  }
  QNetwork net;
  for (double& p : net.params()) p = r.f64();
  if (!r.done()) throw Error(Errc::parse, "trailing bytes after parameters");
  return net;
}

}  // namespace leomarket::qlearn
