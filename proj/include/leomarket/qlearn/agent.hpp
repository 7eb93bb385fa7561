// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "leomarket/qlearn/mdp.hpp"
#include "leomarket/qlearn/network.hpp"
#include "leomarket/qlearn/replay.hpp"

namespace leomarket::qlearn {

struct Hyperparams {
  double learning_rate = 0.001;
  double exploration = 0.2;  // probability of a uniformly random action
  std::size_t batch_size = 16;
  double discount = 0.95;
  int target_sync_every = 50;  // steps
  int episodes_per_round = 10;
  int steps_per_episode = 20;
  std::size_t replay_capacity = 10000;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct Transition {
  MdpState next;
  int reward = 0;
};

/// Raw (unnormalized) quantities for traces.
struct EnvReport {
  double price = 0.0;
  double revenue = 0.0;
};

class Environment {
 public:
  virtual ~Environment() = default;
  /// Puts the environment back in its initial state.
  virtual void reset() = 0;
  virtual MdpState observe() const = 0;
  virtual Transition step(AgentAction action) = 0;
  virtual EnvReport report() const = 0;
};

/// Epsilon-greedy over the target network's values.
AgentAction select_action(const MdpState& s, const QNetwork& target, double exploration,
                          std::mt19937_64& rng);

/// Double-Q target: the basic network picks the next action, the target
/// network evaluates it.
double td_target(double reward, double discount, const MdpState& next, const QNetwork& basic,
                 const QNetwork& target) noexcept;

/// One gradient-descent step on the squared TD error of `batch`.
/// Throws NonFiniteGradient.
void train_step(QNetwork& basic, std::span<const Experience> batch, const Hyperparams& hp,
                const QNetwork& target);

void sync_target(const QNetwork& basic, QNetwork& target) noexcept;

class Agent {
 public:
  Agent(const QNetwork& initial, const Hyperparams& hp);

  QNetwork& basic() noexcept { return basic_; }
  const QNetwork& basic() const noexcept { return basic_; }
  QNetwork& target() noexcept { return target_; }
  const QNetwork& target() const noexcept { return target_; }
  ReplayBuffer& memory() noexcept { return memory_; }
  const ReplayBuffer& memory() const noexcept { return memory_; }

  std::int64_t steps() const noexcept { return steps_; }
  void count_step() noexcept { ++steps_; }

 private:
  QNetwork basic_;
  QNetwork target_;
  ReplayBuffer memory_;
  std::int64_t steps_ = 0;
};

struct EpisodeTrace {
  int reward_sum = 0;
  double price = 0.0;
  double revenue = 0.0;
};

struct RoundResult {
  ParamArray params{};
  std::vector<EpisodeTrace> episodes;

  int reward_sum() const noexcept;
};

/// E episodes of observe / act / store / replay-train, target sync every f steps.
RoundResult local_training_round(Agent& agent, Environment& env, const Hyperparams& hp,
                                 std::mt19937_64& rng);

/// Resets `env`, runs the pure greedy policy for `steps` steps without
/// learning and reports where it ends.
EnvReport greedy_rollout(const Agent& agent, Environment& env, int steps);

/// Flat little-endian layout: u32 layer count, u32 layer sizes, f64 parameters.
std::vector<std::uint8_t> serialize(const QNetwork& net);
QNetwork deserialize(std::span<const std::uint8_t> bytes);

}  // namespace leomarket::qlearn
