// SPDX-License-Identifier: Apache-2.0
#include "leomarket/qlearn/network.hpp"

#include <cmath>

namespace leomarket::qlearn {

namespace {

struct Activations {
  std::array<double, kHidden> pre{};
  std::array<double, kHidden> hidden{};
  QValues out{};
};

Activations run(const QNetwork& net, const MdpState& s) noexcept {
  Activations act;
  const std::array<double, kStateDim> x{s.price, s.utility};
  for (std::size_t j = 0; j < kHidden; ++j) {
    double z = net.b1(j);
    for (std::size_t i = 0; i < kStateDim; ++i) z += net.w1(j, i) * x[i];
    act.pre[j] = z;
    act.hidden[j] = z > 0.0 ? z : 0.0;
  }
  for (std::size_t a = 0; a < kActionCount; ++a) {
    double q = net.b2(a);
    for (std::size_t j = 0; j < kHidden; ++j) q += net.w2(a, j) * act.hidden[j];
    act.out[a] = q;
  }
  return act;
}

}  // namespace

std::string_view to_string(AgentAction a) noexcept {
  switch (a) {
    case AgentAction::price_down: return "price_down";
    case AgentAction::price_up: return "price_up";
    case AgentAction::power_down: return "power_down";
    case AgentAction::power_up: return "power_up";
  }
  return "?";
}

int reward(double u_now, double u_prev) noexcept {
  const double diff = u_now - u_prev;
  if (std::abs(diff) <= kRewardTolerance) return 0;
  return diff > 0.0 ? 1 : -1;
}

QNetwork QNetwork::glorot(std::mt19937_64& rng) {
  QNetwork net;
  const double limit1 = std::sqrt(6.0 / static_cast<double>(kStateDim + kHidden));
  const double limit2 = std::sqrt(6.0 / static_cast<double>(kHidden + kActionCount));
  std::uniform_real_distribution<double> first(-limit1, limit1);
  std::uniform_real_distribution<double> second(-limit2, limit2);
  for (std::size_t j = 0; j < kHidden; ++j) {
    for (std::size_t i = 0; i < kStateDim; ++i) net.w1(j, i) = first(rng);
  }
  for (std::size_t a = 0; a < kActionCount; ++a) {
    for (std::size_t j = 0; j < kHidden; ++j) net.w2(a, j) = second(rng);
  }
  return net;
}

QValues forward(const QNetwork& net, const MdpState& s) noexcept { return run(net, s).out; }

std::size_t argmax(const QValues& q) noexcept {
  std::size_t best = 0;
  for (std::size_t a = 1; a < q.size(); ++a) {
    if (q[a] > q[best]) best = a;
  }
  return best;
}

double batch_loss(const QNetwork& net, std::span<const TdSample> batch) noexcept {
  double total = 0.0;
  for (const auto& sample : batch) {
    const double e = forward(net, sample.state)[index_of(sample.action)] - sample.target;
    total += e * e;
  }
  return total / static_cast<double>(batch.size());
}

ParamArray loss_gradient(const QNetwork& net, std::span<const TdSample> batch) noexcept {
  ParamArray grad{};
  const double scale = 2.0 / static_cast<double>(batch.size());
  for (const auto& sample : batch) {
    const Activations act = run(net, sample.state);
    const std::size_t a = index_of(sample.action);
    const double g = scale * (act.out[a] - sample.target);
    const std::array<double, kStateDim> x{sample.state.price, sample.state.utility};

    grad[QNetwork::kB2 + a] += g;
    for (std::size_t j = 0; j < kHidden; ++j) {
      grad[QNetwork::kW2 + a * kHidden + j] += g * act.hidden[j];
      if (act.pre[j] <= 0.0) continue;
      const double back = g * net.w2(a, j);
      grad[QNetwork::kB1 + j] += back;
      for (std::size_t i = 0; i < kStateDim; ++i) grad[j * kStateDim + i] += back * x[i];
    }
  }
  return grad;
}

}  // namespace leomarket::qlearn
