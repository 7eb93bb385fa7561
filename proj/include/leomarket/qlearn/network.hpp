// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "leomarket/qlearn/mdp.hpp"

namespace leomarket::qlearn {

inline constexpr std::size_t kStateDim = 2;
inline constexpr std::size_t kHidden = 16;
inline constexpr std::size_t kActionCount = 4;
inline constexpr std::size_t kParamCount =
    kHidden * kStateDim + kHidden + kActionCount * kHidden + kActionCount;

using QValues = std::array<double, kActionCount>;
using ParamArray = std::array<double, kParamCount>;

/// Two fully connected layers (state -> 16 ReLU units -> one value per action).
///
/// Parameters live in one flat array in the order W1 (row-major, hidden x state),
/// b1, W2 (row-major, action x hidden), b2. The same order is used for
/// averaging, hashing and checkpoints.
class QNetwork {
 public:
  QNetwork() { params_.fill(0.0); }

  /// Uniform in +-sqrt(6 / (fan_in + fan_out)), biases zero.
  static QNetwork glorot(std::mt19937_64& rng);

  double& w1(std::size_t hidden, std::size_t input) { return params_[hidden * kStateDim + input]; }
  double w1(std::size_t hidden, std::size_t input) const {
    return params_[hidden * kStateDim + input];
  }
  double& b1(std::size_t hidden) { return params_[kB1 + hidden]; }
  double b1(std::size_t hidden) const { return params_[kB1 + hidden]; }
  double& w2(std::size_t action, std::size_t hidden) {
    return params_[kW2 + action * kHidden + hidden];
  }
  double w2(std::size_t action, std::size_t hidden) const {
    return params_[kW2 + action * kHidden + hidden];
  }
  double& b2(std::size_t action) { return params_[kB2 + action]; }
  double b2(std::size_t action) const { return params_[kB2 + action]; }

  ParamArray& params() noexcept { return params_; }
  const ParamArray& params() const noexcept { return params_; }

  /// Layer sizes {input, hidden, output}.
  static std::vector<std::uint32_t> shape() {
    return {static_cast<std::uint32_t>(kStateDim), static_cast<std::uint32_t>(kHidden),
            static_cast<std::uint32_t>(kActionCount)};
  }

  friend bool operator==(const QNetwork&, const QNetwork&) = default;

  static constexpr std::size_t kB1 = kHidden * kStateDim;
  static constexpr std::size_t kW2 = kB1 + kHidden;
  static constexpr std::size_t kB2 = kW2 + kActionCount * kHidden;

 private:
  ParamArray params_;
};

QValues forward(const QNetwork& net, const MdpState& s) noexcept;

/// Index of the largest entry, lowest index on ties.
std::size_t argmax(const QValues& q) noexcept;

/// One regression sample: the value of `action` at `state` should approach `target`.
struct TdSample {
  MdpState state;
  AgentAction action = AgentAction::price_down;
  double target = 0.0;
};

/// Mean over the batch of (Q(s)[a] - y)^2.
double batch_loss(const QNetwork& net, std::span<const TdSample> batch) noexcept;

/// Analytic gradient of `batch_loss` with respect to the flat parameters.
ParamArray loss_gradient(const QNetwork& net, std::span<const TdSample> batch) noexcept;

}  // namespace leomarket::qlearn
