// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "leomarket/harness/scenario.hpp"
#include "leomarket/qlearn/agent.hpp"

namespace leomarket::harness {

/// A cell seen as an MDP. The cell keeps the state between iterations; this is a view.
class SpectrumEnvironment final : public qlearn::Environment {
 public:
  SpectrumEnvironment(Cell& cell, double visibility, std::optional<int> max_leases)
      : cell_(cell), visibility_(visibility), max_leases_(max_leases) {}

  /// Back to the configured initial price and power levels.
  void reset() override;
  qlearn::MdpState observe() const override;
  /// Moves the price or power level (saturating), re-runs the leasing round and
  /// rewards the sign of the change in visibility-scaled revenue.
  qlearn::Transition step(qlearn::AgentAction action) override;
  qlearn::EnvReport report() const override;

 private:
  Cell& cell_;
  double visibility_;
  std::optional<int> max_leases_;
};

}  // namespace leomarket::harness
