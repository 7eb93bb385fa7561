// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace leomarket::qlearn {

/// Price and revenue (blockchain reward excluded), both scaled to [0, 1].
struct MdpState {
  double price = 0.0;
  double utility = 0.0;

  friend bool operator==(const MdpState&, const MdpState&) = default;
};

enum class AgentAction : std::uint8_t { price_down = 0, price_up = 1, power_down = 2, power_up = 3 };

inline constexpr std::array<AgentAction, 4> kAllActions = {
    AgentAction::price_down, AgentAction::price_up, AgentAction::power_down,
    AgentAction::power_up};

constexpr std::size_t index_of(AgentAction a) noexcept { return static_cast<std::size_t>(a); }

std::string_view to_string(AgentAction a) noexcept;

struct Experience {
  MdpState state;
  AgentAction action = AgentAction::price_down;
  MdpState next_state;
  int reward = 0;
};

inline constexpr double kRewardTolerance = 1e-9;

/// Ternary improvement signal: sign(u_now - u_prev) with a dead band of 1e-9.
int reward(double u_now, double u_prev) noexcept;

}  // namespace leomarket::qlearn
