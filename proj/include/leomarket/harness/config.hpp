// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "leomarket/channel.hpp"
#include "leomarket/qlearn/agent.hpp"

namespace leomarket::harness {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
};

struct PhysicalConfig {
  Range user_gain_dbi{1.0, 5.0};
  double sat_gain_dbi = 20.0;
  Range tx_power_w{0.1, 1.0};
  double noise_dbm_per_mhz = -174.0;
  double bandwidth_hz = 1e6;
  double carrier_hz = 2e9;
  double fading_coefficient = 1e5;  // varpi
  double motion_angle = 0.0;        // gamma, rad
  double speed_of_light = channel::kSpeedOfLight;
  double earth_radius = channel::kEarthRadius;
  double channel_fading = 1.0;
  double zeta = 1.0;
  // Linear SINR is divided by 10^(sinr_reference_db / 10) before it becomes a budget.
  double sinr_reference_db = 190.6;
};

struct MarketConfig {
  double price_step = 1.0;
  int price_levels = 50;  // highest price level
  int initial_price_level = 1;
  double power_step = 0.1;  // W per level
  int power_levels = 10;
  int initial_power_level = 10;  // episodes start at the rated maximum
  std::optional<int> max_leases;
};

struct ChainConfig {
  double reputation_coefficient = 1.0;  // p_hat
  double blockchain_reward = 0.0;       // X
};

/// Fixed user population copied into every agent's cell.
struct FrozenUser {
  double budget = 0.0;
  double required_power = 0.1;
  std::string misbehavior = "none";
};

struct ScenarioConfig {
  int n_users = 100;
  int n_agents = 10;
  double velocity = 8000.0;
  double visibility = 1.0;
  double altitude = 10000.0;
  double beam_radius = 50000.0;
  int iterations = 600;
  std::uint64_t seed = 42;
  int aggregation_frequency = 5;
  bool federated = true;
  double malicious_rate = 0.0;
  double offline_rate = 0.0;
  qlearn::Hyperparams hyperparams;
  PhysicalConfig physical;
  MarketConfig market;
  ChainConfig chain;
  std::vector<FrozenUser> frozen_users;

  /// Throws InvalidConfig.
  void validate() const;
};

/// Unknown keys are rejected. Throws InvalidConfig or Errc::io.
ScenarioConfig parse_config(std::string_view json_text);
ScenarioConfig load_config(const std::filesystem::path& path);
/// Canonical JSON with every field present (sorted keys).
std::string dump_config(const ScenarioConfig& cfg);
/// Hex SHA-256 of dump_config.
std::string config_digest(const ScenarioConfig& cfg);

/// Sets one scalar field by its dotted name, e.g. "velocity" or
/// "hyperparams.exploration". Throws InvalidConfig on unknown names.
void set_param(ScenarioConfig& cfg, std::string_view name, double value);

}  // namespace leomarket::harness
