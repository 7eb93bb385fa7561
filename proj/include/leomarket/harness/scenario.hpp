// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "leomarket/channel.hpp"
#include "leomarket/fedchain/chain.hpp"
#include "leomarket/fedchain/reputation.hpp"
#include "leomarket/harness/config.hpp"
#include "leomarket/market.hpp"
#include "leomarket/qlearn/agent.hpp"

namespace leomarket::harness {

/// One satellite, its footprint population and its schedules.
struct Cell {
  int id = 0;
  channel::SatelliteKinematics kinematics;
  std::vector<market::TerrestrialUser> users;
  std::vector<double> sinr;  // linear, per user; empty for frozen populations
  market::PriceSchedule price;
  market::PowerControl power;
  int initial_price_level = 0;  // where every episode starts
  int initial_power_level = 1;
  double price_scale = 1.0;    // state normalizer for price
  double utility_scale = 1.0;  // state normalizer for u'
  market::LeaseOutcome outcome;  // under the current schedules
};

struct World {
  ScenarioConfig cfg;
  std::vector<Cell> cells;
  std::vector<qlearn::Agent> agents;
  fedchain::ReputationLedger ledger;
  fedchain::Chain chain;
  std::vector<fedchain::TransactionRecord> pending;  // records since the last block
  std::vector<double> chain_reward;                  // X credited per satellite
  std::int64_t iteration = 0;
};

/// The budget a generated user gets for a linear SINR.
double calibrated_budget(const PhysicalConfig& ph, double sinr);

/// Users placed uniformly in each footprint, budgets from the channel model,
/// every agent starting from one common seed-keyed network. Throws InvalidConfig.
World generate_scenario(const ScenarioConfig& cfg);

/// The channel inputs generate_scenario uses for a user `offset` metres from
/// the footprint center.
channel::Geometry user_geometry(const ScenarioConfig& cfg, double offset);
channel::UserLink user_link(const ScenarioConfig& cfg, double tx_power, double user_gain_dbi,
                            const channel::Geometry& g);
channel::SatelliteKinematics kinematics(const ScenarioConfig& cfg);
channel::NoiseModel noise(const ScenarioConfig& cfg);

/// Revenue of the cell's current schedules after visibility scaling.
double realized_revenue(const Cell& cell, double visibility);

}  // namespace leomarket::harness
