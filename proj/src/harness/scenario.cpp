// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "leomarket/error.hpp"
#include "leomarket/harness/rng.hpp"
#include "leomarket/units.hpp"

namespace leomarket::harness {

namespace {

constexpr market::Misbehavior kMisbehaviors[] = {
    market::Misbehavior::power_exceed,
    market::Misbehavior::over_count,
    market::Misbehavior::duration_violate,
};

market::TerrestrialUser make_user(const ScenarioConfig& cfg, std::mt19937_64& rng, int id,
                                  const channel::SatelliteKinematics& k,
                                  const channel::NoiseModel& nz, double& sinr_out) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& ph = cfg.physical;
  const double radius = cfg.beam_radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  const double gain_dbi = ph.user_gain_dbi.lo + (ph.user_gain_dbi.hi - ph.user_gain_dbi.lo) * unit(rng);
  const double power = ph.tx_power_w.lo + (ph.tx_power_w.hi - ph.tx_power_w.lo) * unit(rng);
  const bool malicious = unit(rng) < cfg.malicious_rate;
  std::uniform_int_distribution<int> kind(0, 2);
  const int kind_index = kind(rng);

  const auto g = user_geometry(cfg, radius);
  const auto link = user_link(cfg, power, gain_dbi, g);
  sinr_out = channel::uplink_sinr(link, g, k, 0.0, nz);

  market::TerrestrialUser u;
  u.id = id;
  u.position = {radius * std::cos(theta), radius * std::sin(theta)};
  u.budget = calibrated_budget(ph, sinr_out);
  u.required_power = power;
  u.misbehavior = malicious ? kMisbehaviors[kind_index] : market::Misbehavior::none;
  return u;
}

void finish_cell(Cell& c, const ScenarioConfig& cfg) {
  const auto& mk = cfg.market;
  c.initial_price_level = mk.initial_price_level;
  c.initial_power_level = mk.initial_power_level;
  c.price.level = mk.initial_price_level;
  c.price.min_level = 0;
  c.price.max_level = mk.price_levels;
  c.price.step = mk.price_step;
  c.power.level = mk.initial_power_level;
  c.power.min_level = 1;
  c.power.max_level = mk.power_levels;
  c.power.step = mk.power_step;

  double max_budget = 0.0;
  for (const auto& u : c.users) max_budget = std::max(max_budget, u.budget);
  c.price_scale = c.price.max_level * c.price.step;
  // The best u' a cell can reach: every user paying the top budget, after visibility.
  c.utility_scale = max_budget * static_cast<double>(c.users.size()) * cfg.visibility;
  if (!(c.utility_scale > 0.0)) c.utility_scale = 1.0;
  c.outcome = market::round_revenue(c.price.price(), c.users, c.power.limit(), mk.max_leases);
}

}  // namespace

double calibrated_budget(const PhysicalConfig& ph, double sinr) {
  return market::budget_from_sinr(ph.zeta, sinr / units::db_to_linear(ph.sinr_reference_db));
}

channel::Geometry user_geometry(const ScenarioConfig& cfg, double offset) {
  return channel::Geometry::overhead(cfg.physical.earth_radius, cfg.altitude, cfg.beam_radius,
                                     offset);
}

channel::UserLink user_link(const ScenarioConfig& cfg, double tx_power, double user_gain_dbi,
                            const channel::Geometry& g) {
  const auto& ph = cfg.physical;
  channel::UserLink link;
  link.tx_power = tx_power;
  link.elevation = std::atan2(g.altitude, g.surface_offset);
  link.user_gain = units::db_to_linear(user_gain_dbi);
  link.deviation = channel::deviation_angle(g);
  link.sat_gain = units::db_to_linear(ph.sat_gain_dbi);
  link.wavelength = ph.speed_of_light / ph.carrier_hz;
  link.fading = ph.channel_fading;
  return link;
}

channel::SatelliteKinematics kinematics(const ScenarioConfig& cfg) {
  channel::SatelliteKinematics k;
  k.velocity = cfg.velocity;
  k.motion_angle = cfg.physical.motion_angle;
  k.fading_coefficient = cfg.physical.fading_coefficient;
  k.speed_of_light = cfg.physical.speed_of_light;
  return k;
}

channel::NoiseModel noise(const ScenarioConfig& cfg) {
  return channel::NoiseModel::from_density(cfg.physical.noise_dbm_per_mhz,
                                           cfg.physical.bandwidth_hz);
}

World generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  World w{cfg, {}, {}, fedchain::ReputationLedger{}, fedchain::Chain::genesis({}, 1.0), {}, {}, 0};
  const auto k = kinematics(cfg);
  const auto nz = noise(cfg);

  std::vector<int> ids;
  w.cells.resize(static_cast<std::size_t>(cfg.n_agents));
  for (int a = 0; a < cfg.n_agents; ++a) {
    Cell& c = w.cells[static_cast<std::size_t>(a)];
    c.id = a;
    c.kinematics = k;
    ids.push_back(a);
    if (cfg.frozen_users.empty()) {
      auto rng = make_rng(cfg.seed, Stream::scenario, static_cast<std::uint64_t>(a));
      c.users.reserve(static_cast<std::size_t>(cfg.n_users));
      c.sinr.resize(static_cast<std::size_t>(cfg.n_users));
      for (int n = 0; n < cfg.n_users; ++n) {
        c.users.push_back(make_user(cfg, rng, n, k, nz, c.sinr[static_cast<std::size_t>(n)]));
      }
    } else {
      for (std::size_t n = 0; n < cfg.frozen_users.size(); ++n) {
        const auto& f = cfg.frozen_users[n];
        market::TerrestrialUser u;
        u.id = static_cast<int>(n);
        u.budget = f.budget;
        u.required_power = f.required_power;
        u.misbehavior = market::misbehavior_from_string(f.misbehavior);
        c.users.push_back(u);
      }
    }
    finish_cell(c, cfg);
  }

  auto init_rng = make_rng(cfg.seed, Stream::init);
  const qlearn::QNetwork initial = qlearn::QNetwork::glorot(init_rng);
  w.agents.reserve(w.cells.size());
  for (std::size_t a = 0; a < w.cells.size(); ++a) w.agents.emplace_back(initial, cfg.hyperparams);

  w.ledger = fedchain::ReputationLedger(ids);
  w.chain = fedchain::Chain::genesis(ids, cfg.chain.reputation_coefficient);
  w.chain_reward.assign(w.cells.size(), 0.0);
  return w;
}

double realized_revenue(const Cell& cell, double visibility) {
  return cell.outcome.revenue * visibility;
}

}  // namespace leomarket::harness
