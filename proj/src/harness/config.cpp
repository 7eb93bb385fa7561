// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <iterator>

#include "json.hpp"
#include "leomarket/error.hpp"
#include "leomarket/fedchain/digest.hpp"
#include "leomarket/market.hpp"

namespace leomarket::harness {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(Errc::invalid_config, why); }

json range_json(const Range& r) { return json::array({r.lo, r.hi}); }

json to_json(const ScenarioConfig& c) {
  const auto& hp = c.hyperparams;
  const auto& ph = c.physical;
  const auto& mk = c.market;
  json frozen = json::array();
  for (const auto& u : c.frozen_users) {
    frozen.push_back({{"budget", u.budget},
                      {"required_power", u.required_power},
                      {"misbehavior", u.misbehavior}});
  }
  return {
      {"n_users", c.n_users},
      {"n_agents", c.n_agents},
      {"velocity", c.velocity},
      {"visibility", c.visibility},
      {"altitude", c.altitude},
      {"beam_radius", c.beam_radius},
      {"iterations", c.iterations},
      {"seed", c.seed},
      {"aggregation_frequency", c.aggregation_frequency},
      {"federated", c.federated},
      {"malicious_rate", c.malicious_rate},
      {"offline_rate", c.offline_rate},
      {"hyperparams",
       {{"learning_rate", hp.learning_rate},
        {"exploration", hp.exploration},
        {"batch_size", hp.batch_size},
        {"discount", hp.discount},
        {"target_sync_every", hp.target_sync_every},
        {"episodes_per_round", hp.episodes_per_round},
        {"steps_per_episode", hp.steps_per_episode},
        {"replay_capacity", hp.replay_capacity}}},
      {"physical",
       {{"user_gain_dbi", range_json(ph.user_gain_dbi)},
        {"sat_gain_dbi", ph.sat_gain_dbi},
        {"tx_power_w", range_json(ph.tx_power_w)},
        {"noise_dbm_per_mhz", ph.noise_dbm_per_mhz},
        {"bandwidth_hz", ph.bandwidth_hz},
        {"carrier_hz", ph.carrier_hz},
        {"fading_coefficient", ph.fading_coefficient},
        {"motion_angle", ph.motion_angle},
        {"speed_of_light", ph.speed_of_light},
        {"earth_radius", ph.earth_radius},
        {"channel_fading", ph.channel_fading},
        {"zeta", ph.zeta},
        {"sinr_reference_db", ph.sinr_reference_db}}},
      {"market",
       {{"price_step", mk.price_step},
        {"price_levels", mk.price_levels},
        {"initial_price_level", mk.initial_price_level},
        {"power_step", mk.power_step},
        {"power_levels", mk.power_levels},
        {"initial_power_level", mk.initial_power_level},
        {"max_leases", mk.max_leases ? json(*mk.max_leases) : json(nullptr)}}},
      {"chain",
       {{"reputation_coefficient", c.chain.reputation_coefficient},
        {"blockchain_reward", c.chain.blockchain_reward}}},
      {"frozen_users", std::move(frozen)},
  };
}

// Overlays `patch` on `base`; every key in the patch must already exist.
void overlay(json& base, const json& patch, const std::string& where) {
  if (!patch.is_object()) invalid("expected an object at " + (where.empty() ? "top level" : where));
  for (const auto& [key, value] : patch.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    auto it = base.find(key);
    if (it == base.end()) invalid("unknown config key " + path);
    if (it->is_object()) {
      overlay(*it, value, path);
    } else {
      *it = value;
    }
  }
}

template <class T>
T take(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    invalid(std::string("bad value for ") + key);
  }
}

Range take_range(const json& j, const char* key) {
  const auto v = take<std::vector<double>>(j, key);
  if (v.size() != 2) invalid(std::string(key) + " must be [lo, hi]");
  return {v[0], v[1]};
}

ScenarioConfig from_json(const json& j) {
  ScenarioConfig c;
  c.n_users = take<int>(j, "n_users");
  c.n_agents = take<int>(j, "n_agents");
  c.velocity = take<double>(j, "velocity");
  c.visibility = take<double>(j, "visibility");
  c.altitude = take<double>(j, "altitude");
  c.beam_radius = take<double>(j, "beam_radius");
  c.iterations = take<int>(j, "iterations");
  c.seed = take<std::uint64_t>(j, "seed");
  c.aggregation_frequency = take<int>(j, "aggregation_frequency");
  c.federated = take<bool>(j, "federated");
  c.malicious_rate = take<double>(j, "malicious_rate");
  c.offline_rate = take<double>(j, "offline_rate");

  const json& hp = j.at("hyperparams");
  c.hyperparams.learning_rate = take<double>(hp, "learning_rate");
  c.hyperparams.exploration = take<double>(hp, "exploration");
  c.hyperparams.batch_size = take<std::size_t>(hp, "batch_size");
  c.hyperparams.discount = take<double>(hp, "discount");
  c.hyperparams.target_sync_every = take<int>(hp, "target_sync_every");
  c.hyperparams.episodes_per_round = take<int>(hp, "episodes_per_round");
  c.hyperparams.steps_per_episode = take<int>(hp, "steps_per_episode");
  c.hyperparams.replay_capacity = take<std::size_t>(hp, "replay_capacity");

  const json& ph = j.at("physical");
  c.physical.user_gain_dbi = take_range(ph, "user_gain_dbi");
  c.physical.sat_gain_dbi = take<double>(ph, "sat_gain_dbi");
  c.physical.tx_power_w = take_range(ph, "tx_power_w");
  c.physical.noise_dbm_per_mhz = take<double>(ph, "noise_dbm_per_mhz");
  c.physical.bandwidth_hz = take<double>(ph, "bandwidth_hz");
  c.physical.carrier_hz = take<double>(ph, "carrier_hz");
  c.physical.fading_coefficient = take<double>(ph, "fading_coefficient");
  c.physical.motion_angle = take<double>(ph, "motion_angle");
  c.physical.speed_of_light = take<double>(ph, "speed_of_light");
  c.physical.earth_radius = take<double>(ph, "earth_radius");
  c.physical.channel_fading = take<double>(ph, "channel_fading");
  c.physical.zeta = take<double>(ph, "zeta");
  c.physical.sinr_reference_db = take<double>(ph, "sinr_reference_db");

  const json& mk = j.at("market");
  c.market.price_step = take<double>(mk, "price_step");
  c.market.price_levels = take<int>(mk, "price_levels");
  c.market.initial_price_level = take<int>(mk, "initial_price_level");
  c.market.power_step = take<double>(mk, "power_step");
  c.market.power_levels = take<int>(mk, "power_levels");
  c.market.initial_power_level = take<int>(mk, "initial_power_level");
  if (!mk.at("max_leases").is_null()) c.market.max_leases = take<int>(mk, "max_leases");

  const json& ch = j.at("chain");
  c.chain.reputation_coefficient = take<double>(ch, "reputation_coefficient");
  c.chain.blockchain_reward = take<double>(ch, "blockchain_reward");

  const json& frozen = j.at("frozen_users");
  if (!frozen.is_array()) invalid("frozen_users must be an array");
  for (const auto& u : frozen) {
    if (!u.is_object()) invalid("frozen_users entries must be objects");
    FrozenUser f;
    for (const auto& [key, value] : u.items()) {
      if (key != "budget" && key != "required_power" && key != "misbehavior") {
        invalid("unknown frozen user key " + key);
      }
    }
    f.budget = take<double>(u, "budget");
    if (u.contains("required_power")) f.required_power = take<double>(u, "required_power");
    if (u.contains("misbehavior")) f.misbehavior = take<std::string>(u, "misbehavior");
    c.frozen_users.push_back(std::move(f));
  }
  return c;
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace

void ScenarioConfig::validate() const {
  if (n_users <= 0 || n_agents <= 0 || iterations <= 0) invalid("counts must be positive");
  if (aggregation_frequency <= 0) invalid("aggregation_frequency must be positive");
  if (!(visibility > 0.0 && visibility <= 1.0)) invalid("visibility must lie in (0, 1]");
  if (!(malicious_rate >= 0.0 && malicious_rate <= 1.0)) invalid("malicious_rate must lie in [0, 1]");
  if (!(offline_rate >= 0.0 && offline_rate <= 1.0)) invalid("offline_rate must lie in [0, 1]");
  if (!(velocity >= 0.0) || !(altitude > 0.0) || !(beam_radius > 0.0)) {
    invalid("velocity must be non-negative; altitude and beam_radius positive");
  }
  try {
    hyperparams.validate();
  } catch (const std::invalid_argument& e) {
    invalid(e.what());
  }
  const auto& ph = physical;
  if (!finite_all({ph.sat_gain_dbi, ph.noise_dbm_per_mhz, ph.fading_coefficient, ph.motion_angle,
                   ph.sinr_reference_db, ph.user_gain_dbi.lo, ph.user_gain_dbi.hi})) {
    invalid("physical constants must be finite");
  }
  if (ph.user_gain_dbi.lo > ph.user_gain_dbi.hi) invalid("user_gain_dbi range is reversed");
  if (!(ph.tx_power_w.lo > 0.0 && ph.tx_power_w.lo <= ph.tx_power_w.hi)) {
    invalid("tx_power_w must be a positive ordered range");
  }
  if (!(ph.bandwidth_hz > 0.0 && ph.carrier_hz > 0.0 && ph.speed_of_light > 0.0 &&
        ph.earth_radius > 0.0 && ph.channel_fading >= 1.0 && ph.zeta > 0.0)) {
    invalid("bandwidth, carrier, speed of light, earth radius, zeta must be positive; fading >= 1");
  }
  const auto& mk = market;
  if (!(mk.price_step > 0.0) || mk.price_levels <= 0 || mk.initial_price_level < 0 ||
      mk.initial_price_level > mk.price_levels) {
    invalid("price grid must be positive with the initial level inside it");
  }
  if (!(mk.power_step > 0.0) || mk.power_levels <= 0 || mk.initial_power_level < 1 ||
      mk.initial_power_level > mk.power_levels) {
    invalid("power grid must be positive with the initial level in [1, power_levels]");
  }
  if (mk.max_leases && *mk.max_leases < 0) invalid("max_leases must be non-negative");
  if (!(chain.reputation_coefficient > 0.0) || !(chain.blockchain_reward >= 0.0)) {
    invalid("reputation_coefficient must be positive and blockchain_reward non-negative");
  }
  if (!frozen_users.empty()) {
    if (static_cast<int>(frozen_users.size()) != n_users) {
      invalid("n_users must equal the number of frozen_users");
    }
    for (const auto& u : frozen_users) {
      if (!(u.budget >= 0.0) || !(u.required_power > 0.0)) {
        invalid("frozen users need budget >= 0 and required_power > 0");
      }
      try {
        (void)market::misbehavior_from_string(u.misbehavior);
      } catch (const std::exception&) {
        invalid("unknown misbehavior " + u.misbehavior);
      }
    }
  }
}

ScenarioConfig parse_config(std::string_view text) {
  json patch;
  try {
    patch = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    invalid(e.what());
  }
  json merged = to_json(ScenarioConfig{});
  overlay(merged, patch, "");
  ScenarioConfig cfg = from_json(merged);
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io, "cannot open " + path.string());
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_config(text);
}

std::string dump_config(const ScenarioConfig& cfg) { return to_json(cfg).dump(); }

std::string config_digest(const ScenarioConfig& cfg) {
  const std::string text = dump_config(cfg);
  return fedchain::to_hex(fedchain::sha256(
      {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()}));
}

void set_param(ScenarioConfig& cfg, std::string_view name, double value) {
  json j = to_json(cfg);
  json* node = &j;
  std::string path(name);
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    auto it = node->find(key);
    if (!node->is_object() || it == node->end()) invalid("unknown parameter " + path);
    node = &*it;
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (node->is_number_integer() || node->is_null()) {
    if (value != std::floor(value)) invalid(path + " takes an integer");
    *node = static_cast<std::int64_t>(value);
  } else if (node->is_number_float()) {
    *node = value;
  } else if (node->is_boolean()) {
    *node = value != 0.0;
  } else {
    invalid(path + " is not a scalar parameter");
  }
  ScenarioConfig next = from_json(j);
  next.validate();
  cfg = std::move(next);
}

}  // namespace leomarket::harness
