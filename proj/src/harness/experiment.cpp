// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/experiment.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <openssl/opensslv.h>

#include "json.hpp"
#include "leomarket/error.hpp"
#include "leomarket/fedchain/jsonl.hpp"
#include "leomarket/harness/environment.hpp"

#ifndef LEOMARKET_VERSION
#define LEOMARKET_VERSION "0.0.0"
#endif

namespace leomarket::harness {

RunOutput run_simulation(const ScenarioConfig& cfg, ExecutionPolicy policy) {
  RunOutput out{cfg, {}, {}, generate_scenario(cfg)};
  out.series.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int i = 0; i < cfg.iterations; ++i) {
    out.series.push_back(run_iteration(out.world, policy).metrics);
  }
  out.chain = out.world.chain.blocks();
  return out;
}

std::string run_manifest(const ScenarioConfig& cfg) {
  nlohmann::json m;
  m["tool"] = "leomarket";
  m["version"] = LEOMARKET_VERSION;
  m["config_digest"] = config_digest(cfg);
  m["seed"] = cfg.seed;
  m["libraries"] = {
      {"fmt", FMT_VERSION},
      {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR,
                                    NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH)},
      {"openssl", OPENSSL_VERSION_TEXT},
  };
  m["config"] = nlohmann::json::parse(dump_config(cfg));
  return m.dump(2) + "\n";
}

void write_run(const std::filesystem::path& dir, const RunOutput& run) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::io, "cannot create " + dir.string());
  write_agent_csv(dir / "agents.csv", run.series);
  write_aggregate_csv(dir / "aggregate.csv", aggregate(run.series));
  fedchain::write_jsonl(dir / "chain.jsonl", run.chain);
  if (run.chain.size() > 1) {
    // Checkpoint of the last broadcast global model.
    const auto bytes = run.chain.back().global_params.serialize();
    std::ofstream model(dir / "global-model.bin", std::ios::binary | std::ios::trunc);
    model.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!model) throw Error(Errc::io, "cannot write global model");
  }
  std::ofstream manifest(dir / "run-manifest.json", std::ios::binary | std::ios::trunc);
  manifest << run_manifest(run.cfg);
  if (!manifest) throw Error(Errc::io, "cannot write run manifest");
}

std::string format_value(double v) { return fmt::format("{}", v); }

SweepResult run_experiment(const ScenarioConfig& cfg, const SweepAxis& axis, int seeds,
                           const std::filesystem::path& out, ExecutionPolicy policy) {
  if (seeds <= 0) throw Error(Errc::invalid_config, "seed count must be positive");
  SweepResult result{axis, {}, {}};
  for (double value : axis.values) {
    ScenarioConfig point = cfg;
    set_param(point, axis.name, value);
    std::vector<std::vector<AggregateRow>> runs;
    for (int s = 0; s < seeds; ++s) {
      ScenarioConfig cell_cfg = point;
      cell_cfg.seed = cfg.seed + static_cast<std::uint64_t>(s);
      const RunOutput run = run_simulation(cell_cfg, policy);
      const std::string label = axis.name + "=" + format_value(value);
      if (!out.empty()) write_run(out / label / ("seed-" + std::to_string(cell_cfg.seed)), run);
      runs.push_back(aggregate(run.series));
      result.cells.push_back({value, cell_cfg.seed, runs.back()});
    }
    result.per_value.push_back(mean_rows(runs));
    if (!out.empty()) {
      write_aggregate_csv(out / ("aggregate_" + axis.name + "=" + format_value(value) + ".csv"),
                          result.per_value.back());
    }
  }
  return result;
}

std::vector<double> baseline_average_budget(const World& world) {
  double total = 0.0;
  for (const Cell& c : world.cells) {
    double sum = 0.0;
    for (const auto& u : c.users) sum += u.budget;
    const double price = sum / static_cast<double>(c.users.size());
    // No power control: the cell keeps its initial limit.
    const double limit = world.cfg.market.initial_power_level * world.cfg.market.power_step;
    total += market::round_revenue(price, c.users, limit, world.cfg.market.max_leases).revenue *
             world.cfg.visibility;
  }
  const double mean = total / static_cast<double>(world.cells.size());
  return std::vector<double>(static_cast<std::size_t>(world.cfg.iterations), mean);
}

std::vector<OracleComparison> compare_with_oracle(const World& world, int rollout_steps) {
  std::vector<OracleComparison> out;
  const auto& mk = world.cfg.market;
  for (std::size_t a = 0; a < world.cells.size(); ++a) {
    Cell copy = world.cells[a];
    SpectrumEnvironment env(copy, world.cfg.visibility, mk.max_leases);
    const auto report = qlearn::greedy_rollout(world.agents[a], env, rollout_steps);
    const auto best = market::optimal_price_oracle(copy.users, copy.power.max_level * copy.power.step,
                                                   mk.max_leases);
    OracleComparison c;
    c.agent = copy.id;
    c.learned_price = report.price;
    c.learned_revenue = report.revenue;
    c.oracle_price = best.price;
    c.oracle_revenue = best.revenue * world.cfg.visibility;
    c.within_step = std::abs(report.price - best.price) <= mk.price_step * (1.0 + 1e-9);
    out.push_back(c);
  }
  return out;
}

RunOutput baseline_standalone_ddqn(ScenarioConfig cfg, ExecutionPolicy policy) {
  cfg.federated = false;
  return run_simulation(cfg, policy);
}

}  // namespace leomarket::harness
