// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "leomarket/fedchain/block.hpp"
#include "leomarket/harness/config.hpp"
#include "leomarket/harness/metrics.hpp"
#include "leomarket/harness/simulation.hpp"

namespace leomarket::harness {

struct RunOutput {
  ScenarioConfig cfg;
  Series series;
  std::vector<fedchain::Block> chain;
  World world;  // final state
};

RunOutput run_simulation(const ScenarioConfig& cfg,
                         ExecutionPolicy policy = ExecutionPolicy::serial);

/// Writes agents.csv, aggregate.csv, chain.jsonl and run-manifest.json into `dir`.
void write_run(const std::filesystem::path& dir, const RunOutput& run);

/// Deterministic JSON: config digest, seed, tool and library versions, config.
std::string run_manifest(const ScenarioConfig& cfg);

struct SweepAxis {
  std::string name;  // dotted config field, e.g. "velocity"
  std::vector<double> values;
};

struct SweepCell {
  double value = 0.0;
  std::uint64_t seed = 0;
  std::vector<AggregateRow> rows;
};

struct SweepResult {
  SweepAxis axis;
  std::vector<SweepCell> cells;  // value-major, then seed
  std::vector<std::vector<AggregateRow>> per_value;  // seed-averaged rows per grid value
};

/// Seeds cfg.seed, cfg.seed + 1, ... for every grid value. When `out` is
/// non-empty each cell's run goes to `<out>/<name>=<value>/seed-<s>/` and the
/// seed-averaged rows to `<out>/aggregate_<name>=<value>.csv`.
SweepResult run_experiment(const ScenarioConfig& cfg, const SweepAxis& axis, int seeds,
                           const std::filesystem::path& out = {},
                           ExecutionPolicy policy = ExecutionPolicy::serial);

/// Revenue of pricing every cell at its users' mean budget under the initial
/// power limit; one entry per iteration, averaged across cells.
std::vector<double> baseline_average_budget(const World& world);

/// The same loop with no aggregation and no blocks.
RunOutput baseline_standalone_ddqn(ScenarioConfig cfg,
                                   ExecutionPolicy policy = ExecutionPolicy::serial);

struct OracleComparison {
  int agent = 0;
  double learned_price = 0.0;
  double learned_revenue = 0.0;
  double oracle_price = 0.0;
  double oracle_revenue = 0.0;
  bool within_step = false;  // |learned - oracle| <= one price step
};

/// Rolls each agent's greedy policy forward `rollout_steps` steps on a copy of
/// its cell and compares the price it settles on with the revenue-optimal price
/// at the highest power limit.
std::vector<OracleComparison> compare_with_oracle(const World& world, int rollout_steps = 50);

std::string format_value(double v);

}  // namespace leomarket::harness
