// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "leomarket/error.hpp"
#include "leomarket/fedchain/jsonl.hpp"
#include "leomarket/harness/experiment.hpp"

namespace lh = leomarket::harness;

namespace {

lh::SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw CLI::ValidationError("--param", "expected name=v1,v2,...");
  }
  lh::SweepAxis axis{spec.substr(0, eq), {}};
  std::string rest = spec.substr(eq + 1);
  std::size_t start = 0;
  while (start <= rest.size()) {
    const auto comma = rest.find(',', start);
    const std::string item = rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      axis.values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--param", "not a number: '" + item + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return axis;
}

lh::ExecutionPolicy policy_for(int threads) {
  if (threads > 0) omp_set_num_threads(threads);
  return threads == 1 ? lh::ExecutionPolicy::serial : lh::ExecutionPolicy::parallel;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectrum pricing and power control for LEO satellites with federated DDQN agents"};
  app.require_subcommand(1);

  std::string config;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int threads = 0;
  std::string param;
  int seeds = 5;
  std::string chain_file;
  int rollout = 50;

  auto* run = app.add_subcommand("run", "Run one scenario and write CSVs, chain and manifest");
  run->add_option("--config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--threads", threads, "Worker threads (1 = serial path)");

  auto* sweep = app.add_subcommand("sweep", "Sweep one config field over values and seeds");
  sweep->add_option("--config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--param", param, "name=v1,v2,...")->required();
  sweep->add_option("--seeds", seeds, "Seeds per grid value")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Output directory");
  sweep->add_option("--threads", threads, "Worker threads (1 = serial path)");

  auto* oracle = app.add_subcommand("oracle-check", "Compare learned prices with the revenue optimum");
  oracle->add_option("--config", config, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
  auto* oracle_seed = oracle->add_option("--seed", seed, "Override the config seed");
  oracle->add_option("--rollout", rollout, "Greedy steps before reading the price");
  oracle->add_option("--threads", threads, "Worker threads (1 = serial path)");

  auto* verify = app.add_subcommand("verify-chain", "Re-validate an exported chain.jsonl");
  verify->add_option("--chain", chain_file, "chain.jsonl file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto cfg = lh::load_config(config);
      if (*seed_opt) cfg.seed = seed;
      const auto result = lh::run_simulation(cfg, policy_for(threads));
      lh::write_run(out_dir, result);
      const auto last = result.series.back().aggregate();
      fmt::print("iterations {} mean revenue {} mean price {} chain height {}\n", last.iteration,
                 last.mean_revenue, last.mean_price, result.chain.back().height);
      return EXIT_SUCCESS;
    }
    if (*sweep) {
      const auto cfg = lh::load_config(config);
      const auto axis = parse_axis(param);
      const auto result = lh::run_experiment(cfg, axis, seeds, out_dir, policy_for(threads));
      fmt::print("{},mean_final_revenue,mean_final_price,mean_final_envelope\n", axis.name);
      for (std::size_t i = 0; i < axis.values.size(); ++i) {
        const auto& last = result.per_value[i].back();
        fmt::print("{},{},{},{}\n", lh::format_value(axis.values[i]), last.mean_revenue,
                   last.mean_price, last.envelope());
      }
      return EXIT_SUCCESS;
    }
    if (*oracle) {
      auto cfg = lh::load_config(config);
      if (*oracle_seed) cfg.seed = seed;
      const auto result = lh::run_simulation(cfg, policy_for(threads));
      const auto rows = lh::compare_with_oracle(result.world, rollout);
      int hits = 0;
      fmt::print("agent,learned_price,oracle_price,learned_revenue,oracle_revenue,within_step\n");
      for (const auto& r : rows) {
        hits += r.within_step ? 1 : 0;
        fmt::print("{},{},{},{},{},{}\n", r.agent, r.learned_price, r.oracle_price,
                   r.learned_revenue, r.oracle_revenue, r.within_step ? 1 : 0);
      }
      fmt::print("within one step: {}/{}\n", hits, rows.size());
      return EXIT_SUCCESS;
    }
    if (*verify) {
      const auto r = leomarket::fedchain::verify_jsonl_file(chain_file);
      if (r) {
        fmt::print("OK\n");
        return EXIT_SUCCESS;
      }
      fmt::print("FAIL at height {}: {}\n", r.height.value_or(0), r.reason);
      return EXIT_FAILURE;
    }
  } catch (const leomarket::Error& e) {
    std::cerr << "error (" << leomarket::to_string(e.code()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return EXIT_SUCCESS;
}
