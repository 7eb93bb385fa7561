// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "leomarket/fedchain/chain.hpp"
#include "leomarket/harness/metrics.hpp"
#include "leomarket/harness/scenario.hpp"

namespace leomarket::harness {

enum class ExecutionPolicy { serial, parallel };

/// What happened at an aggregation boundary, if anything.
struct AggregationEvent {
  std::int64_t iteration = 0;
  bool skipped = false;  // every node was offline
  fedchain::FinalizeResult result;
};

struct IterationResult {
  MetricsRecord metrics;
  std::optional<AggregationEvent> aggregation;
};

/// One local training round per agent, then reputation accounting, then (every
/// f' iterations, federated runs only) aggregation and block generation.
IterationResult run_iteration(World& world, ExecutionPolicy policy = ExecutionPolicy::serial);

/// Online set for the aggregation round at `iteration`.
std::set<int> draw_online(const ScenarioConfig& cfg, std::int64_t iteration);

}  // namespace leomarket::harness
