// SPDX-License-Identifier: Apache-2.0
#include "leomarket/harness/simulation.hpp"

#include <algorithm>

#include "leomarket/harness/environment.hpp"
#include "leomarket/harness/rng.hpp"

namespace leomarket::harness {

namespace {

fedchain::ModelParams to_model(const qlearn::QNetwork& net) {
  const auto shape = qlearn::QNetwork::shape();
  return {{shape.begin(), shape.end()}, {net.params().begin(), net.params().end()}};
}

void train_agent(World& w, std::size_t a, std::int64_t iteration,
                 std::vector<qlearn::RoundResult>& results) {
  auto rng = make_rng(w.cfg.seed, Stream::train, a, static_cast<std::uint64_t>(iteration));
  SpectrumEnvironment env(w.cells[a], w.cfg.visibility, w.cfg.market.max_leases);
  results[a] = qlearn::local_training_round(w.agents[a], env, w.cfg.hyperparams, rng);
}

}  // namespace

std::set<int> draw_online(const ScenarioConfig& cfg, std::int64_t iteration) {
  auto rng = make_rng(cfg.seed, Stream::offline, 0, static_cast<std::uint64_t>(iteration));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::set<int> online;
  for (int a = 0; a < cfg.n_agents; ++a) {
    if (unit(rng) >= cfg.offline_rate) online.insert(a);
  }
  return online;
}

IterationResult run_iteration(World& w, ExecutionPolicy policy) {
  const std::int64_t it = ++w.iteration;
  const std::size_t n = w.cells.size();
  std::vector<qlearn::RoundResult> results(n);

  // Steps 1-3: broadcast schedules, users decide, agents train. Agents touch
  // only their own cell, agent and result slot.
  if (policy == ExecutionPolicy::parallel) {
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t a = 0; a < count; ++a) {
      train_agent(w, static_cast<std::size_t>(a), it, results);
    }
  } else {
    for (std::size_t a = 0; a < n; ++a) train_agent(w, a, it, results);
  }

  // Step 4: reputation from observed behavior, in agent order.
  const double p_hat = w.cfg.chain.reputation_coefficient;
  for (std::size_t a = 0; a < n; ++a) {
    const Cell& c = w.cells[a];
    fedchain::TransactionRecord rec{it, c.id, c.outcome.accepted, c.outcome.malicious,
                                    c.power.level, realized_revenue(c, w.cfg.visibility)};
    w.ledger.apply(rec, p_hat);
    if (w.cfg.federated) w.pending.push_back(rec);
  }

  // Step 5: aggregation and block generation.
  IterationResult out;
  if (w.cfg.federated && it % w.cfg.aggregation_frequency == 0) {
    AggregationEvent ev;
    ev.iteration = it;
    const auto online = draw_online(w.cfg, it);
    if (online.empty()) {
      ev.skipped = true;
    } else {
      std::vector<fedchain::ModelUpdate> updates;
      updates.reserve(n);
      for (std::size_t a = 0; a < n; ++a) {
        updates.push_back(fedchain::ModelUpdate::make(w.cells[a].id, it, to_model(w.agents[a].basic())));
      }
      fedchain::RoundInput in;
      in.round = it;
      in.aggregation_frequency = w.cfg.aggregation_frequency;
      in.updates = updates;
      in.records = w.pending;
      in.online = online;
      in.reward = w.cfg.chain.blockchain_reward;
      ev.result = fedchain::finalize_round(in, w.ledger, w.chain);
      // Step 6: every basic network continues from the global model.
      auto& values = ev.result.global.values;
      for (auto& agent : w.agents) {
        std::copy(values.begin(), values.end(), agent.basic().params().begin());
      }
      w.chain_reward[static_cast<std::size_t>(ev.result.aggregator)] += ev.result.reward;
      w.pending.clear();
    }
    out.aggregation = std::move(ev);
  }

  out.metrics.iteration = it;
  out.metrics.agents.reserve(n);
  for (std::size_t a = 0; a < n; ++a) {
    const Cell& c = w.cells[a];
    out.metrics.agents.push_back({c.id, static_cast<double>(results[a].reward_sum()),
                                  c.price.price(), realized_revenue(c, w.cfg.visibility),
                                  w.ledger.tokens(c.id)});
  }
  return out;
}

}  // namespace leomarket::harness
