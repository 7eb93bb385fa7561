// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace leomarket::harness {

struct AgentMetrics {
  int agent_id = 0;
  double reward = 0.0;   // reward sum over the iteration
  double price = 0.0;    // at the end of the iteration
  double revenue = 0.0;  // visibility-scaled, at the end of the iteration
  double rep = 0.0;      // reputation tokens after the iteration

  friend bool operator==(const AgentMetrics&, const AgentMetrics&) = default;
};

struct AggregateRow {
  std::int64_t iteration = 0;
  double mean_reward = 0.0;
  double mean_price = 0.0;
  double mean_revenue = 0.0;
  double min_revenue = 0.0;
  double max_revenue = 0.0;

  double envelope() const noexcept { return max_revenue - min_revenue; }
  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct MetricsRecord {
  std::int64_t iteration = 0;
  std::vector<AgentMetrics> agents;

  AggregateRow aggregate() const;
  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

using Series = std::vector<MetricsRecord>;

std::vector<AggregateRow> aggregate(std::span<const MetricsRecord> series);
/// Row-wise mean of equally long aggregate series (one per seed).
std::vector<AggregateRow> mean_rows(std::span<const std::vector<AggregateRow>> runs);

/// `iteration,agent_id,reward,price,revenue,rep`. Throws Errc::io.
void write_agent_csv(const std::filesystem::path& path, std::span<const MetricsRecord> series);
/// Throws Errc::io or Errc::parse.
Series read_agent_csv(const std::filesystem::path& path);

/// `iteration,mean_reward,mean_price,mean_revenue,min_revenue,max_revenue`.
void write_aggregate_csv(const std::filesystem::path& path, std::span<const AggregateRow> rows);
std::vector<AggregateRow> read_aggregate_csv(const std::filesystem::path& path);

}  // namespace leomarket::harness
