// SPDX-License-Identifier: Apache-2.0
#include "leomarket/fedchain/reputation.hpp"

#include <algorithm>
#include <stdexcept>

#include "leomarket/error.hpp"

namespace leomarket::fedchain {

double update_reputation(double previous, double coefficient, int power_level, int accepted,
                         int malicious) {
  if (accepted < 0 || malicious < 0) throw std::invalid_argument("counts must be non-negative");
  // Malice dominates when both kinds of leaser appear in the same round.
  const double next = malicious > 0 ? previous - coefficient * power_level * malicious
                                    : previous + coefficient * power_level * accepted;
  return std::max(0.0, next);
}

ReputationLedger::ReputationLedger(const std::vector<int>& satellites) {
  for (int s : satellites) tokens_[s] = 0.0;
}

double ReputationLedger::tokens(int satellite) const {
  const auto it = tokens_.find(satellite);
  if (it == tokens_.end()) throw std::out_of_range("satellite not in ledger");
  return it->second;
}

double ReputationLedger::apply(const TransactionRecord& r, double coefficient) {
  double& current = tokens_.at(r.satellite);
  const double next =
      update_reputation(current, coefficient, r.power_level, r.accepted, r.malicious);
  history_.push_back({r.iteration, r.satellite, next - current,
                      r.malicious > 0 ? ReputationCause::malicious : ReputationCause::compliant});
  current = next;
  return next;
}

void ReputationLedger::reset(int satellite, std::int64_t round) {
  double& current = tokens_.at(satellite);
  history_.push_back({round, satellite, -current, ReputationCause::aggregation_reset});
  current = 0.0;
}

void ReputationLedger::set(int satellite, double value) { tokens_.at(satellite) = value; }

int select_aggregator(const ReputationLedger& ledger, const std::set<int>& online) {
  // Walking the ranking and skipping offline nodes is the same as the argmax
  // over the online subset; std::map iterates ids ascending, so strict '>'
  // keeps the lowest id on ties.
  int best = -1;
  double best_tokens = -1.0;
  for (const auto& [id, tokens] : ledger.snapshot()) {
    if (!online.contains(id)) continue;
    if (tokens > best_tokens) {
      best = id;
      best_tokens = tokens;
    }
  }
  if (best < 0) throw Error(Errc::no_online_node, "no online satellite to aggregate");
  return best;
}

}  // namespace leomarket::fedchain
