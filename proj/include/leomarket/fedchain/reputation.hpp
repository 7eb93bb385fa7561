// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace leomarket::fedchain {

/// What a satellite reported for one access round.
struct TransactionRecord {
  std::int64_t iteration = 0;
  int satellite = 0;
  int accepted = 0;     // N_acc: compliant leasers
  int malicious = 0;    // N_mal: leasers caught misbehaving
  int power_level = 0;  // l_s
  double revenue = 0.0;

  friend bool operator==(const TransactionRecord&, const TransactionRecord&) = default;
};

/// New token count after one access round: gain p_hat * l_s * N_acc when nobody
/// misbehaved, otherwise lose p_hat * l_s * N_mal. Clamped at zero.
double update_reputation(double previous, double coefficient, int power_level, int accepted,
                         int malicious);

enum class ReputationCause : std::uint8_t { compliant, malicious, aggregation_reset };

struct ReputationEvent {
  std::int64_t round = 0;
  int satellite = 0;
  double delta = 0.0;
  ReputationCause cause = ReputationCause::compliant;
};

class ReputationLedger {
 public:
  ReputationLedger() = default;
  explicit ReputationLedger(const std::vector<int>& satellites);

  double tokens(int satellite) const;
  bool contains(int satellite) const { return tokens_.contains(satellite); }
  const std::map<int, double>& snapshot() const noexcept { return tokens_; }
  const std::vector<ReputationEvent>& history() const noexcept { return history_; }

  /// Applies one transaction record, returns the new token count.
  double apply(const TransactionRecord& record, double coefficient);
  /// The aggregator's tokens are spent: reset to zero.
  void reset(int satellite, std::int64_t round);
  /// Overwrites a claimed value (used when a commitment is rejected).
  void set(int satellite, double tokens);

  friend bool operator==(const ReputationLedger& a, const ReputationLedger& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  std::map<int, double> tokens_;
  std::vector<ReputationEvent> history_;
};

/// Highest-reputation online satellite, lowest id on ties.
/// Throws NoOnlineNode when no listed satellite is online.
int select_aggregator(const ReputationLedger& ledger, const std::set<int>& online);

}  // namespace leomarket::fedchain
