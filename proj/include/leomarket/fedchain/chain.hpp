// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "leomarket/fedchain/block.hpp"
#include "leomarket/fedchain/model.hpp"
#include "leomarket/fedchain/reputation.hpp"

namespace leomarket::fedchain {

inline constexpr double kCommitmentTolerance = 1e-9;

class Chain {
 public:
  /// Height-0 block: zero prev digest, every satellite at zero tokens.
  static Chain genesis(const std::vector<int>& satellites, double reputation_coefficient);

  explicit Chain(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  std::uint64_t height() const { return blocks_.empty() ? 0 : blocks_.back().height; }
  const Block& back() const { return blocks_.back(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  bool empty() const noexcept { return blocks_.empty(); }

  void append(Block block) { blocks_.push_back(std::move(block)); }

 private:
  Chain() = default;
  std::vector<Block> blocks_;
};

struct VerifyResult {
  bool ok = true;
  std::optional<std::uint64_t> height;  // first offending block
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
  static VerifyResult failure(std::uint64_t h, std::string why) {
    return {false, h, std::move(why)};
  }
};

/// Hash links, self digests, parameter digests, and the reputation replay
/// (previous snapshot + this block's records - aggregator reset) of every block.
VerifyResult verify_chain(std::span<const Block> chain);

/// Same checks on raw serialized blocks; any blob that fails to parse or is
/// not in canonical form fails at its index.
VerifyResult verify_serialized_chain(std::span<const std::vector<std::uint8_t>> blobs);

/// Tokens `satellite` should hold after applying its `records` on top of the
/// snapshot in `prev`. Throws MissingSnapshot.
double recompute_reputation(const Block& prev, std::span<const TransactionRecord> records,
                            int satellite, double coefficient);

/// True when `claimed` equals the recomputed tokens within 1e-9.
bool validate_reputation_commitment(double claimed, const Block& prev,
                                    std::span<const TransactionRecord> records, int satellite,
                                    double coefficient);

struct RoundInput {
  std::int64_t round = 0;
  int aggregation_frequency = 5;
  std::span<const ModelUpdate> updates;
  std::span<const TransactionRecord> records;  // everything since the previous block
  std::set<int> online;
  double reward = 0.0;  // credited to the aggregator's utility
};

struct FinalizeResult {
  int aggregator = kNoAggregator;
  double reward = 0.0;
  ModelParams global;           // broadcast to every node
  std::vector<int> rejected_claims;   // satellites whose reputation claim was replaced
  std::vector<int> rejected_updates;  // updates whose digest did not match
};

/// Validates claims, elects the aggregator, averages, seals and appends the
/// block, and spends the aggregator's reputation. `ledger` holds the claims on
/// entry and the accepted values on exit.
FinalizeResult finalize_round(const RoundInput& input, ReputationLedger& ledger, Chain& chain);

/// Reputation tokens implied by the chain after its last block.
ReputationLedger replay_ledger(std::span<const Block> chain);

}  // namespace leomarket::fedchain
