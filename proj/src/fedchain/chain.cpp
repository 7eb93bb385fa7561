// SPDX-License-Identifier: Apache-2.0
#include "leomarket/fedchain/chain.hpp"

#include <cmath>
#include <stdexcept>

#include "leomarket/error.hpp"

namespace leomarket::fedchain {

Chain Chain::genesis(const std::vector<int>& satellites, double reputation_coefficient) {
  Block g;
  g.height = 0;
  g.prev_digest = kZeroDigest;
  g.round = 0;
  g.aggregator = kNoAggregator;
  g.reputation_coefficient = reputation_coefficient;
  g.global_params_digest = g.global_params.digest();
  for (int s : satellites) g.reputation_snapshot[s] = 0.0;
  g.timestamp = 0;
  g.seal();
  Chain c;
  c.append(std::move(g));
  return c;
}

namespace {

VerifyResult verify_block(const Block& b, const Block* prev, std::uint64_t index) {
  if (b.height != index) return VerifyResult::failure(index, "height out of sequence");
  if (b.compute_digest() != b.digest) return VerifyResult::failure(index, "block digest mismatch");
  if (b.global_params.digest() != b.global_params_digest) {
    return VerifyResult::failure(index, "global parameter digest mismatch");
  }
  if (prev == nullptr) {
    if (b.prev_digest != kZeroDigest) return VerifyResult::failure(index, "genesis prev digest not zero");
    return {};
  }
  if (b.prev_digest != prev->digest) return VerifyResult::failure(index, "prev digest mismatch");
  if (b.round <= prev->round) return VerifyResult::failure(index, "round not increasing");

  std::map<int, double> replay = prev->reputation_snapshot;
  for (const auto& t : b.transactions) {
    const auto it = replay.find(t.satellite);
    if (it == replay.end()) return VerifyResult::failure(index, "record for unknown satellite");
    if (t.accepted < 0 || t.malicious < 0) return VerifyResult::failure(index, "negative count");
    it->second = update_reputation(it->second, b.reputation_coefficient, t.power_level,
                                   t.accepted, t.malicious);
  }
  const auto winner = replay.find(b.aggregator);
  if (winner == replay.end()) return VerifyResult::failure(index, "aggregator not a member");
  winner->second = 0.0;
  if (replay != b.reputation_snapshot) {
    return VerifyResult::failure(index, "reputation snapshot does not replay");
  }
  return {};
}

}  // namespace

VerifyResult verify_chain(std::span<const Block> chain) {
  for (std::size_t i = 0; i < chain.size(); ++i) {
    auto r = verify_block(chain[i], i == 0 ? nullptr : &chain[i - 1], i);
    if (!r) return r;
  }
  return {};
}

VerifyResult verify_serialized_chain(std::span<const std::vector<std::uint8_t>> blobs) {
  std::vector<Block> blocks;
  blocks.reserve(blobs.size());
  for (std::size_t i = 0; i < blobs.size(); ++i) {
    try {
      blocks.push_back(Block::deserialize(blobs[i]));
    } catch (const Error& e) {
      return VerifyResult::failure(i, e.what());
    }
    if (blocks.back().serialize() != blobs[i]) {
      return VerifyResult::failure(i, "block bytes not in canonical form");
    }
  }
  return verify_chain(blocks);
}

double recompute_reputation(const Block& prev, std::span<const TransactionRecord> records,
                            int satellite, double coefficient) {
  const auto it = prev.reputation_snapshot.find(satellite);
  if (it == prev.reputation_snapshot.end()) {
    throw Error(Errc::missing_snapshot, "satellite absent from previous block");
  }
  double tokens = it->second;
  for (const auto& r : records) {
    if (r.satellite != satellite) continue;
    tokens = update_reputation(tokens, coefficient, r.power_level, r.accepted, r.malicious);
  }
  return tokens;
}

bool validate_reputation_commitment(double claimed, const Block& prev,
                                    std::span<const TransactionRecord> records, int satellite,
                                    double coefficient) {
  const double expected = recompute_reputation(prev, records, satellite, coefficient);
  return std::abs(claimed - expected) <= kCommitmentTolerance;
}

FinalizeResult finalize_round(const RoundInput& in, ReputationLedger& ledger, Chain& chain) {
  if (chain.empty()) throw std::logic_error("chain has no genesis block");
  if (in.aggregation_frequency <= 0) throw std::invalid_argument("aggregation frequency");
  const Block& prev = chain.back();
  const std::int64_t gap = in.round - prev.round;
  if (gap <= 0 || gap % in.aggregation_frequency != 0) {
    throw std::invalid_argument("round is not an aggregation boundary after the last block");
  }
  const double coefficient = prev.reputation_coefficient;

  FinalizeResult out;
  for (const auto& [id, claimed] : ledger.snapshot()) {
    const double expected = recompute_reputation(prev, in.records, id, coefficient);
    if (std::abs(claimed - expected) > kCommitmentTolerance) {
      out.rejected_claims.push_back(id);
    }
  }
  for (int id : out.rejected_claims) {
    ledger.set(id, recompute_reputation(prev, in.records, id, coefficient));
  }

  std::vector<ModelUpdate> accepted;
  accepted.reserve(in.updates.size());
  for (const auto& u : in.updates) {
    if (u.digest_matches()) {
      accepted.push_back(u);
    } else {
      out.rejected_updates.push_back(u.satellite);
    }
  }

  out.aggregator = select_aggregator(ledger, in.online);
  out.global = aggregate_models(accepted);
  out.reward = in.reward;
  ledger.reset(out.aggregator, in.round);

  Block b;
  b.height = prev.height + 1;
  b.prev_digest = prev.digest;
  b.round = in.round;
  b.aggregator = out.aggregator;
  b.reputation_coefficient = coefficient;
  b.global_params = out.global;
  b.global_params_digest = b.global_params.digest();
  for (const auto& u : accepted) b.updates.push_back({u.satellite, u.params_digest});
  b.reputation_snapshot = ledger.snapshot();
  b.transactions.assign(in.records.begin(), in.records.end());
  b.timestamp = in.round;
  b.seal();
  chain.append(std::move(b));
  return out;
}

ReputationLedger replay_ledger(std::span<const Block> chain) {
  ReputationLedger ledger;
  if (chain.empty()) return ledger;
  std::vector<int> ids;
  for (const auto& [id, tokens] : chain.front().reputation_snapshot) ids.push_back(id);
  ledger = ReputationLedger(ids);
  for (const auto& [id, tokens] : chain.front().reputation_snapshot) ledger.set(id, tokens);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    for (const auto& t : chain[i].transactions) ledger.apply(t, chain[i].reputation_coefficient);
    ledger.reset(chain[i].aggregator, chain[i].round);
  }
  return ledger;
}

}  // namespace leomarket::fedchain
