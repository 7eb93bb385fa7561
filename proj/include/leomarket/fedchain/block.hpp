// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "leomarket/fedchain/digest.hpp"
#include "leomarket/fedchain/model.hpp"
#include "leomarket/fedchain/reputation.hpp"

namespace leomarket::fedchain {

inline constexpr std::uint32_t kBlockFormat = 1;
inline constexpr int kNoAggregator = -1;

struct UpdateDigest {
  int satellite = 0;
  Digest params_digest{};

  friend bool operator==(const UpdateDigest&, const UpdateDigest&) = default;
};

/// One aggregation round. `digest` covers every other field through the
/// canonical byte form, so editing any field without re-hashing is detectable,
/// and the successor's `prev_digest` pins the re-hashed value.
struct Block {
  std::uint64_t height = 0;
  Digest prev_digest{};
  std::int64_t round = 0;
  int aggregator = kNoAggregator;
  double reputation_coefficient = 1.0;
  Digest global_params_digest{};
  ModelParams global_params;
  std::vector<UpdateDigest> updates;
  std::map<int, double> reputation_snapshot;  // tokens after the aggregator reset
  std::vector<TransactionRecord> transactions;  // records since the previous block
  std::int64_t timestamp = 0;                   // logical clock (round index)
  Digest digest{};

  /// Canonical bytes of every field except `digest`.
  std::vector<std::uint8_t> content_bytes() const;
  Digest compute_digest() const { return sha256(content_bytes()); }
  void seal() { digest = compute_digest(); }

  /// content_bytes() followed by the 32-byte digest.
  std::vector<std::uint8_t> serialize() const;
  /// Throws Errc::parse on malformed input.
  static Block deserialize(std::span<const std::uint8_t> bytes);

  friend bool operator==(const Block&, const Block&) = default;
};

}  // namespace leomarket::fedchain
