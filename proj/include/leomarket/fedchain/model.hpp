// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leomarket/fedchain/digest.hpp"

namespace leomarket::fedchain {

/// A model as the chain layer sees it: layer sizes plus a flat parameter array.
struct ModelParams {
  std::vector<std::uint32_t> shape;
  std::vector<double> values;

  /// u32 layer count, u32 layer sizes, f64 values; little-endian.
  std::vector<std::uint8_t> serialize() const;
  static ModelParams deserialize(std::span<const std::uint8_t> bytes);
  Digest digest() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

struct ModelUpdate {
  int satellite = 0;
  std::int64_t round = 0;
  ModelParams params;
  Digest params_digest{};

  static ModelUpdate make(int satellite, std::int64_t round, ModelParams params);
  bool digest_matches() const { return params.digest() == params_digest; }
};

/// Equal-weight elementwise mean. Throws EmptyUpdateSet or ShapeMismatch.
ModelParams aggregate_models(std::span<const ModelUpdate> updates);

}  // namespace leomarket::fedchain
