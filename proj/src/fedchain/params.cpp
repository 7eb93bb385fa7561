// SPDX-License-Identifier: Apache-2.0
#include "leomarket/fedchain/model.hpp"

#include <algorithm>

#include "leomarket/bytes.hpp"
#include "leomarket/error.hpp"

namespace leomarket::fedchain {

std::vector<std::uint8_t> ModelParams::serialize() const {
  bytes::Writer w;
  w.u32(static_cast<std::uint32_t>(shape.size()));
  for (auto s : shape) w.u32(s);
  for (double v : values) w.f64(v);
  return std::move(w).take();
}

ModelParams ModelParams::deserialize(std::span<const std::uint8_t> in) {
  bytes::Reader r(in);
  ModelParams p;
  const std::uint32_t layers = r.u32();
  if (layers > r.remaining() / 4) throw Error(Errc::parse, "layer count exceeds input");
  p.shape.resize(layers);
  for (auto& s : p.shape) s = r.u32();
  if (r.remaining() % 8 != 0) throw Error(Errc::parse, "parameter bytes not a multiple of 8");
  p.values.resize(r.remaining() / 8);
  for (double& v : p.values) v = r.f64();
  return p;
}

Digest ModelParams::digest() const { return sha256(serialize()); }

ModelUpdate ModelUpdate::make(int satellite, std::int64_t round, ModelParams params) {
  ModelUpdate u{satellite, round, std::move(params), {}};
  u.params_digest = u.params.digest();
  return u;
}

ModelParams aggregate_models(std::span<const ModelUpdate> updates) {
  if (updates.empty()) throw Error(Errc::empty_update_set, "no model updates to aggregate");
  const ModelParams& first = updates.front().params;
  for (const auto& u : updates) {
    if (u.params.shape != first.shape || u.params.values.size() != first.values.size()) {
      throw Error(Errc::shape_mismatch, "model updates disagree on shape");
    }
  }
  ModelParams mean{first.shape, std::vector<double>(first.values.size(), 0.0)};
  // Summing each coordinate in sorted order makes the result independent of
  // the order updates arrive in.
  std::vector<double> column(updates.size());
  const double n = static_cast<double>(updates.size());
  for (std::size_t i = 0; i < mean.values.size(); ++i) {
    for (std::size_t k = 0; k < updates.size(); ++k) column[k] = updates[k].params.values[i];
    std::sort(column.begin(), column.end());
    double total = 0.0;
    for (double v : column) total += v;
    mean.values[i] = total / n;
  }
  return mean;
}

}  // namespace leomarket::fedchain
