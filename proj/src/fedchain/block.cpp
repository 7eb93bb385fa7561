// SPDX-License-Identifier: Apache-2.0
#include "leomarket/fedchain/block.hpp"

#include "leomarket/bytes.hpp"
#include "leomarket/error.hpp"

namespace leomarket::fedchain {

namespace {

void write_digest(bytes::Writer& w, const Digest& d) { w.blob(d); }

Digest read_digest(bytes::Reader& r) {
  Digest d{};
  r.blob(d);
  return d;
}

void write_content(bytes::Writer& w, const Block& b) {
  w.u32(kBlockFormat);
  w.u64(b.height);
  write_digest(w, b.prev_digest);
  w.i64(b.round);
  w.i64(b.aggregator);
  w.f64(b.reputation_coefficient);
  write_digest(w, b.global_params_digest);
  const auto params = b.global_params.serialize();
  w.u32(static_cast<std::uint32_t>(params.size()));
  w.blob(params);
  w.u32(static_cast<std::uint32_t>(b.updates.size()));
  for (const auto& u : b.updates) {
    w.i64(u.satellite);
    write_digest(w, u.params_digest);
  }
  w.u32(static_cast<std::uint32_t>(b.reputation_snapshot.size()));
  for (const auto& [id, tokens] : b.reputation_snapshot) {
    w.i64(id);
    w.f64(tokens);
  }
  w.u32(static_cast<std::uint32_t>(b.transactions.size()));
  for (const auto& t : b.transactions) {
    w.i64(t.iteration);
    w.i64(t.satellite);
    w.i64(t.accepted);
    w.i64(t.malicious);
    w.i64(t.power_level);
    w.f64(t.revenue);
  }
  w.i64(b.timestamp);
}

int read_int(bytes::Reader& r) {
  const std::int64_t v = r.i64();
  if (v < INT32_MIN || v > INT32_MAX) throw Error(Errc::parse, "integer field out of range");
  return static_cast<int>(v);
}

// Guards count prefixes so a corrupted length cannot trigger a huge allocation.
std::uint32_t read_count(bytes::Reader& r, std::size_t item_bytes) {
  const std::uint32_t n = r.u32();
  if (static_cast<std::size_t>(n) * item_bytes > r.remaining()) {
    throw Error(Errc::parse, "list length exceeds remaining input");
  }
  return n;
}

}  // namespace

std::vector<std::uint8_t> Block::content_bytes() const {
  bytes::Writer w;
  write_content(w, *this);
  return std::move(w).take();
}

std::vector<std::uint8_t> Block::serialize() const {
  bytes::Writer w;
  write_content(w, *this);
  write_digest(w, digest);
  return std::move(w).take();
}

Block Block::deserialize(std::span<const std::uint8_t> in) {
  bytes::Reader r(in);
  if (r.u32() != kBlockFormat) throw Error(Errc::parse, "unknown block format");
  Block b;
  b.height = r.u64();
  b.prev_digest = read_digest(r);
  b.round = r.i64();
  b.aggregator = read_int(r);
  b.reputation_coefficient = r.f64();
  b.global_params_digest = read_digest(r);

  const std::uint32_t params_len = read_count(r, 1);
  std::vector<std::uint8_t> params(params_len);
  r.blob(params);
  b.global_params = ModelParams::deserialize(params);

  const std::uint32_t n_updates = read_count(r, 8 + 32);
  b.updates.resize(n_updates);
  for (auto& u : b.updates) {
    u.satellite = read_int(r);
    u.params_digest = read_digest(r);
  }
  const std::uint32_t n_snapshot = read_count(r, 16);
  for (std::uint32_t i = 0; i < n_snapshot; ++i) {
    const int id = read_int(r);
    const double tokens = r.f64();
    if (!b.reputation_snapshot.emplace(id, tokens).second) {
      throw Error(Errc::parse, "duplicate satellite in reputation snapshot");
    }
  }
  const std::uint32_t n_tx = read_count(r, 48);
  b.transactions.resize(n_tx);
  for (auto& t : b.transactions) {
    t.iteration = r.i64();
    t.satellite = read_int(r);
    t.accepted = read_int(r);
    t.malicious = read_int(r);
    t.power_level = read_int(r);
    t.revenue = r.f64();
  }
  b.timestamp = r.i64();
  b.digest = read_digest(r);
  if (!r.done()) throw Error(Errc::parse, "trailing bytes after block");
  return b;
}

}  // namespace leomarket::fedchain
