// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

namespace leomarket::harness {

enum class Stream : std::uint64_t { scenario = 1, init = 2, train = 3, offline = 4 };

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based key so every (seed, stream, agent, iteration) draws an
/// independent sequence no matter which thread runs it.
constexpr std::uint64_t stream_key(std::uint64_t seed, Stream s, std::uint64_t agent,
                                   std::uint64_t iteration) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(s));
  h = splitmix64(h ^ agent);
  return splitmix64(h ^ iteration);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, Stream s, std::uint64_t agent = 0,
                                std::uint64_t iteration = 0) {
  return std::mt19937_64(stream_key(seed, s, agent, iteration));
}

}  // namespace leomarket::harness
