// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "leomarket/qlearn/mdp.hpp"

namespace leomarket::qlearn {

/// Bounded FIFO of experiences; the oldest entry is evicted first.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Experience& e);

  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return capacity_; }
  bool empty() const noexcept { return size_ == 0; }

  /// i-th oldest entry.
  const Experience& at(std::size_t i) const;

  /// Uniform sample of `count` distinct entries (count <= size()).
  std::vector<Experience> sample(std::size_t count, std::mt19937_64& rng) const;

 private:
  std::vector<Experience> ring_;
  std::size_t capacity_;
  std::size_t head_ = 0;  // slot of the oldest entry
  std::size_t size_ = 0;
};

}  // namespace leomarket::qlearn
