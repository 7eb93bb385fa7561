// SPDX-License-Identifier: Apache-2.0
#include "leomarket/qlearn/replay.hpp"

#include <algorithm>
#include <stdexcept>

namespace leomarket::qlearn {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
  ring_.reserve(capacity);
}

void ReplayBuffer::push(const Experience& e) {
  if (size_ < capacity_) {
    ring_.push_back(e);
    ++size_;
    return;
  }
  ring_[head_] = e;
  head_ = (head_ + 1) % capacity_;
}

const Experience& ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) throw std::out_of_range("replay index");
  return ring_[(head_ + i) % capacity_];
}

std::vector<Experience> ReplayBuffer::sample(std::size_t count, std::mt19937_64& rng) const {
  if (count > size_) throw std::invalid_argument("sample larger than buffer");
  // Floyd's algorithm: `count` distinct indices with `count` draws.
  std::vector<std::size_t> picked;
  picked.reserve(count);
  for (std::size_t j = size_ - count; j < size_; ++j) {
    std::uniform_int_distribution<std::size_t> draw(0, j);
    const std::size_t t = draw(rng);
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
      picked.push_back(t);
    } else {
      picked.push_back(j);
    }
  }
  std::vector<Experience> out;
  out.reserve(count);
  for (std::size_t idx : picked) out.push_back(at(idx));
  return out;
}

}  // namespace leomarket::qlearn
