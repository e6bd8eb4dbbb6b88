#pragma once

#include <stdexcept>
#include <vector>

#include "sungka/env.h"

namespace sungka {

inline constexpr std::size_t kDefaultReplayCapacity = 2000;

class InsufficientSamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-capacity ring of transitions; the oldest entry is overwritten once
// the buffer is full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity = kDefaultReplayCapacity);

  void push(const Transition& t);
  // Uniform without replacement within one batch. Throws InsufficientSamples
  // when fewer than batch_size transitions are stored.
  std::vector<Transition> sample(std::size_t batch_size, Rng& rng);
  // Storage positions for a sample; exposed for tests.
  std::vector<std::size_t> sample_indices(std::size_t batch_size, Rng& rng);

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return data_.empty(); }
  const Transition& at(std::size_t index) const { return data_.at(index); }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> data_;
  std::vector<std::size_t> scratch_;
};

}  // namespace sungka
