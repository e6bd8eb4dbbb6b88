#include "sungka/replay.h"

#include <numeric>
#include <random>
#include <string>

namespace sungka {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay capacity must be positive");
  data_.reserve(capacity_);
}

void ReplayBuffer::push(const Transition& t) {
  if (data_.size() < capacity_) {
    data_.push_back(t);
  } else {
    data_[next_] = t;
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<std::size_t> ReplayBuffer::sample_indices(std::size_t batch_size, Rng& rng) {
  if (batch_size == 0) throw std::invalid_argument("batch size must be positive");
  if (data_.size() < batch_size)
    throw InsufficientSamples("need " + std::to_string(batch_size) + " transitions, have " +
                              std::to_string(data_.size()));
  // Partial Fisher-Yates over a fresh identity permutation.
  scratch_.resize(data_.size());
  std::iota(scratch_.begin(), scratch_.end(), std::size_t{0});
  for (std::size_t i = 0; i < batch_size; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, scratch_.size() - 1);
    std::swap(scratch_[i], scratch_[pick(rng)]);
  }
  return {scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(batch_size)};
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch_size, Rng& rng) {
  std::vector<Transition> batch;
  batch.reserve(batch_size);
  for (std::size_t i : sample_indices(batch_size, rng)) batch.push_back(data_[i]);
  return batch;
}

}  // namespace sungka
