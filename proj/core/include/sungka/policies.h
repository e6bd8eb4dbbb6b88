#pragma once

// Baseline opponents and epsilon-greedy selection over a Q-network. Every
// policy returns a seat-local house index.

#include <memory>
#include <stdexcept>

#include "sungka/env.h"
#include "sungka/network.h"

namespace sungka {

class NoLegalMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Uniform over the non-empty houses.
int random_policy(const Board& board, Player player, Rng& rng);

// Fullest house; ties go to the house nearest the head (largest index).
int max_policy(const Board& board, Player player);

// Nearest-to-head house whose count equals its distance to the head
// (7 - index), which drops the last stone into the own head. Falls back to
// max_policy when no house qualifies.
int exact_policy(const Board& board, Player player);

struct GreedyOptions {
  double epsilon = 0.0;
  // Restrict both the random and the greedy branch to legal houses. With
  // masking off the policy draws over all 7 houses and retries until it hits a
  // non-empty one, which is how an unmasked agent escapes an empty argmax.
  bool mask = true;
  bool canonical = false;
  int max_retries = 100000;
};

int greedy_q_policy(const QNetwork& net, const Board& board, Player player, Rng& rng,
                    const GreedyOptions& options = {});

// Index of the largest entry among `allowed` (first one on ties).
int masked_argmax(const Eigen::VectorXd& q, std::span<const int> allowed);

Policy make_random_policy();
Policy make_max_policy();
Policy make_exact_policy();
Policy make_greedy_policy(std::shared_ptr<const QNetwork> net, GreedyOptions options);

}  // namespace sungka
