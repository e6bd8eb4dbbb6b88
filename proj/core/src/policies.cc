#include "sungka/policies.h"

#include <random>

namespace sungka {
namespace {

void require_move(const Board& board, Player player) {
  if (!has_legal_action(board, player))
    throw NoLegalMove("player " + std::to_string(player_number(player)) + " has no legal move");
}

}  // namespace

int random_policy(const Board& board, Player player, Rng& rng) {
  const std::vector<int> legal = legal_actions(board, player);
  if (legal.empty())
    throw NoLegalMove("player " + std::to_string(player_number(player)) + " has no legal move");
  std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
  return legal[pick(rng)];
}

int max_policy(const Board& board, Player player) {
  require_move(board, player);
  int best = -1;
  for (int i = 0; i < kHousesPerSide; ++i)
    if (board.house(player, i) > 0 && (best < 0 || board.house(player, i) >= board.house(player, best)))
      best = i;
  return best;
}

int exact_policy(const Board& board, Player player) {
  require_move(board, player);
  for (int i = kHousesPerSide - 1; i >= 0; --i)
    if (board.house(player, i) == kHousesPerSide - i) return i;
  return max_policy(board, player);
}

int masked_argmax(const Eigen::VectorXd& q, std::span<const int> allowed) {
  if (allowed.empty()) throw NoLegalMove("argmax over an empty action set");
  int best = allowed.front();
  for (int a : allowed)
    if (q[a] > q[best]) best = a;
  return best;
}

int greedy_q_policy(const QNetwork& net, const Board& board, Player player, Rng& rng,
                    const GreedyOptions& options) {
  const std::vector<int> legal = legal_actions(board, player);
  if (legal.empty())
    throw NoLegalMove("player " + std::to_string(player_number(player)) + " has no legal move");
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  if (options.mask) {
    if (coin(rng) < options.epsilon) {
      std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
      return legal[pick(rng)];
    }
    return masked_argmax(q_values(net, observe(board), player, options.canonical), legal);
  }

  static constexpr int kAll[] = {0, 1, 2, 3, 4, 5, 6};
  const int greedy = masked_argmax(q_values(net, observe(board), player, options.canonical), kAll);
  std::uniform_int_distribution<int> any(0, kHousesPerSide - 1);
  for (int attempt = 0; attempt < options.max_retries; ++attempt) {
    const int choice = coin(rng) < options.epsilon ? any(rng) : greedy;
    if (board.house(player, choice) > 0) return choice;
  }
  throw NoLegalMove("unmasked greedy policy stuck on empty house " + std::to_string(greedy));
}

Policy make_random_policy() {
  return [](const Board& b, Player p, Rng& rng) { return random_policy(b, p, rng); };
}

Policy make_max_policy() {
  return [](const Board& b, Player p, Rng&) { return max_policy(b, p); };
}

Policy make_exact_policy() {
  return [](const Board& b, Player p, Rng&) { return exact_policy(b, p); };
}

Policy make_greedy_policy(std::shared_ptr<const QNetwork> net, GreedyOptions options) {
  return [net = std::move(net), options](const Board& b, Player p, Rng& rng) {
    return greedy_q_policy(*net, b, p, rng, options);
  };
}

}  // namespace sungka
