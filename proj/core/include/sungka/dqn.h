#pragma once

// Turn-based DQN training against a fixed opponent: epsilon-greedy agent
// timesteps, experience replay, a lagged target network and one gradient
// step per environment step.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sungka/network.h"
#include "sungka/policies.h"
#include "sungka/replay.h"

namespace sungka {

class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpsilonSchedule {
  enum class Kind { kFixed, kLinear };
  Kind kind = Kind::kFixed;
  double start = 0.05;  // the fixed value in kFixed mode
  double end = 0.05;

  static EpsilonSchedule fixed(double value) { return {Kind::kFixed, value, value}; }
  static EpsilonSchedule linear(double from, double to) { return {Kind::kLinear, from, to}; }
};

// "fixed:0.05" or "anneal:0.9:0.05".
EpsilonSchedule parse_epsilon_schedule(const std::string& text);
std::string to_string(const EpsilonSchedule& schedule);

// Linear mode anneals from start to end over the first half of the run and
// then stays at end.
double epsilon_at(const EpsilonSchedule& schedule, int episode, int total_episodes);

struct TrainConfig {
  int episodes = 10000;
  double gamma = 0.99;
  EpsilonSchedule epsilon = EpsilonSchedule::fixed(0.05);
  std::size_t batch_size = 128;
  std::size_t buffer_capacity = kDefaultReplayCapacity;
  int sync_period = 100;  // episodes between target syncs
  OptimizerConfig optimizer;
  std::uint64_t seed = 1;
  Player seat = Player::kOne;
  std::string opponent = "random";  // random | max | exact
  bool mask = true;
  RewardMode reward_mode = RewardMode::kEq1;
  bool done_masking = true;
  bool canonical = false;
  std::vector<int> layer_dims = kDefaultLayerDims;

  int probe_period = 100;  // 0 disables probes
  int probe_episodes = 100;
  double probe_epsilon = 0.01;

  // Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

struct ProbeStats {
  double mean_score = 0.0;
  double win_pct = 0.0;
};

struct MetricsRow {
  int episode = 0;
  ProbeStats vs_random, vs_max, vs_exact, vs_self;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

inline bool operator==(const ProbeStats& a, const ProbeStats& b) {
  return a.mean_score == b.mean_score && a.win_pct == b.win_pct;
}

// R + gamma * max_a Q_target(S', a); just R for done transitions when
// done_masking is on.
struct TargetOptions {
  double gamma = 0.99;
  bool done_masking = true;
  Player seat = Player::kOne;
  bool canonical = false;
  // Take the bootstrap max over the agent's non-empty houses at S' only.
  // Off: max over all seven outputs. A state with no legal house falls back
  // to all seven.
  bool legal_max = true;
};

Eigen::VectorXd td_targets(std::span<const Transition> batch, const QNetwork& target,
                           const TargetOptions& options);

// One optimiser step on MSE(Q(S, A), td_targets). Returns the loss before the
// update. Throws TrainingDiverged on a non-finite loss.
double train_step(QNetwork& online, const QNetwork& target, std::span<const Transition> batch,
                  const TargetOptions& options, Optimizer& optimizer);

// Packs observations column-wise as network inputs.
Eigen::MatrixXd encode_states(std::span<const Transition> batch, bool next, Player seat,
                              bool canonical);

Policy make_opponent(const std::string& name);

using ProbeFn = std::function<MetricsRow(const QNetwork& snapshot, int episode)>;

struct TrainResult {
  QNetwork network;
  std::vector<MetricsRow> metrics;
  long env_steps = 0;
  long updates = 0;
  int target_syncs = 0;
  std::size_t buffer_size = 0;
  double last_loss = 0.0;
};

// Probes run before episodes 0, P, 2P, ... and once more after the last
// episode when it lands on a multiple of P, giving episodes / P + 1 rows.
// Passing no probe uses training_probe() from the harness.
TrainResult train(const TrainConfig& config, ProbeFn probe = {},
                  const std::function<void(const MetricsRow&)>& on_row = {});

}  // namespace sungka
