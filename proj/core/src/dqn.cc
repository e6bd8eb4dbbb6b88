#include "sungka/dqn.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sungka/harness.h"

namespace sungka {

EpsilonSchedule parse_epsilon_schedule(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty())
      throw std::invalid_argument("bad epsilon value '" + s + "' in '" + text + "'");
    return v;
  };
  if (parts.size() == 2 && parts[0] == "fixed") return EpsilonSchedule::fixed(number(parts[1]));
  if (parts.size() == 3 && parts[0] == "anneal")
    return EpsilonSchedule::linear(number(parts[1]), number(parts[2]));
  throw std::invalid_argument("epsilon schedule must be fixed:E or anneal:FROM:TO, got '" + text +
                              "'");
}

std::string to_string(const EpsilonSchedule& schedule) {
  std::ostringstream os;
  if (schedule.kind == EpsilonSchedule::Kind::kFixed)
    os << "fixed:" << schedule.start;
  else
    os << "anneal:" << schedule.start << ':' << schedule.end;
  return os.str();
}

double epsilon_at(const EpsilonSchedule& schedule, int episode, int total_episodes) {
  if (schedule.kind == EpsilonSchedule::Kind::kFixed) return schedule.start;
  const double half = total_episodes / 2.0;
  if (half <= 0.0 || episode >= half) return schedule.end;
  const double t = static_cast<double>(episode) / half;
  return schedule.start + (schedule.end - schedule.start) * t;
}

void TrainConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
  if (episodes < 0) fail("episodes must be non-negative");
  if (!(gamma >= 0.0 && gamma < 1.0)) fail("gamma must lie in [0, 1)");
  for (double e : {epsilon.start, epsilon.end})
    if (!(e >= 0.0 && e <= 1.0)) fail("epsilon must lie in [0, 1]");
  if (batch_size == 0) fail("batch size must be positive");
  if (batch_size > buffer_capacity) fail("batch size exceeds buffer capacity");
  if (sync_period <= 0) fail("target sync period must be positive");
  if (!(optimizer.learning_rate > 0.0)) fail("learning rate must be positive");
  if (layer_dims.size() < 2 || layer_dims.front() != kNumHouses ||
      layer_dims.back() != kHousesPerSide)
    fail("layer dims must start at 14 and end at 7");
  if (probe_period < 0 || probe_episodes <= 0) fail("bad probe settings");
  if (!(probe_epsilon >= 0.0 && probe_epsilon <= 1.0)) fail("probe epsilon must lie in [0, 1]");
  make_opponent(opponent);
}

Eigen::MatrixXd encode_states(std::span<const Transition> batch, bool next, Player seat,
                              bool canonical) {
  Eigen::MatrixXd x(kNumHouses, static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i)
    x.col(static_cast<Eigen::Index>(i)) =
        encode(next ? batch[i].next_state : batch[i].state, seat, canonical);
  return x;
}

namespace {

double bootstrap_max(const Eigen::VectorXd& q, const Observation& next_state,
                     const TargetOptions& options) {
  if (!options.legal_max) return q.maxCoeff();
  const int offset = options.seat == Player::kOne ? 0 : kHousesPerSide;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kHousesPerSide; ++k)
    if (next_state[static_cast<std::size_t>(offset + k)] > 0) best = std::max(best, q[k]);
  return std::isfinite(best) ? best : q.maxCoeff();
}

}  // namespace

Eigen::VectorXd td_targets(std::span<const Transition> batch, const QNetwork& target,
                           const TargetOptions& options) {
  if (batch.empty()) throw std::invalid_argument("td_targets on an empty batch");
  const Eigen::MatrixXd next_q =
      target.forward_batch(encode_states(batch, true, options.seat, options.canonical));
  Eigen::VectorXd y(static_cast<Eigen::Index>(batch.size()));
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const auto col = static_cast<Eigen::Index>(i);
    double value = batch[i].reward;
    if (!(options.done_masking && batch[i].done))
      value += options.gamma * bootstrap_max(next_q.col(col), batch[i].next_state, options);
    y[col] = value;
  }
  return y;
}

double train_step(QNetwork& online, const QNetwork& target, std::span<const Transition> batch,
                  const TargetOptions& options, Optimizer& optimizer) {
  const Eigen::VectorXd y = td_targets(batch, target, options);
  const Eigen::MatrixXd x = encode_states(batch, false, options.seat, options.canonical);
  std::vector<int> actions;
  actions.reserve(batch.size());
  for (const Transition& t : batch) actions.push_back(t.action);

  Gradients grads;
  const double loss = masked_mse_gradients(online, x, actions, y, grads);
  if (!std::isfinite(loss)) throw TrainingDiverged("non-finite training loss");
  optimizer.step(online, grads);
  return loss;
}

Policy make_opponent(const std::string& name) {
  if (name == "random") return make_random_policy();
  if (name == "max") return make_max_policy();
  if (name == "exact") return make_exact_policy();
  throw std::invalid_argument("unknown training opponent '" + name +
                              "' (expected random|max|exact)");
}

TrainResult train(const TrainConfig& config, ProbeFn probe,
                  const std::function<void(const MetricsRow&)>& on_row) {
  config.validate();
  if (!probe) {
    ProbeConfig pc;
    pc.episodes = config.probe_episodes;
    pc.epsilon = config.probe_epsilon;
    pc.seat = config.seat;
    pc.seed = config.seed;
    pc.greedy.mask = config.mask;
    pc.greedy.canonical = config.canonical;
    probe = [pc](const QNetwork& snapshot, int episode) {
      return training_probe(snapshot, episode, pc);
    };
  }

  TrainResult result;
  result.network = init_network(config.seed, config.layer_dims);
  QNetwork& online = result.network;
  QNetwork target = online;
  Optimizer optimizer(online, config.optimizer);
  ReplayBuffer buffer(config.buffer_capacity);
  Rng env_rng = make_rng(config.seed, kTagTrain, 0);
  Rng replay_rng = make_rng(config.seed, kTagTrain, 1);
  const Policy opponent = make_opponent(config.opponent);

  const TargetOptions target_options{config.gamma, config.done_masking, config.seat,
                                     config.canonical, config.mask};
  GreedyOptions greedy;
  greedy.mask = config.mask;
  greedy.canonical = config.canonical;

  auto run_probe = [&](int episode) {
    if (config.probe_period <= 0 || episode % config.probe_period != 0) return;
    const QNetwork snapshot = online;
    MetricsRow row = probe(snapshot, episode);
    if (on_row) on_row(row);
    result.metrics.push_back(row);
  };

  for (int episode = 0; episode < config.episodes; ++episode) {
    run_probe(episode);
    if (episode % config.sync_period == 0) {
      target = online;
      ++result.target_syncs;
    }
    greedy.epsilon = epsilon_at(config.epsilon, episode, config.episodes);

    EpisodeContext ctx;
    ctx.agent_seat = config.seat;
    ctx.opponent = &opponent;
    ctx.rng = &env_rng;
    ctx.reward_mode = config.reward_mode;

    const OpeningResult opening = play_opening(new_board(), ctx);
    Board board = opening.board;
    bool terminal = opening.terminal;
    while (!terminal) {
      const int action = greedy_q_policy(online, board, config.seat, env_rng, greedy);
      const TimestepResult step = agent_timestep(board, action, ctx);
      buffer.push(step.transition);
      ++result.env_steps;
      board = step.board;
      terminal = step.terminal;

      if (buffer.size() >= config.batch_size) {
        const std::vector<Transition> batch = buffer.sample(config.batch_size, replay_rng);
        result.last_loss = train_step(online, target, batch, target_options, optimizer);
        ++result.updates;
      }
    }
  }
  run_probe(config.episodes);
  result.buffer_size = buffer.size();
  return result;
}

}  // namespace sungka
