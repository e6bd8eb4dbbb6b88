// sungka: train, evaluate and play the DQN Sungka agent.
//
//   sungka train --episodes 10000 --epsilon fixed:0.05 --seat 1 --out model.bin --metrics probe.csv
//   sungka eval --model model.bin --opponent max --episodes 1000 --seat 2 --report report.csv
//   sungka play --model model.bin --human-seat 2
//   sungka state-space

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "sungka/dqn.h"
#include "sungka/engine.h"
#include "sungka/harness.h"
#include "sungka/model_io.h"

namespace {

sungka::Player seat_from_int(int seat) {
  return seat == 2 ? sungka::Player::kTwo : sungka::Player::kOne;
}

struct TrainArgs {
  int episodes = 10000;
  std::string epsilon = "fixed:0.05";
  double gamma = 0.99;
  double lr = 1e-3;
  std::size_t buffer = sungka::kDefaultReplayCapacity;
  std::size_t batch = 128;
  int sync = 100;
  int seat = 1;
  std::string opponent = "random";
  std::string reward = "eq1";
  bool mask = true;
  std::string optimizer = "adam";
  bool no_done_masking = false;
  bool canonical = false;
  std::uint64_t seed = 1;
  std::vector<int> hidden{sungka::kDefaultLayerDims.begin() + 1, sungka::kDefaultLayerDims.end() - 1};
  std::string out = "model.bin";
  std::string metrics;
  bool quiet = false;
};

int run_train(const TrainArgs& a) {
  sungka::TrainConfig config;
  config.episodes = a.episodes;
  config.epsilon = sungka::parse_epsilon_schedule(a.epsilon);
  config.gamma = a.gamma;
  config.optimizer.learning_rate = a.lr;
  config.optimizer.kind =
      a.optimizer == "sgd" ? sungka::OptimizerKind::kSgd : sungka::OptimizerKind::kAdam;
  config.buffer_capacity = a.buffer;
  config.batch_size = a.batch;
  config.sync_period = a.sync;
  config.seat = seat_from_int(a.seat);
  config.opponent = a.opponent;
  config.reward_mode = sungka::parse_reward_mode(a.reward);
  config.mask = a.mask;
  config.done_masking = !a.no_done_masking;
  config.canonical = a.canonical;
  config.seed = a.seed;
  config.layer_dims = {sungka::kNumHouses};
  config.layer_dims.insert(config.layer_dims.end(), a.hidden.begin(), a.hidden.end());
  config.layer_dims.push_back(sungka::kHousesPerSide);
  config.validate();

  std::ofstream metrics;
  if (!a.metrics.empty()) {
    metrics.open(a.metrics, std::ios::trunc);
    if (!metrics) throw std::runtime_error("cannot open " + a.metrics);
    sungka::write_metrics_header(metrics);
  }
  const auto start = std::chrono::steady_clock::now();
  auto on_row = [&](const sungka::MetricsRow& row) {
    if (metrics.is_open()) {
      sungka::write_metrics_row(metrics, row);
      metrics.flush();
    }
    if (!a.quiet) {
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::cerr << std::fixed << std::setprecision(1) << "episode " << row.episode << "  win% rnd "
                << row.vs_random.win_pct << " max " << row.vs_max.win_pct << " exact "
                << row.vs_exact.win_pct << " self " << row.vs_self.win_pct << "  score rnd "
                << row.vs_random.mean_score << "  [" << secs << "s]\n";
    }
  };
  const sungka::TrainResult result = sungka::train(config, {}, on_row);
  sungka::save_model(result.network, a.out);
  std::cout << "trained " << a.episodes << " episodes, " << result.env_steps << " steps, "
            << result.updates << " updates; model written to " << a.out << '\n';
  return 0;
}

struct EvalArgs {
  std::string model;
  std::string model2;
  std::string opponent = "random";
  int episodes = 1000;
  double epsilon = 0.01;
  int seat = 1;
  std::uint64_t seed = 1;
  std::string report;
  bool mask = true;
  bool canonical = false;
  bool suite = false;
  int threads = 1;
};

int run_eval(const EvalArgs& a) {
  auto model = std::make_shared<const sungka::QNetwork>(sungka::load_model(a.model));
  sungka::EvalConfig config;
  config.episodes = a.episodes;
  config.epsilon = a.epsilon;
  config.seat = seat_from_int(a.seat);
  config.seed = a.seed;
  config.mask = a.mask;
  config.canonical = a.canonical;
  config.threads = a.threads;

  std::vector<sungka::EvalReport> reports;
  if (a.suite) {
    if (a.model2.empty()) throw CLI::ValidationError("--suite", "needs --model2");
    auto model2 = std::make_shared<const sungka::QNetwork>(sungka::load_model(a.model2));
    reports = sungka::seat_swap_suite(model, model2, config);
  } else if (!a.model2.empty()) {
    auto model2 = std::make_shared<const sungka::QNetwork>(sungka::load_model(a.model2));
    config.label = "vs model2";
    reports.push_back(sungka::evaluate_vs_model(model, model2, config));
  } else {
    reports.push_back(sungka::evaluate(model, a.opponent, config));
  }

  sungka::write_report_csv(std::cout, reports);
  if (!a.report.empty()) {
    std::ofstream out(a.report, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + a.report);
    sungka::write_report_csv(out, reports);
  }
  return 0;
}

int run_state_space() {
  const sungka::BigInt count = sungka::state_space_size(sungka::kNumSlots, sungka::kTotalStones);
  std::cout << count.str() << '\n'
            << std::fixed << std::setprecision(4) << "log10 " << sungka::log10_big(count) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sungka DQN workbench"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train = app.add_subcommand("train", "Train a DQN agent against a baseline opponent");
  train->add_option("--episodes", train_args.episodes)->check(CLI::NonNegativeNumber);
  train->add_option("--epsilon", train_args.epsilon, "fixed:E or anneal:FROM:TO");
  train->add_option("--gamma", train_args.gamma);
  train->add_option("--lr", train_args.lr);
  train->add_option("--buffer", train_args.buffer)->check(CLI::PositiveNumber);
  train->add_option("--batch", train_args.batch)->check(CLI::PositiveNumber);
  train->add_option("--sync", train_args.sync)->check(CLI::PositiveNumber);
  train->add_option("--seat", train_args.seat)->check(CLI::IsMember({1, 2}));
  train->add_option("--opponent", train_args.opponent)
      ->check(CLI::IsMember({"random", "max", "exact"}));
  train->add_option("--reward", train_args.reward)->check(CLI::IsMember({"eq1", "naive"}));
  train->add_flag("--mask,!--no-mask", train_args.mask, "Mask empty houses in greedy selection");
  train->add_option("--optimizer", train_args.optimizer)->check(CLI::IsMember({"adam", "sgd"}));
  train->add_flag("--no-done-masking", train_args.no_done_masking,
                  "Bootstrap through terminal transitions");
  train->add_flag("--canonical", train_args.canonical, "Rotate observations to the mover's view");
  train->add_option("--seed", train_args.seed);
  train->add_option("--hidden", train_args.hidden, "Hidden layer widths, e.g. 128,128")
      ->delimiter(',')
      ->check(CLI::Range(1, 65536));
  train->add_option("--out", train_args.out);
  train->add_option("--metrics", train_args.metrics, "Probe CSV path");
  train->add_flag("--quiet", train_args.quiet);

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a trained model");
  eval->add_option("--model", eval_args.model)->required()->check(CLI::ExistingFile);
  eval->add_option("--model2", eval_args.model2, "Second model (opponent or suite partner)")
      ->check(CLI::ExistingFile);
  eval->add_option("--opponent", eval_args.opponent, "random|max|exact|self|dqn:<path>");
  eval->add_option("--episodes", eval_args.episodes)->check(CLI::PositiveNumber);
  eval->add_option("--epsilon", eval_args.epsilon)->check(CLI::Range(0.0, 1.0));
  eval->add_option("--seat", eval_args.seat)->check(CLI::IsMember({1, 2}));
  eval->add_option("--seed", eval_args.seed);
  eval->add_option("--report", eval_args.report, "Report CSV path");
  eval->add_flag("--mask,!--no-mask", eval_args.mask);
  eval->add_flag("--canonical", eval_args.canonical);
  eval->add_flag("--suite", eval_args.suite, "Run the full seat-swap table with --model2");
  eval->add_option("--threads", eval_args.threads)->check(CLI::PositiveNumber);

  std::string play_model;
  int human_seat = 1;
  std::uint64_t play_seed = 1;
  auto* play = app.add_subcommand("play", "Play against a model in the terminal");
  play->add_option("--model", play_model)->required()->check(CLI::ExistingFile);
  play->add_option("--human-seat", human_seat)->check(CLI::IsMember({1, 2}));
  play->add_option("--seed", play_seed);

  app.add_subcommand("state-space", "Print the exact board state-space count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse failure is a usage error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*train) return run_train(train_args);
    if (*eval) return run_eval(eval_args);
    if (*play) {
      const sungka::QNetwork model = sungka::load_model(play_model);
      const auto outcome =
          sungka::play_interactive(model, seat_from_int(human_seat), std::cin, std::cout, play_seed);
      return outcome ? 0 : 1;
    }
    return run_state_space();
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
