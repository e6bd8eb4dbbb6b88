#pragma once

// Evaluation protocol, training probes, CSV emission and terminal play.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sungka/dqn.h"

namespace sungka {

struct EvalReport {
  std::string matchup;
  Player seat = Player::kOne;
  int episodes = 0;
  double mean_final_score = 0.0;  // stones in the agent's head at game end
  double mean_cum_reward = 0.0;   // agent head minus opponent head at game end
  double win_pct = 0.0;
  double loss_pct = 0.0;
  double draw_pct = 0.0;
};

struct EvalConfig {
  int episodes = 1000;
  double epsilon = 0.01;
  Player seat = Player::kOne;
  std::uint64_t seed = 1;
  bool mask = true;
  bool canonical = false;
  // Games are seeded per index and reduced in index order, so the thread
  // count never changes the report.
  int threads = 1;
  std::string label;
};

// Plays `config.episodes` games with `agent` in config.seat.
EvalReport evaluate_policies(const Policy& agent, const Policy& opponent, const EvalConfig& config);

// Builds a named opponent: random | max | exact | self | dqn:<model-path>.
// "self" reuses `model` with the same greedy settings. Throws
// std::invalid_argument for unknown names.
Policy resolve_opponent(const std::string& name, std::shared_ptr<const QNetwork> model,
                        const EvalConfig& config);

EvalReport evaluate(std::shared_ptr<const QNetwork> model, const std::string& opponent,
                    const EvalConfig& config);
// Model against another model in the opposite seat.
EvalReport evaluate_vs_model(std::shared_ptr<const QNetwork> model,
                             std::shared_ptr<const QNetwork> opponent, const EvalConfig& config);

// Every model in every seat against random, max, exact, self and the other
// model. Labels use Player1DQN / Player2DQN for the two models.
std::vector<EvalReport> seat_swap_suite(std::shared_ptr<const QNetwork> model_p1,
                                        std::shared_ptr<const QNetwork> model_p2,
                                        const EvalConfig& base);

struct ProbeConfig {
  int episodes = 100;
  double epsilon = 0.01;
  Player seat = Player::kOne;
  std::uint64_t seed = 1;
  GreedyOptions greedy;
};

// Evaluates a snapshot against random, max, exact and self. Seeds derive from
// (config.seed, episode), so a probe is reproducible on its own.
MetricsRow training_probe(const QNetwork& snapshot, int episode, const ProbeConfig& config);

inline constexpr const char* kMetricsCsvHeader =
    "episode,score_vs_random,win_vs_random,score_vs_max,win_vs_max,score_vs_exact,win_vs_exact,"
    "score_vs_self,win_vs_self";
inline constexpr const char* kReportCsvHeader =
    "matchup,seat,episodes,mean_final_score,mean_cum_reward,win_pct,loss_pct,draw_pct";

void write_metrics_header(std::ostream& os);
void write_metrics_row(std::ostream& os, const MetricsRow& row);
void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> read_metrics_csv(std::istream& is);
void write_report_csv(std::ostream& os, const std::vector<EvalReport>& reports);

// Human against a model on the terminal. Returns nullopt when input ends
// before the game does.
std::optional<Outcome> play_interactive(const QNetwork& model, Player human_seat, std::istream& in,
                                        std::ostream& out, std::uint64_t seed = 1,
                                        double epsilon = 0.0);

}  // namespace sungka
