#include "sungka/harness.h"

#include <gtest/gtest.h>

#include <regex>
#include <sstream>

#include "sungka/model_io.h"

namespace sungka {
namespace {

std::shared_ptr<const QNetwork> untrained(std::uint64_t seed = 1) {
  return std::make_shared<const QNetwork>(init_network(seed));
}

void expect_report_invariants(const EvalReport& r) {
  EXPECT_NEAR(r.win_pct + r.loss_pct + r.draw_pct, 100.0, 0.1);
  EXPECT_GE(r.mean_final_score, 0.0);
  EXPECT_LE(r.mean_final_score, 98.0);
}

TEST(HarnessTest, UntrainedSelfPlayBookkeeping) {
  EvalConfig c;
  c.episodes = 200;
  for (Player seat : {Player::kOne, Player::kTwo}) {
    c.seat = seat;
    const EvalReport r = evaluate(untrained(), "self", c);
    expect_report_invariants(r);
    EXPECT_EQ(r.episodes, 200);
    EXPECT_EQ(r.seat, seat);
  }
}

TEST(HarnessTest, SelfPlayOrderingsAreTransposes) {
  EvalConfig c;
  c.episodes = 300;
  c.seed = 9;
  c.seat = Player::kOne;
  const EvalReport first = evaluate(untrained(), "self", c);
  c.seat = Player::kTwo;
  const EvalReport second = evaluate(untrained(), "self", c);
  EXPECT_DOUBLE_EQ(first.win_pct, second.loss_pct);
  EXPECT_DOUBLE_EQ(first.loss_pct, second.win_pct);
  EXPECT_DOUBLE_EQ(first.draw_pct, second.draw_pct);
  EXPECT_NEAR(first.mean_cum_reward, -second.mean_cum_reward, 1e-9);
}

TEST(HarnessTest, FinalScoreAboveHalfMeansWin) {
  EvalConfig c;
  c.episodes = 1;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    c.seed = seed;
    const EvalReport r = evaluate(untrained(), "random", c);
    if (r.mean_final_score > 49) EXPECT_DOUBLE_EQ(r.win_pct, 100.0);
    if (r.mean_final_score < 49) EXPECT_DOUBLE_EQ(r.loss_pct, 100.0);
    if (r.mean_final_score == 49) EXPECT_DOUBLE_EQ(r.draw_pct, 100.0);
    EXPECT_DOUBLE_EQ(r.mean_cum_reward, 2 * r.mean_final_score - 98);
  }
}

TEST(HarnessTest, DeterministicAcrossThreadCounts) {
  EvalConfig c;
  c.episodes = 120;
  c.seed = 4;
  const EvalReport serial = evaluate(untrained(), "random", c);
  c.threads = 3;
  const EvalReport parallel = evaluate(untrained(), "random", c);
  std::ostringstream a, b;
  write_report_csv(a, {serial});
  write_report_csv(b, {parallel});
  EXPECT_EQ(a.str(), b.str());
}

TEST(HarnessTest, OpponentResolution) {
  EvalConfig c;
  c.episodes = 5;
  EXPECT_THROW(evaluate(untrained(), "minimax", c), std::invalid_argument);
  EXPECT_THROW(resolve_opponent("self", nullptr, c), std::invalid_argument);

  const auto path = std::filesystem::temp_directory_path() / "sungka_harness_opponent.bin";
  save_model(init_network(2), path);
  const EvalReport r = evaluate(untrained(), "dqn:" + path.string(), c);
  expect_report_invariants(r);
  EXPECT_THROW(evaluate(untrained(), "dqn:/nonexistent/model.bin", c), LoadError);
  std::filesystem::remove(path);
}

TEST(HarnessTest, BaselinesAgainstEachOther) {
  // Random vs random from seat One: both outcomes occur.
  EvalConfig c;
  c.episodes = 400;
  const EvalReport r = evaluate_policies(make_random_policy(), make_random_policy(), c);
  expect_report_invariants(r);
  EXPECT_GT(r.win_pct, 10.0);
  EXPECT_GT(r.loss_pct, 10.0);
}

TEST(HarnessTest, SeatSwapSuiteShape) {
  EvalConfig c;
  c.episodes = 10;
  const std::vector<EvalReport> reports = seat_swap_suite(untrained(1), untrained(2), c);
  ASSERT_EQ(reports.size(), 20u);
  EXPECT_EQ(reports[0].matchup, "Player1DQN vs random");
  EXPECT_EQ(reports[4].matchup, "Player1DQN vs Player2DQN");
  EXPECT_EQ(reports[5].seat, Player::kTwo);
  EXPECT_EQ(reports[19].matchup, "Player2DQN vs Player1DQN");
  for (const EvalReport& r : reports) expect_report_invariants(r);
}

TEST(HarnessTest, TrainingProbeIsReproducible) {
  ProbeConfig pc;
  pc.episodes = 20;
  const MetricsRow a = training_probe(*untrained(), 300, pc);
  const MetricsRow b = training_probe(*untrained(), 300, pc);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.episode, 300);
  for (const ProbeStats* s : {&a.vs_random, &a.vs_max, &a.vs_exact, &a.vs_self}) {
    EXPECT_GE(s->win_pct, 0.0);
    EXPECT_LE(s->win_pct, 100.0);
  }
}

TEST(HarnessTest, MetricsCsvRoundTrip) {
  std::vector<MetricsRow> rows(2);
  rows[0].episode = 0;
  rows[0].vs_random = {50.25, 61.0};
  rows[1].episode = 100;
  rows[1].vs_self = {70.5, 99.0};
  std::ostringstream os;
  write_metrics_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), kMetricsCsvHeader);
  std::istringstream is(os.str());
  EXPECT_EQ(read_metrics_csv(is), rows);
}

TEST(HarnessTest, ReportCsvFormat) {
  EvalReport r;
  r.matchup = "vs random";
  r.seat = Player::kTwo;
  r.episodes = 1000;
  r.mean_final_score = 65.271;
  r.mean_cum_reward = 32.542;
  r.win_pct = 94.5;
  r.loss_pct = 5.0;
  r.draw_pct = 0.5;
  std::ostringstream os;
  write_report_csv(os, {r});
  EXPECT_EQ(os.str(),
            "matchup,seat,episodes,mean_final_score,mean_cum_reward,win_pct,loss_pct,draw_pct\n"
            "vs random,2,1000,65.271,32.542,94.500,5.000,0.500\n");
}

std::string cycling_input(int lines) {
  std::string s;
  for (int i = 0; i < lines; ++i) s += std::to_string(i % 7 + 1) + "\n";
  return s;
}

TEST(HarnessTest, InteractiveRejectsOutOfRange) {
  std::istringstream in("8\n");
  std::ostringstream out;
  EXPECT_FALSE(play_interactive(init_network(1), Player::kOne, in, out).has_value());
  EXPECT_NE(out.str().find("between 1 and 7"), std::string::npos);
  EXPECT_NE(out.str().find("Input ended"), std::string::npos);
}

TEST(HarnessTest, InteractiveRejectsEmptyHouse) {
  // House 1 gives an extra turn and is then empty.
  std::istringstream in("1\n1\n");
  std::ostringstream out;
  EXPECT_FALSE(play_interactive(init_network(1), Player::kOne, in, out).has_value());
  EXPECT_NE(out.str().find("House 1 is empty"), std::string::npos);
  EXPECT_NE(out.str().find("extra turn"), std::string::npos);
}

TEST(HarnessTest, InteractiveGameReachesResult) {
  for (Player seat : {Player::kOne, Player::kTwo}) {
    std::istringstream in(cycling_input(5000));
    std::ostringstream out;
    const auto outcome = play_interactive(init_network(1), seat, in, out);
    ASSERT_TRUE(outcome.has_value());
    std::smatch m;
    const std::string text = out.str();
    ASSERT_TRUE(std::regex_search(text, m, std::regex(R"(Final: P1 (\d+) - P2 (\d+)\. Result: (\w+))")));
    Board final_board{};
    final_board[kHeadOne] = std::stoi(m[1]);
    final_board[kHeadTwo] = std::stoi(m[2]);
    EXPECT_EQ(final_board.head(Player::kOne) + final_board.head(Player::kTwo), 98);
    EXPECT_EQ(m[3].str(), to_string(winner(final_board)));
    EXPECT_EQ(*outcome, winner(final_board));
  }
}

}  // namespace
}  // namespace sungka
