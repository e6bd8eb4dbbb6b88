#include "sungka/harness.h"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

#include "sungka/model_io.h"

namespace sungka {
namespace {

struct GameOutcome {
  int agent_head = 0;
  int opponent_head = 0;
};

GameOutcome play_game(const Policy& agent, const Policy& opponent, Player seat, Rng rng) {
  EpisodeContext ctx;
  ctx.agent_seat = seat;
  ctx.opponent = &opponent;
  ctx.rng = &rng;
  const EpisodeResult episode = run_episode(agent, ctx);
  return {episode.final_board.head(seat), episode.final_board.head(other(seat))};
}

GreedyOptions greedy_options(const EvalConfig& config) {
  GreedyOptions g;
  g.epsilon = config.epsilon;
  g.mask = config.mask;
  g.canonical = config.canonical;
  return g;
}

std::string seat_name(Player p) { return std::to_string(player_number(p)); }

}  // namespace

EvalReport evaluate_policies(const Policy& agent, const Policy& opponent, const EvalConfig& config) {
  if (config.episodes < 1) throw std::invalid_argument("evaluation needs at least one episode");
  std::vector<GameOutcome> games(static_cast<std::size_t>(config.episodes));
  auto run_range = [&](int worker, int workers) {
    for (int i = worker; i < config.episodes; i += workers)
      games[static_cast<std::size_t>(i)] = play_game(
          agent, opponent, config.seat, make_rng(config.seed, kTagEval, static_cast<std::uint64_t>(i)));
  };
  const int workers = std::max(1, std::min(config.threads, config.episodes));
  if (workers == 1) {
    run_range(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_range, w, workers);
  }

  EvalReport report;
  report.matchup = config.label;
  report.seat = config.seat;
  report.episodes = config.episodes;
  long score = 0, diff = 0, wins = 0, losses = 0, draws = 0;
  for (const GameOutcome& g : games) {
    score += g.agent_head;
    diff += g.agent_head - g.opponent_head;
    if (g.agent_head > g.opponent_head)
      ++wins;
    else if (g.agent_head < g.opponent_head)
      ++losses;
    else
      ++draws;
  }
  const double n = config.episodes;
  report.mean_final_score = static_cast<double>(score) / n;
  report.mean_cum_reward = static_cast<double>(diff) / n;
  report.win_pct = 100.0 * static_cast<double>(wins) / n;
  report.loss_pct = 100.0 * static_cast<double>(losses) / n;
  report.draw_pct = 100.0 * static_cast<double>(draws) / n;
  return report;
}

Policy resolve_opponent(const std::string& name, std::shared_ptr<const QNetwork> model,
                        const EvalConfig& config) {
  if (name == "random") return make_random_policy();
  if (name == "max") return make_max_policy();
  if (name == "exact") return make_exact_policy();
  if (name == "self") {
    if (!model) throw std::invalid_argument("opponent 'self' needs a model");
    return make_greedy_policy(std::move(model), greedy_options(config));
  }
  if (name.rfind("dqn:", 0) == 0) {
    auto other_model = std::make_shared<const QNetwork>(load_model(name.substr(4)));
    return make_greedy_policy(std::move(other_model), greedy_options(config));
  }
  throw std::invalid_argument("unknown opponent '" + name +
                              "' (expected random|max|exact|self|dqn:<path>)");
}

EvalReport evaluate(std::shared_ptr<const QNetwork> model, const std::string& opponent,
                    const EvalConfig& config) {
  if (!model) throw std::invalid_argument("evaluate needs a model");
  const Policy opp = resolve_opponent(opponent, model, config);
  EvalConfig c = config;
  if (c.label.empty()) c.label = "vs " + opponent;
  return evaluate_policies(make_greedy_policy(model, greedy_options(config)), opp, c);
}

EvalReport evaluate_vs_model(std::shared_ptr<const QNetwork> model,
                             std::shared_ptr<const QNetwork> opponent, const EvalConfig& config) {
  if (!model || !opponent) throw std::invalid_argument("evaluate_vs_model needs two models");
  EvalConfig c = config;
  if (c.label.empty()) c.label = "vs model";
  return evaluate_policies(make_greedy_policy(std::move(model), greedy_options(config)),
                           make_greedy_policy(std::move(opponent), greedy_options(config)), c);
}

std::vector<EvalReport> seat_swap_suite(std::shared_ptr<const QNetwork> model_p1,
                                        std::shared_ptr<const QNetwork> model_p2,
                                        const EvalConfig& base) {
  struct Entry {
    std::string name;
    std::shared_ptr<const QNetwork> model;
    std::shared_ptr<const QNetwork> rival;
    std::string rival_name;
  };
  const Entry entries[] = {{"Player1DQN", model_p1, model_p2, "Player2DQN"},
                           {"Player2DQN", model_p2, model_p1, "Player1DQN"}};
  std::vector<EvalReport> reports;
  for (const Entry& e : entries) {
    for (Player seat : {Player::kOne, Player::kTwo}) {
      EvalConfig c = base;
      c.seat = seat;
      for (const char* opp : {"random", "max", "exact", "self"}) {
        c.label = e.name + " vs " + opp;
        reports.push_back(evaluate(e.model, opp, c));
      }
      c.label = e.name + " vs " + e.rival_name;
      reports.push_back(evaluate_vs_model(e.model, e.rival, c));
    }
  }
  return reports;
}

MetricsRow training_probe(const QNetwork& snapshot, int episode, const ProbeConfig& config) {
  auto model = std::make_shared<const QNetwork>(snapshot);
  EvalConfig c;
  c.episodes = config.episodes;
  c.epsilon = config.epsilon;
  c.seat = config.seat;
  c.mask = config.greedy.mask;
  c.canonical = config.greedy.canonical;
  const std::uint64_t base = mix64(config.seed ^ kTagProbe) + static_cast<std::uint64_t>(episode);

  MetricsRow row;
  row.episode = episode;
  ProbeStats* slots[] = {&row.vs_random, &row.vs_max, &row.vs_exact, &row.vs_self};
  const char* names[] = {"random", "max", "exact", "self"};
  for (std::size_t k = 0; k < 4; ++k) {
    c.seed = mix64(base * 4 + k);
    const EvalReport r = evaluate(model, names[k], c);
    *slots[k] = {r.mean_final_score, r.win_pct};
  }
  return row;
}

void write_metrics_header(std::ostream& os) { os << kMetricsCsvHeader << '\n'; }

void write_metrics_row(std::ostream& os, const MetricsRow& row) {
  std::ostringstream line;
  line << std::fixed << std::setprecision(3) << row.episode;
  for (const ProbeStats* s : {&row.vs_random, &row.vs_max, &row.vs_exact, &row.vs_self})
    line << ',' << s->mean_score << ',' << s->win_pct;
  os << line.str() << '\n';
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  write_metrics_header(os);
  for (const MetricsRow& r : rows) write_metrics_row(os, r);
}

std::vector<MetricsRow> read_metrics_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kMetricsCsvHeader)
    throw std::runtime_error("metrics CSV has an unexpected header");
  std::vector<MetricsRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 9) throw std::runtime_error("metrics CSV row needs 9 fields: " + line);
    MetricsRow r;
    r.episode = std::stoi(f[0]);
    ProbeStats* slots[] = {&r.vs_random, &r.vs_max, &r.vs_exact, &r.vs_self};
    for (std::size_t k = 0; k < 4; ++k)
      *slots[k] = {std::stod(f[1 + 2 * k]), std::stod(f[2 + 2 * k])};
    rows.push_back(r);
  }
  return rows;
}

void write_report_csv(std::ostream& os, const std::vector<EvalReport>& reports) {
  os << kReportCsvHeader << '\n';
  std::ostringstream body;
  body << std::fixed << std::setprecision(3);
  for (const EvalReport& r : reports) {
    body << r.matchup << ',' << seat_name(r.seat) << ',' << r.episodes << ',' << r.mean_final_score
         << ',' << r.mean_cum_reward << ',' << r.win_pct << ',' << r.loss_pct << ',' << r.draw_pct
         << '\n';
  }
  os << body.str();
}

std::optional<Outcome> play_interactive(const QNetwork& model, Player human_seat, std::istream& in,
                                        std::ostream& out, std::uint64_t seed, double epsilon) {
  Rng rng = make_rng(seed, kTagPlay);
  GreedyOptions greedy;
  greedy.epsilon = epsilon;
  Board board = new_board();
  Player to_move = Player::kOne;
  out << "You are Player " << player_number(human_seat) << ". Houses are numbered 1-7 from the "
      << "one farthest from your head.\n";

  auto announce = [&](Player mover, const SowResult& r) {
    for (const Event& e : r.events) {
      switch (e.kind) {
        case EventKind::kRelay:
          out << "  relay from slot " << e.slot << '\n';
          break;
        case EventKind::kSunog:
          out << "  sunog! P" << player_number(mover) << " captures " << e.stones
              << " stones from house slot " << e.opposite << '\n';
          break;
        case EventKind::kExtraTurn:
          out << "  extra turn for P" << player_number(mover) << '\n';
          break;
        case EventKind::kSweep:
          out << "  P" << player_number(e.player) << " sweeps " << e.stones
              << " remaining stones into its head\n";
          break;
        case EventKind::kDrop:
          break;
      }
    }
  };

  while (true) {
    out << '\n' << render(board);
    SowResult result;
    if (to_move == human_seat) {
      int house = -1;
      while (true) {
        out << "Your move (1-7): " << std::flush;
        std::string line;
        if (!std::getline(in, line)) {
          out << "\nInput ended; game aborted.\n";
          return std::nullopt;
        }
        int choice = 0;
        std::istringstream parse(line);
        if (!(parse >> choice) || choice < 1 || choice > kHousesPerSide) {
          out << "Please enter a house number between 1 and 7.\n";
          continue;
        }
        if (board.house(human_seat, choice - 1) == 0) {
          out << "House " << choice << " is empty; choose a house with stones.\n";
          continue;
        }
        house = choice - 1;
        break;
      }
      result = sow(board, human_seat, house);
      out << "You play house " << house + 1 << '\n';
    } else {
      const int house = greedy_q_policy(model, board, to_move, rng, greedy);
      result = sow(board, to_move, house);
      out << "Agent plays house " << house + 1 << '\n';
    }
    announce(to_move, result);
    board = result.board;
    to_move = result.next_player;
    if (result.terminal) break;
  }
  out << '\n' << render(board);
  const Outcome outcome = winner(board);
  out << "Final: P1 " << board.head(Player::kOne) << " - P2 " << board.head(Player::kTwo)
      << ". Result: " << to_string(outcome) << '\n';
  return outcome;
}

}  // namespace sungka
