#include "sungka/env.h"

#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace sungka {
namespace {

SowResult apply(const Board& board, Player mover, int local, EpisodeContext& ctx) {
  SowOptions options;
  options.record_drops = ctx.trace != nullptr;
  SowResult result = sow(board, mover, local, options);
  if (ctx.trace) {
    ctx.trace->push_back(
        {ctx.turn, mover, raw_action(mover, local), result.events, result.stones_to_head});
  }
  ++ctx.turn;
  return result;
}

int opponent_move(const Board& board, Player seat, EpisodeContext& ctx) {
  if (!ctx.opponent || !*ctx.opponent) throw std::logic_error("episode has no opponent policy");
  return (*ctx.opponent)(board, seat, *ctx.rng);
}

}  // namespace

std::string to_string(RewardMode mode) { return mode == RewardMode::kEq1 ? "eq1" : "naive"; }

RewardMode parse_reward_mode(const std::string& text) {
  if (text == "eq1") return RewardMode::kEq1;
  if (text == "naive") return RewardMode::kNaive;
  throw std::invalid_argument("unknown reward mode '" + text + "' (expected eq1|naive)");
}

Observation observe(const Board& board) {
  Observation obs{};
  for (int i = 0; i < kHousesPerSide; ++i) {
    obs[static_cast<std::size_t>(i)] = board.house(Player::kOne, i);
    obs[static_cast<std::size_t>(i + kHousesPerSide)] = board.house(Player::kTwo, i);
  }
  return obs;
}

int raw_action(Player player, int local) {
  if (local < 0 || local >= kHousesPerSide)
    throw std::out_of_range("seat-local action out of range: " + std::to_string(local));
  return player == Player::kOne ? local : local + kHousesPerSide;
}

std::pair<Player, int> local_action(int raw) {
  if (raw < 0 || raw >= kNumHouses)
    throw std::out_of_range("raw action out of range: " + std::to_string(raw));
  if (raw < kHousesPerSide) return {Player::kOne, raw};
  return {Player::kTwo, raw - kHousesPerSide};
}

void write_trace(std::ostream& os, const std::vector<MoveRecord>& records) {
  for (const MoveRecord& r : records) {
    nlohmann::json events = nlohmann::json::array();
    for (const Event& e : r.events) events.push_back(to_string(e));
    nlohmann::json line = {{"turn", r.turn},
                           {"seat", player_number(r.seat)},
                           {"raw_action", r.raw_action},
                           {"events", events},
                           {"reward", r.reward}};
    os << line.dump() << '\n';
  }
}

TimestepResult agent_timestep(const Board& board, int agent_action, EpisodeContext& ctx) {
  const Player agent = ctx.agent_seat;
  const Player opp = other(agent);

  TimestepResult out;
  out.transition.state = observe(board);
  out.transition.action = agent_action;

  SowResult step = apply(board, agent, agent_action, ctx);
  Board current = step.board;
  bool terminal = step.terminal;
  Player to_move = step.next_player;
  while (!terminal && to_move == opp) {
    const int move = opponent_move(current, opp, ctx);
    SowResult reply = apply(current, opp, move, ctx);
    current = reply.board;
    terminal = reply.terminal;
    to_move = reply.next_player;
  }

  // Head deltas rather than summed stones_to_head so that stones swept into
  // a head at game end are credited to the player who received them.
  const int agent_gain = current.head(agent) - board.head(agent);
  const int opp_gain = current.head(opp) - board.head(opp);
  out.transition.reward =
      ctx.reward_mode == RewardMode::kEq1 ? agent_gain - opp_gain : agent_gain;
  out.transition.next_state = observe(current);
  out.transition.done = terminal;
  out.board = current;
  out.terminal = terminal;
  return out;
}

OpeningResult play_opening(const Board& board, EpisodeContext& ctx) {
  const Player opp = other(ctx.agent_seat);
  OpeningResult out{board, 0, board.houses_empty()};
  // Player One always moves first on a fresh board.
  Player to_move = Player::kOne;
  while (!out.terminal && to_move == opp) {
    const int move = opponent_move(out.board, opp, ctx);
    SowResult reply = apply(out.board, opp, move, ctx);
    out.board = reply.board;
    out.terminal = reply.terminal;
    to_move = reply.next_player;
  }
  out.opponent_gain = out.board.head(opp) - board.head(opp);
  return out;
}

int EpisodeResult::total_reward() const {
  int sum = -opening_penalty;
  for (const Transition& t : transitions) sum += t.reward;
  return sum;
}

EpisodeResult run_episode(const Policy& agent, EpisodeContext& ctx) {
  EpisodeResult result;
  OpeningResult opening = play_opening(new_board(), ctx);
  result.opening_penalty = opening.opponent_gain;
  Board board = opening.board;
  bool terminal = opening.terminal;
  while (!terminal) {
    const int action = agent(board, ctx.agent_seat, *ctx.rng);
    TimestepResult step = agent_timestep(board, action, ctx);
    result.transitions.push_back(step.transition);
    board = step.board;
    terminal = step.terminal;
  }
  result.final_board = board;
  return result;
}

}  // namespace sungka
