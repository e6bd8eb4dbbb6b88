#pragma once

// Turn-based environment over the engine. A timestep is one agent move plus
// every opponent move that follows before control returns to the agent (or
// the game ends); its reward is the agent's head gain minus the opponent's.

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "sungka/engine.h"
#include "sungka/rng.h"

namespace sungka {

// Houses 0..6 then 8..14; heads are not part of the observation.
using Observation = std::array<int, kNumHouses>;

// Chooses a seat-local house (0..6) for `player` on `board`.
using Policy = std::function<int(const Board& board, Player player, Rng& rng)>;

struct Transition {
  Observation state{};
  int action = 0;  // seat-local
  int reward = 0;
  Observation next_state{};
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

enum class RewardMode { kEq1, kNaive };

std::string to_string(RewardMode mode);
RewardMode parse_reward_mode(const std::string& text);

Observation observe(const Board& board);

// Player One: 0..6, Player Two: 7..13.
int raw_action(Player player, int local);
std::pair<Player, int> local_action(int raw);

// One line of the optional episode trace.
struct MoveRecord {
  int turn = 0;
  Player seat = Player::kOne;
  int raw_action = 0;
  std::vector<Event> events;
  int reward = 0;  // head gain of the mover on this move
};

// Newline-delimited JSON, one object per record.
void write_trace(std::ostream& os, const std::vector<MoveRecord>& records);

struct TimestepResult {
  Transition transition;
  Board board;
  bool terminal = false;
};

// Context shared by the moves of one episode.
struct EpisodeContext {
  Player agent_seat = Player::kOne;
  const Policy* opponent = nullptr;
  Rng* rng = nullptr;
  RewardMode reward_mode = RewardMode::kEq1;
  std::vector<MoveRecord>* trace = nullptr;  // optional
  int turn = 0;                              // running move counter for the trace
};

// Applies the agent's move, then lets the opponent play until it is the
// agent's turn again or the game ends. Throws IllegalMove for an illegal
// agent action.
TimestepResult agent_timestep(const Board& board, int agent_action, EpisodeContext& ctx);

struct OpeningResult {
  Board board;
  int opponent_gain = 0;
  bool terminal = false;
};

// Lets the opponent move until the agent is to play. Used when the agent sits
// in seat Two; a no-op for seat One on a fresh board.
OpeningResult play_opening(const Board& board, EpisodeContext& ctx);

struct EpisodeResult {
  std::vector<Transition> transitions;
  Board final_board;
  int opening_penalty = 0;  // opponent head gain before the agent's first move
  int total_reward() const;
};

// Plays a full game from new_board() with `agent` in ctx.agent_seat.
EpisodeResult run_episode(const Policy& agent, EpisodeContext& ctx);

}  // namespace sungka
