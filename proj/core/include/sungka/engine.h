#pragma once

// Single-round Sungka rules: board layout, sowing, relay, sunog and the
// end-of-game sweep.
//
// Slot layout (16 slots):
//   0..6   Player One houses, 0 farthest from its head, 6 adjacent
//   7      Player One head
//   8..14  Player Two houses, 8 farthest, 14 adjacent
//   15     Player Two head
//
// Sowing advances through ascending slot indices (wrapping at 16) and skips
// the opponent's head.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sungka {

inline constexpr int kNumSlots = 16;
inline constexpr int kHousesPerSide = 7;
inline constexpr int kNumHouses = 14;
inline constexpr int kStonesPerHouse = 7;
inline constexpr int kTotalStones = kNumHouses * kStonesPerHouse;  // 98
inline constexpr int kHeadOne = 7;
inline constexpr int kHeadTwo = 15;
inline constexpr int kDefaultMaxRelays = 10000;

enum class Player : std::uint8_t { kOne = 0, kTwo = 1 };

constexpr Player other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
constexpr int player_number(Player p) { return p == Player::kOne ? 1 : 2; }
constexpr int head_slot(Player p) {
  return p == Player::kOne ? kHeadOne : kHeadTwo;
}
// Global slot of a seat-local house index (0..6).
constexpr int house_slot(Player p, int local) {
  return p == Player::kOne ? local : local + 8;
}
constexpr bool is_head(int slot) { return slot == kHeadOne || slot == kHeadTwo; }
constexpr bool is_house_of(Player p, int slot) {
  return p == Player::kOne ? (slot >= 0 && slot <= 6) : (slot >= 8 && slot <= 14);
}

std::optional<Player> parse_player(std::string_view s);

class IllegalMove : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RelayLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Board {
  std::array<int, kNumSlots> slots{};

  int& operator[](int i) { return slots[static_cast<std::size_t>(i)]; }
  int operator[](int i) const { return slots[static_cast<std::size_t>(i)]; }
  int head(Player p) const { return (*this)[head_slot(p)]; }
  int house(Player p, int local) const { return (*this)[house_slot(p, local)]; }
  int total() const;
  int side_total(Player p) const;
  // All 14 houses are empty.
  bool houses_empty() const;

  friend bool operator==(const Board&, const Board&) = default;
};

// Comma-separated slot counts, e.g. "7,7,7,7,7,7,7,0,7,7,7,7,7,7,7,0".
std::string to_string(const Board& board);
// Throws std::invalid_argument on anything other than 16 non-negative ints.
Board parse_board(std::string_view text);

// ASCII rendering used by interactive play and trace logs. Player Two's row
// is printed on top, right to left, so both rows read in sowing order.
std::string render(const Board& board);

enum class EventKind : std::uint8_t { kDrop, kRelay, kSunog, kExtraTurn, kSweep };

struct Event {
  EventKind kind = EventKind::kDrop;
  int slot = -1;      // kDrop, kRelay: slot; kSunog: landing (own) house
  int opposite = -1;  // kSunog: captured house
  int stones = 0;     // kSunog: stones moved to head (captured + last); kSweep: stones swept
  Player player = Player::kOne;  // kSweep: receiving player

  friend bool operator==(const Event&, const Event&) = default;
};

std::string to_string(const Event& event);

struct SowResult {
  Board board;
  int stones_to_head = 0;
  Player next_player = Player::kOne;
  bool terminal = false;
  std::vector<Event> events;

  bool extra_turn() const;
  bool sunog() const;
};

struct SowOptions {
  int max_relays = kDefaultMaxRelays;
  // Drop events dominate the event list; bulk simulation can turn them off.
  bool record_drops = true;
};

Board new_board();

// Seat-local indices (ascending) of the player's non-empty houses.
std::vector<int> legal_actions(const Board& board, Player player);
bool has_legal_action(const Board& board, Player player);

// 14 - slot. Throws std::invalid_argument for heads or out-of-range slots.
int opposite(int house_slot);

// Plays one full turn for `player` from seat-local `house`.
SowResult sow(const Board& board, Player player, int house,
              const SowOptions& options = {});

enum class Outcome : std::uint8_t { kPlayerOne, kPlayerTwo, kDraw };

std::string to_string(Outcome outcome);

// Throws std::invalid_argument if the board still has stones in a house.
Outcome winner(const Board& board);

using BigInt = boost::multiprecision::cpp_int;

// Multiset coefficient C(stones + bins - 1, bins - 1): the number of ways to
// place `stones` identical stones into `bins` slots.
BigInt state_space_size(int bins, int stones);
double log10_big(const BigInt& value);

// Swaps the two sides of the board: slot i <-> (i + 8) mod 16.
Board mirror(const Board& board);
int mirror_slot(int slot);
Event mirror(const Event& event);

}  // namespace sungka
