#include "sungka/engine.h"

#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace sungka {
namespace {

int next_slot(Player mover, int slot) {
  int next = (slot + 1) % kNumSlots;
  if (next == head_slot(other(mover))) next = (next + 1) % kNumSlots;
  return next;
}

}  // namespace

std::optional<Player> parse_player(std::string_view s) {
  if (s == "1" || s == "one" || s == "One") return Player::kOne;
  if (s == "2" || s == "two" || s == "Two") return Player::kTwo;
  return std::nullopt;
}

int Board::total() const { return std::accumulate(slots.begin(), slots.end(), 0); }

int Board::side_total(Player p) const {
  int sum = 0;
  for (int i = 0; i < kHousesPerSide; ++i) sum += house(p, i);
  return sum;
}

bool Board::houses_empty() const {
  return side_total(Player::kOne) == 0 && side_total(Player::kTwo) == 0;
}

std::string to_string(const Board& board) {
  std::string out;
  for (int i = 0; i < kNumSlots; ++i) {
    if (i > 0) out += ',';
    out += std::to_string(board[i]);
  }
  return out;
}

Board parse_board(std::string_view text) {
  Board board;
  int index = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = text.find(',', pos);
    std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\n' || field.back() == '\r'))
      field.remove_suffix(1);
    if (index >= kNumSlots) throw std::invalid_argument("board has more than 16 slots");
    int value = 0;
    auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size() || field.empty())
      throw std::invalid_argument("bad slot value '" + std::string(field) + "'");
    if (value < 0) throw std::invalid_argument("negative slot value");
    board[index++] = value;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (index != kNumSlots)
    throw std::invalid_argument("board needs 16 slots, got " + std::to_string(index));
  return board;
}

std::string render(const Board& board) {
  std::ostringstream os;
  auto cell = [&](int v) {
    std::string s = std::to_string(v);
    while (s.size() < 3) s.insert(s.begin(), ' ');
    os << s;
  };
  os << "        ";
  for (int local = kHousesPerSide - 1; local >= 0; --local) cell(local + 1);
  os << "   (P2 house #)\n";
  os << "   P2  ";
  os << ' ';
  for (int local = kHousesPerSide - 1; local >= 0; --local) cell(board.house(Player::kTwo, local));
  os << '\n';
  os << "  ";
  cell(board.head(Player::kTwo));
  os << std::string(3 * kHousesPerSide + 4, ' ');
  cell(board.head(Player::kOne));
  os << '\n';
  os << "   P1   ";
  for (int local = 0; local < kHousesPerSide; ++local) cell(board.house(Player::kOne, local));
  os << '\n';
  os << "        ";
  for (int local = 0; local < kHousesPerSide; ++local) cell(local + 1);
  os << "   (P1 house #)\n";
  return os.str();
}

std::string to_string(const Event& event) {
  switch (event.kind) {
    case EventKind::kDrop:
      return "drop(" + std::to_string(event.slot) + ")";
    case EventKind::kRelay:
      return "relay(" + std::to_string(event.slot) + ")";
    case EventKind::kSunog:
      return "sunog(" + std::to_string(event.slot) + "," + std::to_string(event.opposite) +
             "," + std::to_string(event.stones) + ")";
    case EventKind::kExtraTurn:
      return "extra_turn";
    case EventKind::kSweep:
      return "sweep(P" + std::to_string(player_number(event.player)) + "," +
             std::to_string(event.stones) + ")";
  }
  return "?";
}

bool SowResult::extra_turn() const {
  for (const Event& e : events)
    if (e.kind == EventKind::kExtraTurn) return true;
  return false;
}

bool SowResult::sunog() const {
  for (const Event& e : events)
    if (e.kind == EventKind::kSunog) return true;
  return false;
}

Board new_board() {
  Board board;
  for (int i = 0; i < kHousesPerSide; ++i) {
    board[house_slot(Player::kOne, i)] = kStonesPerHouse;
    board[house_slot(Player::kTwo, i)] = kStonesPerHouse;
  }
  return board;
}

std::vector<int> legal_actions(const Board& board, Player player) {
  std::vector<int> actions;
  actions.reserve(kHousesPerSide);
  for (int i = 0; i < kHousesPerSide; ++i)
    if (board.house(player, i) > 0) actions.push_back(i);
  return actions;
}

bool has_legal_action(const Board& board, Player player) {
  return board.side_total(player) > 0;
}

int opposite(int slot) {
  if (slot < 0 || slot >= kNumSlots || is_head(slot))
    throw std::invalid_argument("opposite() needs a house slot, got " + std::to_string(slot));
  return 14 - slot;
}

SowResult sow(const Board& board, Player player, int house, const SowOptions& options) {
  if (house < 0 || house >= kHousesPerSide)
    throw IllegalMove("house index out of range: " + std::to_string(house));
  const int start = house_slot(player, house);
  if (board[start] == 0)
    throw IllegalMove("house " + std::to_string(house) + " of player " +
                      std::to_string(player_number(player)) + " is empty");

  SowResult result;
  result.board = board;
  Board& b = result.board;
  const int own_head = head_slot(player);
  if (options.record_drops) result.events.reserve(static_cast<std::size_t>(board[start]) + 4);

  int hand = b[start];
  b[start] = 0;
  int pos = start;
  int relays = 0;
  bool landed_in_head = false;
  while (true) {
    while (hand > 0) {
      pos = next_slot(player, pos);
      ++b[pos];
      --hand;
      if (options.record_drops) result.events.push_back({EventKind::kDrop, pos});
    }
    if (pos == own_head) {
      landed_in_head = true;
      break;
    }
    if (b[pos] > 1) {
      if (++relays > options.max_relays)
        throw RelayLimitExceeded("relay chain exceeded " + std::to_string(options.max_relays));
      result.events.push_back({EventKind::kRelay, pos});
      hand = b[pos];
      b[pos] = 0;
      continue;
    }
    // Last stone landed in a previously empty house.
    if (is_house_of(player, pos)) {
      const int opp = opposite(pos);
      const int moved = b[opp] + b[pos];
      b[own_head] += moved;
      b[opp] = 0;
      b[pos] = 0;
      result.events.push_back({EventKind::kSunog, pos, opp, moved});
    }
    break;
  }

  Player next = landed_in_head ? player : other(player);
  if (b.houses_empty()) {
    result.terminal = true;
  } else if (!has_legal_action(b, next)) {
    // The blocked player's opponent banks whatever is left on its side.
    const Player owner = other(next);
    const int swept = b.side_total(owner);
    for (int i = 0; i < kHousesPerSide; ++i) b[house_slot(owner, i)] = 0;
    b[head_slot(owner)] += swept;
    result.events.push_back({EventKind::kSweep, -1, -1, swept, owner});
    result.terminal = true;
  } else if (landed_in_head) {
    result.events.push_back({EventKind::kExtraTurn});
  }
  result.next_player = result.terminal ? other(player) : next;
  result.stones_to_head = b[own_head] - board[own_head];
  return result;
}

std::string to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kPlayerOne:
      return "PlayerOne";
    case Outcome::kPlayerTwo:
      return "PlayerTwo";
    case Outcome::kDraw:
      return "Draw";
  }
  return "?";
}

Outcome winner(const Board& board) {
  if (!board.houses_empty()) throw std::invalid_argument("winner() on a non-terminal board");
  const int one = board.head(Player::kOne);
  const int two = board.head(Player::kTwo);
  if (one > two) return Outcome::kPlayerOne;
  if (two > one) return Outcome::kPlayerTwo;
  return Outcome::kDraw;
}

BigInt state_space_size(int bins, int stones) {
  if (bins < 0 || stones < 0) throw std::invalid_argument("bins and stones must be non-negative");
  if (bins == 0) {
    if (stones > 0) throw std::invalid_argument("cannot place stones into zero bins");
    return 1;
  }
  // C(n, k) with n = stones + bins - 1, k = bins - 1; each partial product is
  // itself a binomial coefficient so the division is exact.
  const int n = stones + bins - 1;
  const int k = bins - 1;
  BigInt value = 1;
  for (int i = 1; i <= k; ++i) {
    value *= n - k + i;
    value /= i;
  }
  return value;
}

double log10_big(const BigInt& value) {
  if (value <= 0) throw std::invalid_argument("log10 of non-positive value");
  std::string digits = value.str();
  const std::size_t lead = std::min<std::size_t>(digits.size(), 17);
  const double mantissa = std::stod(digits.substr(0, lead));
  return std::log10(mantissa) + static_cast<double>(digits.size() - lead);
}

int mirror_slot(int slot) { return (slot + 8) % kNumSlots; }

Board mirror(const Board& board) {
  Board out;
  for (int i = 0; i < kNumSlots; ++i) out[mirror_slot(i)] = board[i];
  return out;
}

Event mirror(const Event& event) {
  Event out = event;
  if (event.slot >= 0) out.slot = mirror_slot(event.slot);
  if (event.opposite >= 0) out.opposite = mirror_slot(event.opposite);
  if (event.kind == EventKind::kSweep) out.player = other(event.player);
  return out;
}

}  // namespace sungka
