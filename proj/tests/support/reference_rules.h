#pragma once

// Test-only reference implementation of one Sungka turn. It walks an explicit
// 15-slot route table instead of computing successor slots, so it shares no
// code path with the engine.

#include <array>
#include <vector>

#include "sungka/engine.h"

namespace sungka::testing {

struct ReferenceTurn {
  Board board;
  Player next;
  bool terminal = false;
  bool extra_turn = false;
  int sunog_captured = -1;  // stones moved to head by sunog, -1 if none
  int relays = 0;
};

inline std::vector<int> reference_route(Player mover) {
  const int skip = mover == Player::kOne ? 15 : 7;
  std::vector<int> route;
  for (int s = 0; s < 16; ++s)
    if (s != skip) route.push_back(s);
  return route;
}

inline ReferenceTurn reference_turn(Board b, Player mover, int local) {
  const std::vector<int> route = reference_route(mover);
  const int own_head = mover == Player::kOne ? 7 : 15;
  const int start = mover == Player::kOne ? local : local + 8;
  std::size_t at = 0;
  while (route[at] != start) ++at;

  ReferenceTurn out;
  int in_hand = b[start];
  b[start] = 0;
  while (true) {
    for (; in_hand > 0; --in_hand) {
      at = (at + 1) % route.size();
      b[route[at]] += 1;
    }
    const int landed = route[at];
    if (landed == own_head) {
      out.extra_turn = true;
      break;
    }
    if (b[landed] >= 2) {
      ++out.relays;
      in_hand = b[landed];
      b[landed] = 0;
      continue;
    }
    const bool own_side = mover == Player::kOne ? landed < 7 : (landed > 7 && landed < 15);
    if (own_side) {
      const int across = 14 - landed;
      out.sunog_captured = b[across] + 1;
      b[own_head] += b[across] + 1;
      b[across] = 0;
      b[landed] = 0;
    }
    break;
  }

  auto side_sum = [&](Player p) {
    int s = 0;
    for (int i = 0; i < 7; ++i) s += b[p == Player::kOne ? i : i + 8];
    return s;
  };
  Player next = out.extra_turn ? mover : other(mover);
  if (side_sum(Player::kOne) + side_sum(Player::kTwo) == 0) {
    out.terminal = true;
  } else if (side_sum(next) == 0) {
    const Player owner = other(next);
    const int swept = side_sum(owner);
    for (int i = 0; i < 7; ++i) b[owner == Player::kOne ? i : i + 8] = 0;
    b[owner == Player::kOne ? 7 : 15] += swept;
    out.terminal = true;
  }
  if (out.terminal) out.extra_turn = false;
  out.next = out.terminal ? other(mover) : next;
  out.board = b;
  return out;
}

}  // namespace sungka::testing
