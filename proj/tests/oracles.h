#pragma once

// Independent reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "xigua/rules.h"
#include "xigua/solver.h"

namespace oracle {

// Blocked groups by union-find over same-owner edges and explicit liberty
// counting. Each group is a sorted list of cells; groups sorted by first cell.
inline std::vector<std::vector<int>> flood_fill_blocked(const xigua::BoardGraph& board,
                                                        std::span<const int> cells, int player) {
  const auto& alphabet = board.alphabet();
  const int n = board.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  auto mine = [&](int i) { return alphabet.owner(cells[static_cast<std::size_t>(i)]) == player; };
  for (auto [a, b] : board.edges()) {
    if (mine(a) && mine(b)) parent[static_cast<std::size_t>(root(a))] = root(b);
  }
  std::map<int, std::vector<int>> members;
  std::map<int, std::set<int>> liberties;
  for (int i = 0; i < n; ++i) {
    if (!mine(i)) continue;
    const int r = root(i);
    members[r].push_back(i);
    liberties[r];
    for (int nb : board.neighbors(i)) {
      if (alphabet.is_empty(cells[static_cast<std::size_t>(nb)])) liberties[r].insert(nb);
    }
  }
  std::vector<std::vector<int>> out;
  for (auto& [r, group] : members) {
    if (liberties[r].empty()) out.push_back(group);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<int>> as_groups(const std::vector<xigua::CaptureSet>& sets) {
  std::vector<std::vector<int>> out;
  for (const auto& s : sets) out.push_back(s.indices);
  std::sort(out.begin(), out.end());
  return out;
}

inline constexpr double kSentinel = 1e6;

// Plain recursive minimax with its own leaf scoring: own pieces minus the
// opponent's from `root`, terminal positions at +-1e6 * (depth_left + 1).
inline double minimax_value(const xigua::GameState& s, int depth, int root,
                            const xigua::RuleConfig& rules) {
  const int side = s.to_move();
  const auto moves = xigua::legal_moves(s, rules);
  int loser = 0;
  if (s.count(side) < rules.min_pieces) {
    loser = side;
  } else if (s.count(xigua::opponent_of(side)) < rules.min_pieces) {
    loser = xigua::opponent_of(side);
  } else if (moves.empty()) {
    loser = side;
  }
  if (loser != 0) return (loser == root ? -1.0 : 1.0) * kSentinel * (depth + 1);
  if (s.ply() >= rules.ply_cap) return 0.0;
  if (depth == 0) return s.count(root) - s.count(xigua::opponent_of(root));
  double best = side == root ? -std::numeric_limits<double>::infinity()
                             : std::numeric_limits<double>::infinity();
  for (const auto& m : moves) {
    const double v = minimax_value(xigua::apply_move(s, m, rules).state, depth - 1, root, rules);
    best = side == root ? std::max(best, v) : std::min(best, v);
  }
  return best;
}

struct RootChoice {
  xigua::Move move;
  double score;
};

// Exhaustive root scan keeping the first (lowest from, to) best move.
inline RootChoice minimax_root(const xigua::GameState& s, int depth, const xigua::RuleConfig& rules) {
  RootChoice best{{}, -std::numeric_limits<double>::infinity()};
  for (const auto& m : xigua::legal_moves(s, rules)) {
    const double v = minimax_value(xigua::apply_move(s, m, rules).state, depth - 1, s.to_move(), rules);
    if (v > best.score) best = {m, v};
  }
  return best;
}

// P(score+ > score-) + 0.5 P(tie) over all positive/negative pairs.
inline double pairwise_auc(std::span<const int> labels, std::span<const double> scores) {
  double wins = 0;
  double pairs = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1;
      if (scores[i] > scores[j]) {
        wins += 1;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / pairs;
}

// Uniform random occupancy over the board's alphabet.
inline std::vector<int> random_cells(const xigua::BoardGraph& board, std::mt19937_64& rng) {
  std::vector<int> cells(static_cast<std::size_t>(board.size()));
  const auto top = static_cast<std::uint64_t>(board.alphabet().empty_value());
  for (auto& c : cells) c = static_cast<int>(rng() % top) + 1;
  return cells;
}

// Reachable position after `plies` random moves from `start` (stops early at a
// terminal position).
inline xigua::GameState random_walk(const xigua::GameState& start, int plies, std::mt19937_64& rng,
                                    const xigua::RuleConfig& rules = {}) {
  xigua::GameState s = start;
  for (int i = 0; i < plies; ++i) {
    const auto moves = xigua::legal_moves(s, rules);
    if (moves.empty() || s.count(1) == 0 || s.count(2) == 0) break;
    s = xigua::apply_move(s, moves[rng() % moves.size()], rules).state;
  }
  return s;
}

}  // namespace oracle
