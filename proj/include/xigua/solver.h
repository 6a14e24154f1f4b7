#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "xigua/rules.h"

namespace xigua {

enum class Policy { random, greedy, minmax };

std::string_view policy_name(Policy p);
Policy policy_from_name(std::string_view name);

struct SearchConfig {
  Policy policy = Policy::minmax;
  int depth = 2;
  std::uint64_t seed = 0;
  bool use_alpha_beta = true;
  bool use_transposition = true;
  // Pick uniformly among equally scored root moves instead of the lowest
  // (from, to).
  bool random_tiebreak = false;
  double dof_weight_own = 1.0;
  double dof_weight_opp = -1.0;

  // Short label stored in game records, e.g. "minmax(depth=3)".
  std::string label() const;
};

// Terminal scores are +-kWinScore * (depth_remaining + 1).
inline constexpr double kWinScore = 1e6;

// Weighted DoF difference from `perspective`; terminal positions (no pieces or
// no moves for a side, or the ply cap) get sentinel scores.
double evaluate(const GameState& state, int perspective, const SearchConfig& config,
                const RuleConfig& rules = {}, int depth_remaining = 0);

struct SearchResult {
  Move best_move;
  double score = 0;
  std::size_t nodes_visited = 0;
  int depth_reached = 0;
};

// Depth-limited minimax from the side to move. Repetition is not scored
// inside the tree. Throws RuleViolation on a terminal root.
SearchResult minmax_search(const GameState& state, const SearchConfig& config,
                           const RuleConfig& rules = {});

// Move choice for any policy. Random decisions draw from a generator seeded by
// (config.seed, position hash, ply), so the choice is a pure function.
Move choose_move(const GameState& state, const SearchConfig& config,
                 const RuleConfig& rules = {});

// Plays until terminal_status reports an outcome. config_a plays side 1; each
// side's seed is mixed with the game seed.
GameRecord play_game(const GameState& start, const SearchConfig& config_a,
                     const SearchConfig& config_b, const RuleConfig& rules, std::uint64_t seed);
GameRecord play_game(const BoardGraph& board, const SearchConfig& config_a,
                     const SearchConfig& config_b, const RuleConfig& rules, std::uint64_t seed);

// Game i is played with seed `seed + i`; `jobs` > 1 plays games on worker
// threads. Output is ordered by game index.
std::vector<GameRecord> self_play(const GameState& start, const SearchConfig& config_a,
                                  const SearchConfig& config_b, const RuleConfig& rules,
                                  std::size_t games, std::uint64_t seed, unsigned jobs = 1);

}  // namespace xigua
