#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "xigua/board.h"

namespace xigua {

using BoardPtr = std::shared_ptr<const BoardGraph>;

// Shared handle to the built-in Xi Gua Qi board.
BoardPtr xigua_board_ptr();

inline int opponent_of(int player) { return player == 1 ? 2 : 1; }

struct RuleConfig {
  bool allow_suicide = false;
  int repetition_limit = 3;
  int ply_cap = 200;
  // A side with fewer pieces than this has lost.
  int min_pieces = 1;

  bool operator==(const RuleConfig&) const = default;
};

struct Move {
  int from = 0;
  int to = 0;

  auto operator<=>(const Move&) const = default;
};

// Pieces removed by one move. `indices` are opponent cells (sorted) and
// `values` the piece values they held. Own pieces removed by a permitted
// suicide are kept apart in `self_indices` / `self_values`.
struct CaptureSet {
  std::vector<int> indices;
  std::vector<int> values;
  std::vector<int> self_indices;
  std::vector<int> self_values;

  bool empty() const { return indices.empty() && self_indices.empty(); }
  bool operator==(const CaptureSet&) const = default;
};

// Occupancy vector plus side to move. Value type; every transition returns a
// new state.
class GameState {
 public:
  GameState(BoardPtr board, std::vector<int> cells, int to_move, int ply = 0);

  const BoardGraph& board() const { return *board_; }
  const BoardPtr& board_ptr() const { return board_; }
  std::span<const int> cells() const { return cells_; }
  int cell(int i) const { return cells_.at(static_cast<std::size_t>(i)); }
  int to_move() const { return to_move_; }
  int ply() const { return ply_; }
  // Zobrist digest of (cells, to_move); ply is not part of it.
  std::uint64_t hash() const { return hash_; }

  int count(int player) const;
  bool owned_by(int cell, int player) const {
    return board_->alphabet().owner(cells_[static_cast<std::size_t>(cell)]) == player;
  }
  bool empty_at(int cell) const {
    return board_->alphabet().is_empty(cells_[static_cast<std::size_t>(cell)]);
  }

  // Same position and side to move (ply ignored).
  bool same_position(const GameState& other) const {
    return to_move_ == other.to_move_ && cells_ == other.cells_;
  }

 private:
  BoardPtr board_;
  std::vector<int> cells_;
  int to_move_;
  int ply_;
  std::uint64_t hash_;
};

std::uint64_t zobrist_key(int cell, int value);
std::uint64_t side_key();
std::uint64_t position_hash(std::span<const int> cells, int to_move);

// Placement as (node, value) pairs.
using Placement = std::vector<std::pair<int, int>>;

// Yellow on 9-14, red on 15-20, red to move. Xi Gua Qi board only.
Placement default_placement();

// Builds a validated starting position. Without a placement the default one is
// used. Each side must own at least one piece.
GameState initial_state(BoardPtr board, const std::optional<Placement>& placement,
                        int to_move = 1);
GameState initial_state();

std::vector<Move> legal_moves(const GameState& state, const RuleConfig& rules = {});
bool has_legal_move(const GameState& state, const RuleConfig& rules = {});

// Maximal groups of `player` pieces with no empty neighbor.
std::vector<CaptureSet> blocked_groups(const GameState& state, int player);

struct MoveResult {
  GameState state;
  CaptureSet captures;
};

// Throws RuleViolation when the move is not legal in `state`.
MoveResult apply_move(const GameState& state, Move move, const RuleConfig& rules = {});

int degrees_of_freedom(const GameState& state, int player);

enum class Termination { none, no_pieces, no_moves, repetition, ply_cap };

std::string_view termination_name(Termination t);
Termination termination_from_name(std::string_view name);

struct Status {
  enum class Kind { ongoing, win, draw };
  Kind kind = Kind::ongoing;
  int winner = 0;
  Termination reason = Termination::none;

  bool ongoing() const { return kind == Kind::ongoing; }
  bool operator==(const Status&) const = default;
};

// Occurrence count per position hash, current position included.
using HashHistory = std::unordered_map<std::uint64_t, int>;

Status terminal_status(const GameState& state, const HashHistory& history,
                       const RuleConfig& rules = {});

struct PlayedMove {
  Move move;
  CaptureSet captures;

  bool operator==(const PlayedMove&) const = default;
};

struct GameRecord {
  std::vector<GameState> states;
  std::vector<PlayedMove> moves;
  Status outcome;
  RuleConfig rules;
  std::uint64_t seed = 0;
  std::vector<std::string> policies;

  const BoardGraph& board() const { return states.front().board(); }
  const GameState& initial() const { return states.front(); }
};

struct TrajectoryClass {
  enum class Kind { dag, cg };
  Kind kind = Kind::dag;
  // Index into `states` of the first position seen for the second time.
  std::optional<int> first_repeat_ply;
};

TrajectoryClass classify_trajectory(const GameRecord& record);

// Replays `moves` from `start`, validating every move and capture list.
GameRecord replay(const GameState& start, const std::vector<PlayedMove>& moves,
                  const RuleConfig& rules);

}  // namespace xigua
