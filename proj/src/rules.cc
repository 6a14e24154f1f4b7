#include "xigua/rules.h"

#include <algorithm>
#include <string>

#include "xigua/errors.h"

namespace xigua {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kZobristSeed = 0x58494755412D5131ULL;

// Capture tree rooted at one piece. Same-owner neighbors become inner nodes
// that are expanded in turn; every other neighbor is a leaf.
struct CaptureTree {
  struct Node {
    int cell;
    int parent;
    bool leaf;
  };
  std::vector<Node> nodes;
};

CaptureTree grow_capture_tree(const BoardGraph& board, std::span<const int> cells,
                              int root, std::vector<char>& in_tree) {
  const auto& alphabet = board.alphabet();
  const int owner = alphabet.owner(cells[static_cast<std::size_t>(root)]);
  CaptureTree tree;
  tree.nodes.push_back({root, -1, false});
  in_tree[static_cast<std::size_t>(root)] = 1;
  for (std::size_t at = 0; at < tree.nodes.size(); ++at) {
    if (tree.nodes[at].leaf) continue;
    const int cell = tree.nodes[at].cell;
    for (int nb : board.neighbors(cell)) {
      const int v = cells[static_cast<std::size_t>(nb)];
      if (alphabet.owner(v) == owner) {
        if (in_tree[static_cast<std::size_t>(nb)]) continue;
        in_tree[static_cast<std::size_t>(nb)] = 1;
        tree.nodes.push_back({nb, static_cast<int>(at), false});
      } else {
        tree.nodes.push_back({nb, static_cast<int>(at), true});
      }
    }
  }
  return tree;
}

// Groups of `player` whose capture tree has only opponent-held leaves.
std::vector<CaptureSet> find_blocked(const BoardGraph& board, std::span<const int> cells,
                                     int player) {
  const auto& alphabet = board.alphabet();
  const int opponent = opponent_of(player);
  std::vector<char> in_tree(cells.size(), 0);
  std::vector<CaptureSet> out;
  for (int i = 0; i < board.size(); ++i) {
    if (in_tree[static_cast<std::size_t>(i)] ||
        alphabet.owner(cells[static_cast<std::size_t>(i)]) != player) {
      continue;
    }
    const CaptureTree tree = grow_capture_tree(board, cells, i, in_tree);
    bool blocked = true;
    for (const auto& node : tree.nodes) {
      if (node.leaf && alphabet.owner(cells[static_cast<std::size_t>(node.cell)]) != opponent) {
        blocked = false;
        break;
      }
    }
    if (!blocked) continue;
    CaptureSet group;
    for (const auto& node : tree.nodes) {
      if (!node.leaf) group.indices.push_back(node.cell);
    }
    std::sort(group.indices.begin(), group.indices.end());
    for (int c : group.indices) group.values.push_back(cells[static_cast<std::size_t>(c)]);
    out.push_back(std::move(group));
  }
  return out;
}

struct Outcome {
  std::vector<int> cells;
  CaptureSet captures;
  bool suicide = false;
};

void remove_groups(std::vector<int>& cells, const std::vector<CaptureSet>& groups,
                   int empty_value, std::vector<int>& indices, std::vector<int>& values) {
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.indices.size(); ++i) {
      indices.push_back(g.indices[i]);
      values.push_back(g.values[i]);
      cells[static_cast<std::size_t>(g.indices[i])] = empty_value;
    }
  }
  // Keep indices sorted with values following their cells.
  std::vector<std::size_t> order(indices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  std::vector<int> si, sv;
  for (std::size_t i : order) {
    si.push_back(indices[i]);
    sv.push_back(values[i]);
  }
  indices = std::move(si);
  values = std::move(sv);
}

// Moves the piece, removes blocked opponent groups and then blocked mover
// groups. Assumes the basic move shape has been validated.
Outcome resolve(const GameState& state, Move move) {
  const BoardGraph& board = state.board();
  const int empty = board.alphabet().empty_value();
  const int mover = state.to_move();
  Outcome out;
  out.cells.assign(state.cells().begin(), state.cells().end());
  out.cells[static_cast<std::size_t>(move.to)] = out.cells[static_cast<std::size_t>(move.from)];
  out.cells[static_cast<std::size_t>(move.from)] = empty;

  remove_groups(out.cells, find_blocked(board, out.cells, opponent_of(mover)), empty,
                out.captures.indices, out.captures.values);
  // Only the group the piece joined can be a suicide; older blocked groups of
  // the mover stay on the board until the opponent moves.
  auto own = find_blocked(board, out.cells, mover);
  std::erase_if(own, [&](const CaptureSet& g) {
    return !std::binary_search(g.indices.begin(), g.indices.end(), move.to);
  });
  if (!own.empty()) {
    out.suicide = true;
    remove_groups(out.cells, own, empty, out.captures.self_indices, out.captures.self_values);
  }
  return out;
}

std::string describe(Move m) {
  return "(" + std::to_string(m.from) + "->" + std::to_string(m.to) + ")";
}

}  // namespace

std::uint64_t zobrist_key(int cell, int value) {
  return splitmix64(kZobristSeed ^ (static_cast<std::uint64_t>(cell) << 8) ^
                    static_cast<std::uint64_t>(value));
}

std::uint64_t side_key() { return splitmix64(kZobristSeed ^ 0xFFFFFFFFULL); }

std::uint64_t position_hash(std::span<const int> cells, int to_move) {
  std::uint64_t h = to_move == 2 ? side_key() : 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    h ^= zobrist_key(static_cast<int>(i), cells[i]);
  }
  return h;
}

BoardPtr xigua_board_ptr() {
  static const BoardPtr ptr = std::make_shared<const BoardGraph>(build_xigua_board());
  return ptr;
}

GameState::GameState(BoardPtr board, std::vector<int> cells, int to_move, int ply)
    : board_(std::move(board)), cells_(std::move(cells)), to_move_(to_move), ply_(ply) {
  if (!board_) throw ValidationError("state requires a board");
  if (static_cast<int>(cells_.size()) != board_->size()) {
    throw ValidationError("state has " + std::to_string(cells_.size()) +
                          " cells but the board has " + std::to_string(board_->size()));
  }
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!board_->alphabet().valid_value(cells_[i])) {
      throw ValidationError("cell " + std::to_string(i) + " holds invalid value " +
                            std::to_string(cells_[i]));
    }
  }
  if (to_move_ != 1 && to_move_ != 2) {
    throw ValidationError("to_move must be 1 or 2, got " + std::to_string(to_move_));
  }
  if (ply_ < 0) throw ValidationError("ply must be non-negative");
  hash_ = position_hash(cells_, to_move_);
}

int GameState::count(int player) const {
  const auto& alphabet = board_->alphabet();
  return static_cast<int>(std::count_if(cells_.begin(), cells_.end(),
                                        [&](int v) { return alphabet.owner(v) == player; }));
}

Placement default_placement() {
  Placement p;
  for (int i = 9; i <= 14; ++i) p.emplace_back(i, 2);
  for (int i = 15; i <= 20; ++i) p.emplace_back(i, 1);
  return p;
}

GameState initial_state(BoardPtr board, const std::optional<Placement>& placement,
                        int to_move) {
  if (!board) throw ValidationError("initial_state requires a board");
  const auto& alphabet = board->alphabet();
  Placement chosen;
  if (placement) {
    chosen = *placement;
  } else {
    if (!(*board == xigua_board())) {
      throw ValidationError("the default placement only exists for the Xi Gua Qi board");
    }
    chosen = default_placement();
  }
  std::vector<int> cells(static_cast<std::size_t>(board->size()), alphabet.empty_value());
  std::vector<char> assigned(cells.size(), 0);
  for (auto [node, value] : chosen) {
    if (node < 0 || node >= board->size()) {
      throw ValidationError("placement node " + std::to_string(node) + " is off the board");
    }
    if (!alphabet.valid_value(value) || alphabet.is_empty(value)) {
      throw ValidationError("placement value " + std::to_string(value) + " at node " +
                            std::to_string(node) + " is not a piece");
    }
    auto& slot = cells[static_cast<std::size_t>(node)];
    if (assigned[static_cast<std::size_t>(node)] && slot != value) {
      throw ValidationError("conflicting placement at node " + std::to_string(node));
    }
    assigned[static_cast<std::size_t>(node)] = 1;
    slot = value;
  }
  GameState state(std::move(board), std::move(cells), to_move, 0);
  if (state.count(1) == 0 || state.count(2) == 0) {
    throw ValidationError("placement must give each player at least one piece");
  }
  return state;
}

GameState initial_state() { return initial_state(xigua_board_ptr(), std::nullopt, 1); }

std::vector<Move> legal_moves(const GameState& state, const RuleConfig&) {
  const BoardGraph& board = state.board();
  std::vector<Move> moves;
  for (int p = 0; p < board.size(); ++p) {
    if (!state.owned_by(p, state.to_move())) continue;
    // The vacated source is an empty neighbor of the destination, so a
    // single-step move is never a suicide.
    for (int q : board.neighbors(p)) {
      if (state.empty_at(q)) moves.push_back({p, q});
    }
  }
  return moves;
}

bool has_legal_move(const GameState& state, const RuleConfig&) {
  const BoardGraph& board = state.board();
  for (int p = 0; p < board.size(); ++p) {
    if (!state.owned_by(p, state.to_move())) continue;
    for (int q : board.neighbors(p)) {
      if (state.empty_at(q)) return true;
    }
  }
  return false;
}

std::vector<CaptureSet> blocked_groups(const GameState& state, int player) {
  return find_blocked(state.board(), state.cells(), player);
}

MoveResult apply_move(const GameState& state, Move move, const RuleConfig& rules) {
  const BoardGraph& board = state.board();
  if (move.from < 0 || move.from >= board.size() || move.to < 0 || move.to >= board.size()) {
    throw RuleViolation("move " + describe(move) + ": node outside the board");
  }
  if (!state.owned_by(move.from, state.to_move())) {
    throw RuleViolation("move " + describe(move) + ": source does not hold a piece of player " +
                        std::to_string(state.to_move()));
  }
  if (!board.adjacent(move.from, move.to)) {
    throw RuleViolation("move " + describe(move) + ": destination is not adjacent");
  }
  if (!state.empty_at(move.to)) {
    throw RuleViolation("move " + describe(move) + ": destination is occupied");
  }
  Outcome out = resolve(state, move);
  if (out.suicide && !rules.allow_suicide) {
    throw RuleViolation("move " + describe(move) + ": suicide is not allowed");
  }
  return {GameState(state.board_ptr(), std::move(out.cells), opponent_of(state.to_move()),
                    state.ply() + 1),
          std::move(out.captures)};
}

int degrees_of_freedom(const GameState& state, int player) { return state.count(player); }

std::string_view termination_name(Termination t) {
  switch (t) {
    case Termination::none: return "none";
    case Termination::no_pieces: return "no-pieces";
    case Termination::no_moves: return "no-moves";
    case Termination::repetition: return "repetition";
    case Termination::ply_cap: return "ply-cap";
  }
  return "none";
}

Termination termination_from_name(std::string_view name) {
  for (auto t : {Termination::none, Termination::no_pieces, Termination::no_moves,
                 Termination::repetition, Termination::ply_cap}) {
    if (termination_name(t) == name) return t;
  }
  throw ValidationError("unknown termination reason '" + std::string(name) + "'");
}

Status terminal_status(const GameState& state, const HashHistory& history,
                       const RuleConfig& rules) {
  const int side = state.to_move();
  if (state.count(side) < rules.min_pieces) {
    return {Status::Kind::win, opponent_of(side), Termination::no_pieces};
  }
  // Only reachable through a permitted suicide.
  if (state.count(opponent_of(side)) < rules.min_pieces) {
    return {Status::Kind::win, side, Termination::no_pieces};
  }
  if (!has_legal_move(state, rules)) {
    return {Status::Kind::win, opponent_of(side), Termination::no_moves};
  }
  if (auto it = history.find(state.hash());
      it != history.end() && it->second >= rules.repetition_limit) {
    return {Status::Kind::draw, 0, Termination::repetition};
  }
  if (state.ply() >= rules.ply_cap) {
    return {Status::Kind::draw, 0, Termination::ply_cap};
  }
  return {};
}

TrajectoryClass classify_trajectory(const GameRecord& record) {
  std::unordered_map<std::uint64_t, int> seen;
  for (std::size_t i = 0; i < record.states.size(); ++i) {
    if (!seen.emplace(record.states[i].hash(), static_cast<int>(i)).second) {
      return {TrajectoryClass::Kind::cg, static_cast<int>(i)};
    }
  }
  return {TrajectoryClass::Kind::dag, std::nullopt};
}

GameRecord replay(const GameState& start, const std::vector<PlayedMove>& moves,
                  const RuleConfig& rules) {
  GameRecord record;
  record.rules = rules;
  record.states.push_back(start);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    MoveResult r = apply_move(record.states.back(), moves[i].move, rules);
    if (r.captures.indices != moves[i].captures.indices ||
        r.captures.self_indices != moves[i].captures.self_indices) {
      throw ValidationError("ply " + std::to_string(i) + ": recorded captures disagree with the rules");
    }
    record.states.push_back(std::move(r.state));
    record.moves.push_back({moves[i].move, std::move(r.captures)});
  }
  return record;
}

}  // namespace xigua
