#include "xigua/solver.h"

#include <atomic>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "xigua/errors.h"

namespace xigua {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
}

std::mt19937_64 position_rng(const GameState& state, std::uint64_t seed) {
  return std::mt19937_64(mix(seed ^ mix(state.hash() ^ mix(static_cast<std::uint64_t>(state.ply())))));
}

constexpr double kInf = std::numeric_limits<double>::infinity();

// Loser of a decided position, 0 when play continues or the game is drawn.
// Sets `drawn` for the ply cap.
int decided_loser(const GameState& state, const RuleConfig& rules, bool& drawn) {
  drawn = false;
  const int side = state.to_move();
  if (state.count(side) < rules.min_pieces) return side;
  if (state.count(opponent_of(side)) < rules.min_pieces) return opponent_of(side);
  if (!has_legal_move(state, rules)) return side;
  if (state.ply() >= rules.ply_cap) drawn = true;
  return 0;
}

struct TTKey {
  std::uint64_t hash;
  int ply;
  int depth;
  bool operator==(const TTKey&) const = default;
};

struct TTKeyHash {
  std::size_t operator()(const TTKey& k) const {
    return static_cast<std::size_t>(mix(k.hash ^ (static_cast<std::uint64_t>(k.ply) << 32) ^
                                        static_cast<std::uint64_t>(k.depth)));
  }
};

enum class Bound { exact, lower, upper };

struct TTEntry {
  double value;
  Bound bound;
};

class Searcher {
 public:
  Searcher(const SearchConfig& config, const RuleConfig& rules, int root_player)
      : config_(config), rules_(rules), root_(root_player) {}

  double search(const GameState& state, int depth, double alpha, double beta) {
    ++nodes_;
    bool drawn = false;
    if (decided_loser(state, rules_, drawn) != 0 || drawn || depth == 0) {
      return evaluate(state, root_, config_, rules_, depth);
    }

    const TTKey key{state.hash(), state.ply(), depth};
    if (config_.use_transposition) {
      if (auto it = table_.find(key); it != table_.end()) {
        const TTEntry& e = it->second;
        if (e.bound == Bound::exact) return e.value;
        if (e.bound == Bound::lower && e.value >= beta) return e.value;
        if (e.bound == Bound::upper && e.value <= alpha) return e.value;
      }
    }

    const double alpha0 = alpha;
    const double beta0 = beta;
    const bool maximizing = state.to_move() == root_;
    double best = maximizing ? -kInf : kInf;
    for (const Move& m : legal_moves(state, rules_)) {
      const GameState child = apply_move(state, m, rules_).state;
      const double v = search(child, depth - 1, alpha, beta);
      if (maximizing) {
        best = std::max(best, v);
        if (config_.use_alpha_beta) alpha = std::max(alpha, v);
      } else {
        best = std::min(best, v);
        if (config_.use_alpha_beta) beta = std::min(beta, v);
      }
      if (config_.use_alpha_beta && alpha >= beta) break;
    }

    if (config_.use_transposition) {
      Bound bound = Bound::exact;
      if (best <= alpha0) {
        bound = Bound::upper;
      } else if (best >= beta0) {
        bound = Bound::lower;
      }
      table_[key] = {best, bound};
    }
    return best;
  }

  std::size_t nodes() const { return nodes_; }

 private:
  const SearchConfig& config_;
  const RuleConfig& rules_;
  int root_;
  std::size_t nodes_ = 0;
  std::unordered_map<TTKey, TTEntry, TTKeyHash> table_;
};

}  // namespace

std::string_view policy_name(Policy p) {
  switch (p) {
    case Policy::random: return "random";
    case Policy::greedy: return "greedy";
    case Policy::minmax: return "minmax";
  }
  return "minmax";
}

Policy policy_from_name(std::string_view name) {
  for (auto p : {Policy::random, Policy::greedy, Policy::minmax}) {
    if (policy_name(p) == name) return p;
  }
  throw ValidationError("unknown policy '" + std::string(name) + "'");
}

std::string SearchConfig::label() const {
  std::ostringstream os;
  os << policy_name(policy);
  if (policy == Policy::minmax) os << "(depth=" << depth << ")";
  return os.str();
}

double evaluate(const GameState& state, int perspective, const SearchConfig& config,
                const RuleConfig& rules, int depth_remaining) {
  bool drawn = false;
  const int loser = decided_loser(state, rules, drawn);
  const double sentinel = kWinScore * (depth_remaining + 1);
  if (loser != 0) return loser == perspective ? -sentinel : sentinel;
  if (drawn) return 0.0;
  return config.dof_weight_own * degrees_of_freedom(state, perspective) +
         config.dof_weight_opp * degrees_of_freedom(state, opponent_of(perspective));
}

SearchResult minmax_search(const GameState& state, const SearchConfig& config,
                           const RuleConfig& rules) {
  if (config.depth < 1) throw ValidationError("search depth must be >= 1");
  bool drawn = false;
  if (decided_loser(state, rules, drawn) != 0 || drawn) {
    throw RuleViolation("search root is terminal; check terminal_status before searching");
  }
  Searcher searcher(config, rules, state.to_move());
  SearchResult result;
  result.depth_reached = config.depth;
  result.score = -kInf;
  std::vector<Move> tied;
  double alpha = -kInf;
  for (const Move& m : legal_moves(state, rules)) {
    const GameState child = apply_move(state, m, rules).state;
    // Random tie-breaking needs exact values for every root move.
    const double lo = config.random_tiebreak ? -kInf : alpha;
    const double v = searcher.search(child, config.depth - 1, lo, kInf);
    if (v > result.score) {
      result.score = v;
      result.best_move = m;
      tied.assign(1, m);
    } else if (v == result.score) {
      tied.push_back(m);
    }
    if (config.use_alpha_beta) alpha = std::max(alpha, v);
  }
  if (config.random_tiebreak && tied.size() > 1) {
    auto rng = position_rng(state, config.seed);
    result.best_move = tied[pick(rng, tied.size())];
  }
  result.nodes_visited = searcher.nodes() + 1;
  return result;
}

Move choose_move(const GameState& state, const SearchConfig& config, const RuleConfig& rules) {
  switch (config.policy) {
    case Policy::random: {
      const auto moves = legal_moves(state, rules);
      if (moves.empty()) throw RuleViolation("no legal move to choose from");
      auto rng = position_rng(state, config.seed);
      return moves[pick(rng, moves.size())];
    }
    case Policy::greedy: {
      SearchConfig greedy = config;
      greedy.depth = 1;
      return minmax_search(state, greedy, rules).best_move;
    }
    case Policy::minmax:
      return minmax_search(state, config, rules).best_move;
  }
  throw ValidationError("unknown policy");
}

GameRecord play_game(const GameState& start, const SearchConfig& config_a,
                     const SearchConfig& config_b, const RuleConfig& rules, std::uint64_t seed) {
  SearchConfig sides[2] = {config_a, config_b};
  sides[0].seed = mix(seed ^ mix(config_a.seed ^ 0xA));
  sides[1].seed = mix(seed ^ mix(config_b.seed ^ 0xB));

  GameRecord record;
  record.rules = rules;
  record.seed = seed;
  record.policies = {config_a.label(), config_b.label()};
  record.states.push_back(start);
  HashHistory history;
  history[start.hash()] = 1;
  while (true) {
    const GameState& state = record.states.back();
    Status status = terminal_status(state, history, rules);
    if (!status.ongoing()) {
      record.outcome = status;
      break;
    }
    const Move move = choose_move(state, sides[state.to_move() - 1], rules);
    MoveResult r = apply_move(state, move, rules);
    ++history[r.state.hash()];
    record.moves.push_back({move, std::move(r.captures)});
    record.states.push_back(std::move(r.state));
  }
  return record;
}

GameRecord play_game(const BoardGraph& board, const SearchConfig& config_a,
                     const SearchConfig& config_b, const RuleConfig& rules, std::uint64_t seed) {
  BoardPtr ptr = board == xigua_board() ? xigua_board_ptr() : std::make_shared<const BoardGraph>(board);
  return play_game(initial_state(ptr, std::nullopt, 1), config_a, config_b, rules, seed);
}

std::vector<GameRecord> self_play(const GameState& start, const SearchConfig& config_a,
                                  const SearchConfig& config_b, const RuleConfig& rules,
                                  std::size_t games, std::uint64_t seed, unsigned jobs) {
  std::vector<GameRecord> out(games);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < games; i = next++) {
      out[i] = play_game(start, config_a, config_b, rules, seed + i);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(games)));
  if (threads <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace xigua
