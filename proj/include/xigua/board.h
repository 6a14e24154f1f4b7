#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace xigua {

// Piece values: side A owns 1..t, side B owns t+1..d, and d+1 marks an empty
// lattice. Xi Gua Qi uses t=1, d=2 (1 red, 2 yellow, 3 empty).
struct PieceAlphabet {
  int t = 1;
  int d = 2;

  int empty_value() const { return d + 1; }
  bool valid_value(int v) const { return v >= 1 && v <= d + 1; }
  bool is_empty(int v) const { return v == d + 1; }
  // Owner of a piece value: 1 for side A, 2 for side B, 0 for empty.
  int owner(int v) const {
    if (v >= 1 && v <= t) return 1;
    if (v > t && v <= d) return 2;
    return 0;
  }
  // Lowest/highest piece value owned by `player`.
  int first_value(int player) const { return player == 1 ? 1 : t + 1; }
  int last_value(int player) const { return player == 1 ? t : d; }

  void validate() const;
  bool operator==(const PieceAlphabet&) const = default;
};

inline constexpr PieceAlphabet kXiguaAlphabet{1, 2};

using Edge = std::pair<int, int>;

// Undirected lattice graph. Immutable after construction.
class BoardGraph {
 public:
  BoardGraph(std::string name, int n, const std::vector<Edge>& undirected_edges,
             PieceAlphabet alphabet = kXiguaAlphabet);

  const std::string& name() const { return name_; }
  int size() const { return n_; }
  const PieceAlphabet& alphabet() const { return alphabet_; }

  // Sorted, duplicate-free neighbor list. Throws std::out_of_range.
  const std::vector<int>& neighbors(int node) const;
  bool adjacent(int a, int b) const;

  // Each undirected edge once as (lo, hi), sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  // Both orientations of every edge, sorted lexicographically.
  std::vector<Edge> directed_pairs() const;
  std::vector<int> degree_sequence() const;

  bool operator==(const BoardGraph& other) const;

 private:
  std::string name_;
  int n_;
  PieceAlphabet alphabet_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
};

// The 21-lattice Xi Gua Qi board.
const BoardGraph& xigua_board();
BoardGraph build_xigua_board();

BoardGraph build_custom_board(int n, const std::vector<Edge>& undirected_edges,
                              PieceAlphabet alphabet = kXiguaAlphabet,
                              std::string name = "custom");

// {name, n, edges:[[i,j],...]} plus an optional alphabet {t, d}.
nlohmann::json board_to_json(const BoardGraph& board);
BoardGraph board_from_json(const nlohmann::json& j);

}  // namespace xigua
