#include "xigua/board.h"

#include <algorithm>
#include <stdexcept>

#include "xigua/errors.h"

namespace xigua {

void PieceAlphabet::validate() const {
  if (t < 1 || t >= d) {
    throw ValidationError("alphabet requires 1 <= t < d, got t=" +
                          std::to_string(t) + " d=" + std::to_string(d));
  }
}

BoardGraph::BoardGraph(std::string name, int n,
                       const std::vector<Edge>& undirected_edges,
                       PieceAlphabet alphabet)
    : name_(std::move(name)), n_(n), alphabet_(alphabet), adjacency_(n > 0 ? n : 0) {
  if (n < 1) throw ValidationError("board needs at least one lattice");
  alphabet_.validate();
  for (auto [a, b] : undirected_edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ValidationError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (a == b) {
      throw ValidationError("self-loop at node " + std::to_string(a));
    }
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

const std::vector<int>& BoardGraph::neighbors(int node) const {
  if (node < 0 || node >= n_) {
    throw std::out_of_range("node " + std::to_string(node) + " outside board of size " +
                            std::to_string(n_));
  }
  return adjacency_[node];
}

bool BoardGraph::adjacent(int a, int b) const {
  const auto& nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<Edge> BoardGraph::directed_pairs() const {
  std::vector<Edge> out;
  out.reserve(edges_.size() * 2);
  for (auto [a, b] : edges_) {
    out.emplace_back(a, b);
    out.emplace_back(b, a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> BoardGraph::degree_sequence() const {
  std::vector<int> deg;
  deg.reserve(adjacency_.size());
  for (const auto& nbrs : adjacency_) deg.push_back(static_cast<int>(nbrs.size()));
  return deg;
}

bool BoardGraph::operator==(const BoardGraph& other) const {
  return n_ == other.n_ && alphabet_ == other.alphabet_ && edges_ == other.edges_;
}

namespace {

// Inner hub 0, square 1-4, spoke hubs 5-8 and the outer ring 9-20.
const std::vector<Edge> kXiguaEdges = {
    {0, 1},   {0, 2},   {0, 3},   {0, 4},   {1, 2},   {1, 4},   {1, 5},
    {2, 3},   {2, 6},   {3, 4},   {3, 7},   {4, 8},   {5, 9},   {5, 10},
    {5, 20},  {6, 11},  {6, 12},  {6, 13},  {7, 14},  {7, 15},  {7, 16},
    {8, 17},  {8, 18},  {8, 19},  {9, 10},  {9, 20},  {10, 11}, {11, 12},
    {12, 13}, {13, 14}, {14, 15}, {15, 16}, {16, 17}, {17, 18}, {18, 19},
    {19, 20},
};

}  // namespace

BoardGraph build_xigua_board() { return BoardGraph("xigua", 21, kXiguaEdges); }

const BoardGraph& xigua_board() {
  static const BoardGraph board = build_xigua_board();
  return board;
}

BoardGraph build_custom_board(int n, const std::vector<Edge>& undirected_edges,
                              PieceAlphabet alphabet, std::string name) {
  return BoardGraph(std::move(name), n, undirected_edges, alphabet);
}

nlohmann::json board_to_json(const BoardGraph& board) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : board.edges()) edges.push_back({a, b});
  nlohmann::json j = {{"name", board.name()}, {"n", board.size()}, {"edges", edges}};
  if (board.alphabet() != kXiguaAlphabet) {
    j["alphabet"] = {{"t", board.alphabet().t}, {"d", board.alphabet().d}};
  }
  return j;
}

BoardGraph board_from_json(const nlohmann::json& j) {
  try {
    PieceAlphabet alphabet = kXiguaAlphabet;
    if (j.contains("alphabet")) {
      alphabet.t = j.at("alphabet").at("t").get<int>();
      alphabet.d = j.at("alphabet").at("d").get<int>();
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw ValidationError("edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return BoardGraph(j.value("name", std::string("custom")), j.at("n").get<int>(), edges,
                      alphabet);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed board JSON: ") + e.what());
  }
}

}  // namespace xigua
