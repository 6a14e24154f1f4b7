#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xigua/dataset.h"
#include "xigua/errors.h"
#include "xigua/metrics.h"
#include "xigua/move_algebra.h"
#include "xigua/record.h"
#include "xigua/ring_check.h"
#include "xigua/solver.h"

namespace py = pybind11;
using namespace xigua;

namespace {

// JSON crosses the boundary as text; the Python package decodes it.
std::string dump(const nlohmann::ordered_json& j) { return j.dump(); }

std::vector<std::vector<std::string>> dense(const TransitionMatrix& m) {
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(m.size()),
                                            std::vector<std::string>(static_cast<std::size_t>(m.size()), "0"));
  for (int r = 0; r < m.size(); ++r) {
    for (const auto& e : m.row(r)) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(e.col)] = e.value.get_str();
  }
  return out;
}

SearchConfig make_config(const std::string& policy, int depth, std::uint64_t seed, bool alpha_beta,
                         bool table, bool tiebreak) {
  SearchConfig c;
  c.policy = policy_from_name(policy);
  c.depth = depth;
  c.seed = seed;
  c.use_alpha_beta = alpha_beta;
  c.use_transposition = table;
  c.random_tiebreak = tiebreak;
  return c;
}

std::vector<GameRecord> parse_records(const std::string& jsonl) {
  std::istringstream in(jsonl);
  return read_records(in);
}

}  // namespace

PYBIND11_MODULE(_xigua, m) {
  m.doc() = "Xi Gua Qi rules, search and move-matrix verification";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<RuleViolation>(m, "RuleViolation", PyExc_ValueError);
  py::register_exception<RecordParseError>(m, "RecordParseError", PyExc_ValueError);

  py::class_<BoardGraph, std::shared_ptr<BoardGraph>>(m, "Board")
      .def_property_readonly("name", &BoardGraph::name)
      .def_property_readonly("size", &BoardGraph::size)
      .def("neighbors", [](const BoardGraph& b, int i) {
        const auto n = b.neighbors(i);
        return std::vector<int>(n.begin(), n.end());
      })
      .def("edges", &BoardGraph::edges)
      .def("directed_pairs", &BoardGraph::directed_pairs)
      .def("to_json", [](const BoardGraph& b) { return board_to_json(b).dump(); });

  m.def("xigua_board", [] { return std::make_shared<BoardGraph>(xigua_board()); });
  m.def(
      "custom_board",
      [](int n, const std::vector<Edge>& edges, int t, int d, const std::string& name) {
        return std::make_shared<BoardGraph>(build_custom_board(n, edges, {t, d}, name));
      },
      py::arg("n"), py::arg("edges"), py::arg("t") = 1, py::arg("d") = 2, py::arg("name") = "custom");

  py::class_<Move>(m, "Move")
      .def(py::init<>())
      .def(py::init([](int from, int to) { return Move{from, to}; }), py::arg("from_"), py::arg("to"))
      .def_readwrite("from_", &Move::from)
      .def_readwrite("to", &Move::to)
      .def("__eq__", [](const Move& a, const Move& b) { return a == b; })
      .def("__hash__", [](const Move& a) { return a.from * 1000 + a.to; })
      .def("__iter__", [](const Move& a) { return py::iter(py::make_tuple(a.from, a.to)); })
      .def("__repr__", [](const Move& a) {
        return "Move(" + std::to_string(a.from) + ", " + std::to_string(a.to) + ")";
      });

  py::class_<GameState>(m, "GameState")
      .def(py::init([](std::shared_ptr<BoardGraph> board, std::vector<int> cells, int to_move, int ply) {
             return GameState(board, std::move(cells), to_move, ply);
           }),
           py::arg("board"), py::arg("cells"), py::arg("to_move") = 1, py::arg("ply") = 0)
      .def_property_readonly("cells", [](const GameState& s) {
        return std::vector<int>(s.cells().begin(), s.cells().end());
      })
      .def_property_readonly("to_move", &GameState::to_move)
      .def_property_readonly("ply", &GameState::ply)
      .def_property_readonly("hash", &GameState::hash)
      .def("count", &GameState::count)
      .def("__repr__", [](const GameState& s) {
        return "GameState(to_move=" + std::to_string(s.to_move()) + ", ply=" + std::to_string(s.ply()) + ")";
      });

  m.def(
      "initial_state",
      [](std::optional<Placement> placement, int to_move) {
        return initial_state(xigua_board_ptr(), placement, to_move);
      },
      py::arg("placement") = py::none(), py::arg("to_move") = 1);

  m.def("legal_moves", [](const GameState& s) { return legal_moves(s); });
  m.def("apply_move", [](const GameState& s, const Move& mv) {
    MoveResult r = apply_move(s, mv);
    return py::make_tuple(r.state, r.captures.indices);
  });
  m.def("blocked_groups", [](const GameState& s, int player) {
    std::vector<std::vector<int>> out;
    for (const auto& g : blocked_groups(s, player)) out.push_back(g.indices);
    return out;
  });
  m.def("degrees_of_freedom", &degrees_of_freedom);

  m.def(
      "search",
      [](const GameState& s, int depth, bool alpha_beta, bool table) {
        const SearchResult r = minmax_search(s, make_config("minmax", depth, 0, alpha_beta, table, false));
        return py::dict(py::arg("move") = r.best_move, py::arg("score") = r.score,
                        py::arg("nodes") = r.nodes_visited);
      },
      py::arg("state"), py::arg("depth") = 2, py::arg("alpha_beta") = true, py::arg("table") = true);
  m.def(
      "evaluate",
      [](const GameState& s, int perspective) { return evaluate(s, perspective, SearchConfig{}); },
      py::arg("state"), py::arg("perspective"));

  m.def(
      "self_play",
      [](std::size_t games, const std::string& policy_a, const std::string& policy_b, int depth,
         std::uint64_t seed, bool tiebreak) {
        const auto records = self_play(initial_state(), make_config(policy_a, depth, seed, true, true, tiebreak),
                                       make_config(policy_b, depth, seed, true, true, tiebreak), {}, games, seed);
        std::vector<std::string> lines;
        for (const auto& r : records) lines.push_back(record_to_line(r));
        return lines;
      },
      py::arg("games"), py::arg("policy_a") = "minmax", py::arg("policy_b") = "random", py::arg("depth") = 2,
      py::arg("seed") = 0, py::arg("random_tiebreak") = false,
      "Plays games and returns one JSON record line per game.");

  m.def(
      "transition_matrix",
      [](const GameState& s, const Move& mv, const std::string& mode) {
        const CaptureSet caps = apply_move(s, mv).captures;
        return dense(mode == "q" ? build_transition_matrix_q(s, mv, caps)
                                 : build_transition_matrix_y(s, mv, caps));
      },
      py::arg("state"), py::arg("move"), py::arg("mode") = "y",
      "Dense matrix of exact entries rendered as strings ('1', '-1', '3/4').");

  m.def(
      "verify_records",
      [](const std::string& jsonl, const std::string& mode) {
        const EntryDomain domain = mode == "q" ? EntryDomain::q : EntryDomain::y;
        std::size_t moves = 0, passed = 0;
        for (const auto& g : parse_records(jsonl)) {
          for (std::size_t i = 0; i < g.moves.size(); ++i) {
            ++moves;
            passed += verify_move(g.states[i], g.moves[i], g.states[i + 1], domain).passed();
          }
        }
        return py::make_tuple(passed, moves);
      },
      py::arg("jsonl"), py::arg("mode") = "y", "Returns (passed, moves).");

  m.def(
      "ring_report",
      [](int dim, std::size_t samples, std::uint64_t seed, int modulus) {
        return dump(report_to_json(check_ring_axioms(dim, modulus, samples, seed)));
      },
      py::arg("dim") = 5, py::arg("samples") = 1000, py::arg("seed") = 1, py::arg("modulus") = 3);
  m.def("nonclosure_report", [](int dim) { return dump(report_to_json(nonclosure_witnesses(dim))); });

  m.def(
      "dataset",
      [](const std::string& jsonl, bool draws_as_loss) {
        const auto samples =
            generate_dataset(parse_records(jsonl), draws_as_loss ? DrawPolicy::label_loss : DrawPolicy::exclude);
        std::vector<std::vector<int>> rows;
        std::vector<int> labels;
        for (const auto& s : samples) {
          rows.emplace_back(s.features.begin(), s.features.end());
          labels.push_back(s.label);
        }
        return py::make_tuple(rows, labels);
      },
      py::arg("jsonl"), py::arg("draws_as_loss") = false, "Returns (feature rows, labels).");

  m.def(
      "metrics",
      [](const std::vector<int>& labels, const std::vector<double>& scores, double threshold) {
        return dump(metrics_to_json(compute_metrics(labels, scores, threshold)));
      },
      py::arg("labels"), py::arg("scores"), py::arg("threshold") = 0.5);
}
