// xigua: self-play, search, verification, dataset and service front end.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "xigua/dataset.h"
#include "xigua/errors.h"
#include "xigua/metrics.h"
#include "xigua/move_algebra.h"
#include "xigua/record.h"
#include "xigua/ring_check.h"
#include "xigua/service.h"
#include "xigua/solver.h"

using namespace xigua;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void add_rule_flags(CLI::App* app, RuleConfig& rules) {
  app->add_option("--ply-cap", rules.ply_cap, "Draw after this many plies")->check(CLI::PositiveNumber);
  app->add_option("--repetition-limit", rules.repetition_limit, "Draw on this many occurrences of a position")
      ->check(CLI::PositiveNumber);
  app->add_option("--min-pieces", rules.min_pieces, "A side with fewer pieces loses")->check(CLI::PositiveNumber);
  app->add_flag("--allow-suicide", rules.allow_suicide, "Permit moves that leave the mover's group blocked");
}

// Writes to `path`, or stdout for "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
  if (path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  write(out);
  if (!out) throw InputError("failed writing '" + path + "'");
}

std::vector<GameRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return read_records(in);
  } catch (const RecordParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Placement parse_placement(const std::string& text) {
  const auto j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw InputError("--placement must be a JSON object {\"node\": value}");
  Placement p;
  for (const auto& [key, value] : j.items()) {
    try {
      p.emplace_back(std::stoi(key), value.get<int>());
    } catch (const std::exception&) {
      throw InputError("bad placement entry '" + key + "'");
    }
  }
  return p;
}

GameState start_position(const std::string& board_path, const std::string& placement, int to_move) {
  BoardPtr board = xigua_board_ptr();
  if (!board_path.empty()) {
    std::ifstream in(board_path);
    if (!in) throw InputError("cannot open '" + board_path + "'");
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw InputError(board_path + ": not valid JSON");
    board = std::make_shared<const BoardGraph>(board_from_json(j));
  }
  std::optional<Placement> p;
  if (!placement.empty()) p = parse_placement(placement);
  try {
    return initial_state(board, p, to_move);
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
}

SearchConfig search_config(const std::string& policy, int depth, std::uint64_t seed, bool tiebreak) {
  SearchConfig c;
  c.policy = policy_from_name(policy);
  c.depth = depth;
  c.seed = seed;
  c.random_tiebreak = tiebreak;
  return c;
}

// ---- selfplay

struct SelfplayArgs {
  std::size_t games = 1;
  std::string policy_a = "minmax";
  std::string policy_b = "minmax";
  int depth = 2;
  int depth_a = 0;
  int depth_b = 0;
  std::uint64_t seed = 0;
  std::string out = "-";
  unsigned jobs = 1;
  bool tiebreak = false;
  std::string board;
  std::string placement;
  RuleConfig rules;
};

int run_selfplay(const SelfplayArgs& a) {
  if (a.games < 1) throw InputError("games must be >= 1");
  const SearchConfig ca = search_config(a.policy_a, a.depth_a ? a.depth_a : a.depth, a.seed, a.tiebreak);
  const SearchConfig cb = search_config(a.policy_b, a.depth_b ? a.depth_b : a.depth, a.seed, a.tiebreak);
  const auto t0 = std::chrono::steady_clock::now();
  const GameState start = start_position(a.board, a.placement, 1);
  const auto games = self_play(start, ca, cb, a.rules, a.games, a.seed, a.jobs);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  with_output(a.out, [&](std::ostream& out) { write_records(out, games); });

  std::size_t red = 0, yellow = 0, draws = 0, plies = 0;
  for (const auto& g : games) {
    plies += g.moves.size();
    if (g.outcome.kind != Status::Kind::win) {
      ++draws;
    } else {
      (g.outcome.winner == 1 ? red : yellow) += 1;
    }
  }
  std::ostream& log = a.out == "-" ? std::cerr : std::cout;
  log << "games " << games.size() << "  red(" << ca.label() << ") wins " << red << "  yellow("
      << cb.label() << ") wins " << yellow << "  draws " << draws << "  mean plies " << std::fixed
      << std::setprecision(1) << static_cast<double>(plies) / static_cast<double>(games.size())
      << "  time " << std::setprecision(2) << secs << "s\n";
  return kOk;
}

// ---- solve

struct SolveArgs {
  std::string placement;
  std::string in;
  std::size_t game = 0;
  int ply = -1;
  int to_move = 1;
  int depth = 2;
  bool no_alpha_beta = false;
  bool no_table = false;
  RuleConfig rules;
};

GameState solve_position(const SolveArgs& a) {
  if (!a.in.empty()) {
    const auto games = load_records(a.in);
    if (a.game >= games.size()) throw InputError("--game is out of range");
    const auto& states = games[a.game].states;
    if (a.ply < 0) return states.back();
    if (static_cast<std::size_t>(a.ply) >= states.size()) throw InputError("--ply is out of range");
    return states[static_cast<std::size_t>(a.ply)];
  }
  return start_position("", a.placement, a.to_move);
}

int run_solve(const SolveArgs& a) {
  const GameState s = solve_position(a);
  SearchConfig c;
  c.depth = a.depth;
  c.use_alpha_beta = !a.no_alpha_beta;
  c.use_transposition = !a.no_table;
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult r;
  try {
    r = minmax_search(s, c, a.rules);
  } catch (const RuleViolation& e) {
    throw InputError(e.what());
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  nlohmann::ordered_json out = {{"to_move", s.to_move()},
                                {"best_move", {{"from", r.best_move.from}, {"to", r.best_move.to}}},
                                {"score", r.score},
                                {"depth", r.depth_reached},
                                {"nodes_visited", r.nodes_visited},
                                {"elapsed_ms", ms}};
  std::cout << out.dump() << "\n";
  return kOk;
}

// ---- verify

struct VerifyArgs {
  std::string in;
  std::string mode = "y";
  std::string helper = "lowest-opponent";
  std::string report;
};

int run_verify(const VerifyArgs& a) {
  const auto games = load_records(a.in);
  const EntryDomain mode = a.mode == "q" ? EntryDomain::q : EntryDomain::y;
  const HelperChoice helper =
      a.helper == "unit-coefficient" ? HelperChoice::unit_coefficient : HelperChoice::lowest_opponent;
  if (mode == EntryDomain::y) {
    for (std::size_t g = 0; g < games.size(); ++g) {
      const auto& alpha = games[g].board().alphabet();
      if (alpha.t != kXiguaAlphabet.t || alpha.d != kXiguaAlphabet.d) {
        throw InputError("game " + std::to_string(g) + " is not tri-valued; use --mode q");
      }
    }
  }
  std::ofstream report;
  if (!a.report.empty()) {
    report.open(a.report, std::ios::trunc);
    if (!report) throw InputError("cannot open '" + a.report + "' for writing");
  }
  std::size_t moves = 0, passed = 0;
  for (std::size_t g = 0; g < games.size(); ++g) {
    const auto& rec = games[g];
    for (std::size_t i = 0; i < rec.moves.size(); ++i) {
      const auto v = verify_move(rec.states[i], rec.moves[i], rec.states[i + 1], mode, helper);
      ++moves;
      passed += v.passed();
      if (report.is_open()) {
        nlohmann::ordered_json row = {{"game", g},
                                      {"ply", i},
                                      {"from", rec.moves[i].move.from},
                                      {"to", rec.moves[i].move.to},
                                      {"domain", std::string(domain_name(v.domain))},
                                      {"nnz", v.matrix_nnz},
                                      {"in_D", v.in_D},
                                      {"exact_match", v.exact_match},
                                      {"entries_ok", v.entries_ok},
                                      {"sparsity_ok", v.sparsity_ok}};
        if (!v.error.empty()) row["error"] = v.error;
        report << row.dump() << "\n";
      }
      if (!v.passed() && moves - passed <= 5) {
        std::cerr << "game " << g << " ply " << i << ": verification failed"
                  << (v.error.empty() ? "" : " (" + v.error + ")") << "\n";
      }
    }
  }
  std::cout << "games " << games.size() << "  moves " << moves << "  passed " << passed << "  mode "
            << domain_name(mode) << "\n";
  return passed == moves ? kOk : kFailed;
}

// ---- export-dataset

struct ExportArgs {
  std::string in;
  std::string format = "csv";
  std::string out = "-";
  std::string draws = "exclude";
};

int run_export(const ExportArgs& a) {
  const auto games = load_records(a.in);
  const auto samples =
      generate_dataset(games, a.draws == "loss" ? DrawPolicy::label_loss : DrawPolicy::exclude);
  if (samples.empty()) throw InputError("no samples: every game was drawn");
  const DatasetFormat format = a.format == "jsonl" ? DatasetFormat::jsonl : DatasetFormat::csv;
  with_output(a.out, [&](std::ostream& out) { export_dataset(out, samples, format); });
  std::size_t positives = 0;
  for (const auto& s : samples) positives += s.label == 1;
  (a.out == "-" ? std::cerr : std::cout)
      << "rows " << samples.size() << "  positive " << positives << "  negative "
      << samples.size() - positives << "\n";
  return kOk;
}

// ---- metrics

struct MetricsArgs {
  std::string in;
  double threshold = 0.5;
};

int run_metrics(const MetricsArgs& a) {
  std::ifstream in(a.in);
  if (!in) throw InputError("cannot open '" + a.in + "'");
  std::vector<int> labels;
  std::vector<double> scores;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string label, score;
    if (!std::getline(row, label, ',') || !std::getline(row, score)) {
      throw InputError("line " + std::to_string(number) + ": expected label,score");
    }
    try {
      std::size_t used = 0;
      const int l = std::stoi(label, &used);
      labels.push_back(l);
      scores.push_back(std::stod(score));
    } catch (const std::exception&) {
      if (number == 1) continue;  // header
      throw InputError("line " + std::to_string(number) + ": expected label,score");
    }
  }
  try {
    std::cout << metrics_to_json(compute_metrics(labels, scores, a.threshold)).dump(2) << "\n";
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
  return kOk;
}

// ---- board

int run_board(const std::string& out, const std::string& format) {
  with_output(out, [&](std::ostream& o) {
    if (format == "pairs") {
      for (auto [a, b] : xigua_board().directed_pairs()) o << a << "," << b << "\n";
    } else {
      o << board_to_json(xigua_board()).dump(2) << "\n";
    }
  });
  return kOk;
}

// ---- algebra

struct AlgebraArgs {
  int dim = 5;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  int modulus = 3;
  bool rational = false;
};

int run_algebra(const AlgebraArgs& a) {
  const AlgebraReport report = a.rational ? check_ring_axioms_rational(a.dim, a.samples, a.seed)
                                          : check_ring_axioms(a.dim, a.modulus, a.samples, a.seed);
  nlohmann::ordered_json out = {{"ring_axioms", report_to_json(report)}};
  bool ok = report.all_axioms_hold() && (a.dim < 2 || report.noncommutative);
  if (a.dim >= 2) {
    const NonClosureReport nc = nonclosure_witnesses(a.dim);
    out["nonclosure"] = report_to_json(nc);
    ok = ok && nc.valid();
  }
  out["passed"] = ok;
  std::cout << out.dump(2) << "\n";
  return ok ? kOk : kFailed;
}

// ---- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string archive;
  int depth = 2;
  std::uint64_t seed = 0;
  bool tiebreak = false;
  RuleConfig rules;
};

int run_serve(ServeArgs a) {
  if (a.archive.empty()) {
    if (const char* env = std::getenv("XIGUA_ARCHIVE")) a.archive = env;
  }
  ServiceConfig config;
  config.archive_path = a.archive;
  config.rules = a.rules;
  config.engine.depth = a.depth;
  config.engine.seed = a.seed;
  config.engine.random_tiebreak = a.tiebreak;
  GameService service(config);
  std::cerr << "listening on http://" << a.host << ":" << a.port
            << (a.archive.empty() ? "" : "  archive " + a.archive) << "\n";
  serve(service, a.host, a.port);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Xi Gua Qi engine: self-play, search, move-matrix verification, datasets"};
  app.require_subcommand(1);
  int status = kOk;
  std::function<int()> action;

  const std::vector<std::string> policies{"random", "greedy", "minmax"};

  SelfplayArgs sp;
  auto* selfplay = app.add_subcommand("selfplay", "Play engine games and write JSONL records");
  selfplay->add_option("--games,-n", sp.games, "Number of games");
  selfplay->add_option("--policy-a", sp.policy_a, "Red policy")->check(CLI::IsMember(policies));
  selfplay->add_option("--policy-b", sp.policy_b, "Yellow policy")->check(CLI::IsMember(policies));
  selfplay->add_option("--depth", sp.depth, "Search depth for both sides")->check(CLI::Range(1, 8));
  selfplay->add_option("--depth-a", sp.depth_a, "Red search depth")->check(CLI::Range(1, 8));
  selfplay->add_option("--depth-b", sp.depth_b, "Yellow search depth")->check(CLI::Range(1, 8));
  selfplay->add_option("--seed", sp.seed, "Base seed; game i uses seed + i");
  selfplay->add_option("--out,-o", sp.out, "Output JSONL file ('-' for stdout)");
  selfplay->add_option("--jobs,-j", sp.jobs, "Worker threads")->check(CLI::PositiveNumber);
  selfplay->add_flag("--random-tiebreak", sp.tiebreak, "Break equal root scores at random (seeded)");
  selfplay->add_option("--board", sp.board, "Board JSON file (default: Xi Gua Qi)");
  selfplay->add_option("--placement", sp.placement, "Start position as JSON {\"node\": value}");
  add_rule_flags(selfplay, sp.rules);
  selfplay->callback([&] { action = [&] { return run_selfplay(sp); }; });

  SolveArgs so;
  auto* solve = app.add_subcommand("solve", "Search one position and print the best move");
  solve->add_option("--placement", so.placement, "JSON object {\"node\": value}; default start position");
  solve->add_option("--to-move", so.to_move, "Side to move with --placement")->check(CLI::Range(1, 2));
  solve->add_option("--in", so.in, "Take the position from a record file instead");
  solve->add_option("--game", so.game, "Record index within --in");
  solve->add_option("--ply", so.ply, "Ply within the game (default: final position)");
  solve->add_option("--depth", so.depth, "Search depth")->check(CLI::Range(1, 8));
  solve->add_flag("--no-alpha-beta", so.no_alpha_beta, "Disable pruning");
  solve->add_flag("--no-table", so.no_table, "Disable the transposition table");
  add_rule_flags(solve, so.rules);
  solve->callback([&] { action = [&] { return run_solve(so); }; });

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Check every recorded move against its transition matrix");
  verify->add_option("--in", ve.in, "Record JSONL file")->required();
  verify->add_option("--mode", ve.mode, "y: integer {-1,0,1} matrices; q: rational matrices")
      ->check(CLI::IsMember({"y", "q"}));
  verify->add_option("--helper", ve.helper, "Helper column choice for q mode")
      ->check(CLI::IsMember({"lowest-opponent", "unit-coefficient"}));
  verify->add_option("--report", ve.report, "Per-move verification JSONL");
  verify->callback([&] { action = [&] { return run_verify(ve); }; });

  ExportArgs ex;
  auto* exporter = app.add_subcommand("export-dataset", "Turn records into 85-bit labelled samples");
  exporter->add_option("--in", ex.in, "Record JSONL file")->required();
  exporter->add_option("--format", ex.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  exporter->add_option("--out,-o", ex.out, "Output file ('-' for stdout)");
  exporter->add_option("--draws", ex.draws, "exclude drawn games, or label them as losses")
      ->check(CLI::IsMember({"exclude", "loss"}));
  exporter->callback([&] { action = [&] { return run_export(ex); }; });

  MetricsArgs me;
  auto* metrics = app.add_subcommand("metrics", "Confusion-matrix metrics and AUC for label,score rows");
  metrics->add_option("--in", me.in, "CSV of label,score (optional header)")->required();
  metrics->add_option("--threshold", me.threshold, "Predict positive when score >= threshold");
  metrics->callback([&] { action = [&] { return run_metrics(me); }; });

  std::string board_out = "-";
  std::string board_format = "json";
  auto* board = app.add_subcommand("board", "Print the Xi Gua Qi board");
  board->add_option("--out,-o", board_out, "Output file ('-' for stdout)");
  board->add_option("--format", board_format, "json or pairs")->check(CLI::IsMember({"json", "pairs"}));
  board->callback([&] { action = [&] { return run_board(board_out, board_format); }; });

  AlgebraArgs al;
  auto* algebra = app.add_subcommand("algebra", "Ring-axiom and non-closure checks on move matrices");
  algebra->add_option("--dim", al.dim, "Matrix dimension")->check(CLI::Range(1, 64));
  algebra->add_option("--samples", al.samples, "Random triples to test");
  algebra->add_option("--seed", al.seed, "RNG seed");
  algebra->add_option("--modulus", al.modulus, "Check over Z_m")->check(CLI::Range(2, 1000));
  algebra->add_flag("--rational", al.rational, "Check over Q instead");
  algebra->callback([&] { action = [&] { return run_algebra(al); }; });

  ServeArgs se;
  auto* server = app.add_subcommand("serve", "Run the HTTP JSON game service");
  server->add_option("--host", se.host, "Bind address");
  server->add_option("--port", se.port, "Port")->check(CLI::Range(1, 65535));
  server->add_option("--archive", se.archive, "Append finished games here (default $XIGUA_ARCHIVE)");
  server->add_option("--depth", se.depth, "Engine search depth")->check(CLI::Range(1, 6));
  server->add_option("--seed", se.seed, "Engine seed");
  server->add_flag("--random-tiebreak", se.tiebreak, "Engine breaks ties at random");
  add_rule_flags(server, se.rules);
  server->callback([&] { action = [&] { return run_serve(se); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }
  try {
    status = action();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return status;
}
