#include "xigua/record.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "xigua/errors.h"

namespace xigua {

namespace {

nlohmann::ordered_json rules_to_json(const RuleConfig& r) {
  return {{"allow_suicide", r.allow_suicide},
          {"repetition_limit", r.repetition_limit},
          {"ply_cap", r.ply_cap},
          {"min_pieces", r.min_pieces}};
}

RuleConfig rules_from_json(const nlohmann::json& j) {
  RuleConfig r;
  r.allow_suicide = j.value("allow_suicide", r.allow_suicide);
  r.repetition_limit = j.value("repetition_limit", r.repetition_limit);
  r.ply_cap = j.value("ply_cap", r.ply_cap);
  r.min_pieces = j.value("min_pieces", r.min_pieces);
  return r;
}

std::string outcome_name(const Status& s) {
  switch (s.kind) {
    case Status::Kind::win: return "win";
    case Status::Kind::draw: return "draw";
    case Status::Kind::ongoing: return "ongoing";
  }
  return "ongoing";
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  std::ofstream out(path, mode);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

// The stated outcome must be what the rules say about the final position, and
// no move may follow a finished game.
void check_outcome(const GameRecord& record) {
  HashHistory history;
  for (std::size_t i = 0; i < record.states.size(); ++i) {
    const GameState& s = record.states[i];
    ++history[s.hash()];
    const Status status = terminal_status(s, history, record.rules);
    if (i + 1 < record.states.size()) {
      if (!status.ongoing()) {
        throw ValidationError("ply " + std::to_string(i) + ": move played after the game ended");
      }
    } else if (!(status == record.outcome)) {
      throw ValidationError("stated outcome disagrees with the final position");
    }
  }
}

}  // namespace

nlohmann::ordered_json record_to_json(const GameRecord& record) {
  const GameState& start = record.initial();
  nlohmann::ordered_json j;
  j["seed"] = record.seed;
  j["policies"] = record.policies;
  nlohmann::ordered_json placement = nlohmann::ordered_json::array();
  for (int i = 0; i < start.board().size(); ++i) {
    if (!start.empty_at(i)) placement.push_back({i, start.cell(i)});
  }
  j["placement"] = std::move(placement);
  j["to_move"] = start.to_move();
  nlohmann::ordered_json moves = nlohmann::ordered_json::array();
  for (const auto& m : record.moves) {
    nlohmann::ordered_json mj = {{"from", m.move.from}, {"to", m.move.to},
                                 {"captures", m.captures.indices}};
    if (!m.captures.self_indices.empty()) mj["self_captures"] = m.captures.self_indices;
    moves.push_back(std::move(mj));
  }
  j["moves"] = std::move(moves);
  j["outcome"] = outcome_name(record.outcome);
  j["winner"] = record.outcome.kind == Status::Kind::win ? nlohmann::ordered_json(record.outcome.winner)
                                                          : nlohmann::ordered_json(nullptr);
  j["termination_reason"] = std::string(termination_name(record.outcome.reason));
  if (!(start.board() == xigua_board())) {
    j["board"] = nlohmann::ordered_json::parse(board_to_json(start.board()).dump());
  }
  if (!(record.rules == RuleConfig{})) j["rules"] = rules_to_json(record.rules);
  return j;
}

std::string record_to_line(const GameRecord& record) { return record_to_json(record).dump(); }

GameRecord record_from_json(const nlohmann::json& j) {
  try {
    BoardPtr board = j.contains("board") ? std::make_shared<const BoardGraph>(board_from_json(j["board"]))
                                         : xigua_board_ptr();
    RuleConfig rules = j.contains("rules") ? rules_from_json(j["rules"]) : RuleConfig{};
    std::vector<int> cells(static_cast<std::size_t>(board->size()),
                           board->alphabet().empty_value());
    for (const auto& entry : j.at("placement")) {
      const int node = entry.at(0).get<int>();
      if (node < 0 || node >= board->size()) {
        throw ValidationError("placement node " + std::to_string(node) + " is off the board");
      }
      cells[static_cast<std::size_t>(node)] = entry.at(1).get<int>();
    }
    GameState start(board, std::move(cells), j.at("to_move").get<int>(), 0);

    std::vector<PlayedMove> moves;
    for (const auto& mj : j.at("moves")) {
      PlayedMove pm;
      pm.move = {mj.at("from").get<int>(), mj.at("to").get<int>()};
      pm.captures.indices = mj.at("captures").get<std::vector<int>>();
      if (mj.contains("self_captures")) {
        pm.captures.self_indices = mj["self_captures"].get<std::vector<int>>();
      }
      moves.push_back(std::move(pm));
    }
    GameRecord record = replay(start, moves, rules);
    record.seed = j.at("seed").get<std::uint64_t>();
    record.policies = j.at("policies").get<std::vector<std::string>>();

    const std::string outcome = j.at("outcome").get<std::string>();
    Status& s = record.outcome;
    if (outcome == "win") {
      s.kind = Status::Kind::win;
      s.winner = j.at("winner").get<int>();
      if (s.winner != 1 && s.winner != 2) throw ValidationError("winner must be 1 or 2");
    } else if (outcome == "draw") {
      s.kind = Status::Kind::draw;
    } else if (outcome == "ongoing") {
      s.kind = Status::Kind::ongoing;
    } else {
      throw ValidationError("unknown outcome '" + outcome + "'");
    }
    s.reason = termination_from_name(j.at("termination_reason").get<std::string>());
    check_outcome(record);
    return record;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed game record: ") + e.what());
  } catch (const RuleViolation& e) {
    throw ValidationError(std::string("game record contains an illegal move: ") + e.what());
  }
}

std::vector<GameRecord> read_records(std::istream& in) {
  std::vector<GameRecord> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw RecordParseError(number, e.what());
    } catch (const ValidationError& e) {
      throw RecordParseError(number, e.what());
    }
  }
  return out;
}

std::vector<GameRecord> read_records_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return read_records(in);
}

void write_records(std::ostream& out, const std::vector<GameRecord>& records) {
  for (const auto& r : records) out << record_to_line(r) << '\n';
}

void write_records_file(const std::string& path, const std::vector<GameRecord>& records) {
  auto out = open_out(path, std::ios::trunc);
  write_records(out, records);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

void append_record_file(const std::string& path, const GameRecord& record) {
  auto out = open_out(path, std::ios::app);
  out << record_to_line(record) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace xigua
