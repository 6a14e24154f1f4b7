#include <cstdio>
#include <sstream>

#include "doctest.h"
#include "xigua/errors.h"
#include "xigua/record.h"
#include "xigua/solver.h"

using namespace xigua;

namespace {

std::vector<GameRecord> sample_games(std::size_t n, std::uint64_t seed) {
  SearchConfig random;
  random.policy = Policy::random;
  SearchConfig mm;
  mm.depth = 1;
  mm.random_tiebreak = true;
  return self_play(initial_state(), mm, random, {}, n, seed);
}

}  // namespace

TEST_CASE("record lines round-trip byte for byte") {
  for (const auto& g : sample_games(10, 1)) {
    const std::string line = record_to_line(g);
    const GameRecord back = record_from_json(nlohmann::json::parse(line));
    CHECK(record_to_line(back) == line);
    CHECK(back.states.back().hash() == g.states.back().hash());
    CHECK(back.outcome == g.outcome);
    CHECK(back.seed == g.seed);
    CHECK(back.policies == g.policies);
  }
}

TEST_CASE("record layout") {
  const GameRecord g = sample_games(1, 7).front();
  const auto j = record_to_json(g);
  std::vector<std::string> keys;
  for (const auto& item : j.items()) keys.push_back(item.key());
  CHECK(keys == std::vector<std::string>{"seed", "policies", "placement", "to_move", "moves",
                                         "outcome", "winner", "termination_reason"});
  CHECK(j["placement"].size() == 12);
  CHECK(j["moves"].size() == g.moves.size());
  CHECK(j["policies"][0] == "minmax(depth=1)");
  CHECK(j["policies"][1] == "random");
}

TEST_CASE("custom board and rules are stored") {
  auto board = std::make_shared<const BoardGraph>(
      build_custom_board(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, kXiguaAlphabet, "path5"));
  RuleConfig rules;
  rules.ply_cap = 10;
  const GameState start(board, {1, 3, 3, 3, 2}, 1);
  SearchConfig random;
  random.policy = Policy::random;
  const GameRecord g = play_game(start, random, random, rules, 3);
  const auto j = record_to_json(g);
  CHECK(j.contains("board"));
  CHECK(j["rules"]["ply_cap"] == 10);
  const GameRecord back = record_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.board() == *board);
  CHECK(back.rules == rules);
  CHECK(record_to_line(back) == j.dump());
}

TEST_CASE("stream reader reports the offending line") {
  const auto games = sample_games(3, 11);
  std::ostringstream out;
  write_records(out, games);
  std::string text = out.str();

  std::istringstream ok(text + "\n\n");
  CHECK(read_records(ok).size() == 3);

  SUBCASE("not json") {
    std::istringstream in(text + "{oops\n");
    try {
      read_records(in);
      FAIL("expected a parse error");
    } catch (const RecordParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("illegal move") {
    auto j = record_to_json(games[1]);
    j["moves"][0]["to"] = j["moves"][0]["from"];
    std::istringstream in(record_to_line(games[0]) + "\n" + j.dump() + "\n");
    try {
      read_records(in);
      FAIL("expected a parse error");
    } catch (const RecordParseError& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("wrong captures") {
    auto j = record_to_json(games[0]);
    j["moves"][0]["captures"] = {0};
    std::istringstream in(j.dump());
    CHECK_THROWS_AS(read_records(in), RecordParseError);
  }
  SUBCASE("wrong outcome") {
    auto j = record_to_json(games[0]);
    j["outcome"] = "win";
    j["winner"] = 1;
    j["termination_reason"] = "no-pieces";
    std::istringstream in(j.dump());
    CHECK_THROWS_AS(read_records(in), RecordParseError);
  }
  SUBCASE("truncated game keeps a consistent ongoing outcome") {
    auto j = record_to_json(games[0]);
    j["moves"].erase(j["moves"].size() - 1);
    CHECK_THROWS_AS(record_from_json(j), ValidationError);
    j["outcome"] = "ongoing";
    j["winner"] = nullptr;
    j["termination_reason"] = "none";
    CHECK(record_from_json(j).outcome.ongoing());
  }
  SUBCASE("missing field") {
    auto j = record_to_json(games[0]);
    j.erase("placement");
    CHECK_THROWS_AS(record_from_json(j), ValidationError);
  }
}

TEST_CASE("file helpers") {
  const std::string path = "record_test.jsonl";
  const auto games = sample_games(2, 21);
  write_records_file(path, {games[0]});
  append_record_file(path, games[1]);
  const auto back = read_records_file(path);
  REQUIRE(back.size() == 2);
  CHECK(record_to_line(back[1]) == record_to_line(games[1]));
  std::remove(path.c_str());
  CHECK_THROWS(read_records_file("does/not/exist.jsonl"));
}
