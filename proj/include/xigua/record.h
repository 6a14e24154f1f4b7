#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "xigua/rules.h"

namespace xigua {

// One JSONL object per game:
//   {seed, policies, placement:[[node,value],...], to_move,
//    moves:[{from,to,captures:[...]}], outcome, winner, termination_reason}
// `board` and `rules` are written only when they differ from the defaults.
nlohmann::ordered_json record_to_json(const GameRecord& record);
std::string record_to_line(const GameRecord& record);

// Rebuilds the record by replaying its moves; throws ValidationError when the
// moves, captures or outcome disagree with the rules.
GameRecord record_from_json(const nlohmann::json& j);

class RecordParseError : public std::runtime_error {
 public:
  RecordParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Blank lines are skipped; line numbers are 1-based.
std::vector<GameRecord> read_records(std::istream& in);
std::vector<GameRecord> read_records_file(const std::string& path);
void write_records(std::ostream& out, const std::vector<GameRecord>& records);
void write_records_file(const std::string& path, const std::vector<GameRecord>& records);
void append_record_file(const std::string& path, const GameRecord& record);

}  // namespace xigua
