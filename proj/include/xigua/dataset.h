#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "xigua/rules.h"

namespace xigua {

inline constexpr std::size_t kFeatureCount = 85;
using FeatureVector = std::array<unsigned char, kFeatureCount>;

// Two bits per lattice, high bit first: red 01, yellow 10, empty 11. 00 is
// never produced.
struct CellCode {
  unsigned char hi;
  unsigned char lo;
};
CellCode encode_cell(int value);
int decode_cell(unsigned char hi, unsigned char lo);

// Bits 0-41 describe `before`, 42-83 `after`, bit 84 the mover (red 1,
// yellow 0). Both states must be on the Xi Gua Qi board.
FeatureVector encode_features(const GameState& before, const GameState& after, int mover);

// Inverse of one 42-bit half (offset 0 or 42).
std::vector<int> decode_state_half(const FeatureVector& features, std::size_t offset);

struct LabeledSample {
  FeatureVector features{};
  int label = 0;  // 1 when the mover's side won the game
  std::size_t game_id = 0;
  int ply = 0;

  bool operator==(const LabeledSample&) const = default;
};

enum class DrawPolicy { exclude, label_loss };

// One sample per move of every decisive game; game_id is the record index.
std::vector<LabeledSample> generate_dataset(const std::vector<GameRecord>& records,
                                            DrawPolicy draws = DrawPolicy::exclude);

enum class DatasetFormat { csv, jsonl };

// Rows sorted by (game_id, ply). CSV header is f0,...,f84,label.
void export_dataset(std::ostream& out, std::vector<LabeledSample> samples, DatasetFormat format);
void export_dataset_file(const std::string& path, const std::vector<LabeledSample>& samples,
                         DatasetFormat format);

// CSV has no provenance columns: imported game_id/ply are the row index and 0.
std::vector<LabeledSample> import_dataset(std::istream& in, DatasetFormat format);

}  // namespace xigua
