#include "xigua/dataset.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "xigua/errors.h"

namespace xigua {

CellCode encode_cell(int value) {
  switch (value) {
    case 1: return {0, 1};
    case 2: return {1, 0};
    case 3: return {1, 1};
    default:
      throw ValidationError("cell value " + std::to_string(value) + " has no 2-bit code");
  }
}

int decode_cell(unsigned char hi, unsigned char lo) {
  const int code = (hi << 1) | lo;
  if (code == 0 || hi > 1 || lo > 1) throw ValidationError("invalid 2-bit cell code");
  return code == 1 ? 1 : code == 2 ? 2 : 3;
}

FeatureVector encode_features(const GameState& before, const GameState& after, int mover) {
  if (!(before.board() == xigua_board()) || !(after.board() == xigua_board())) {
    throw ValidationError("feature encoding needs two states on the Xi Gua Qi board");
  }
  if (mover != 1 && mover != 2) throw ValidationError("mover must be 1 or 2");
  FeatureVector f{};
  std::size_t bit = 0;
  for (const GameState* s : {&before, &after}) {
    for (int v : s->cells()) {
      const CellCode c = encode_cell(v);
      f[bit++] = c.hi;
      f[bit++] = c.lo;
    }
  }
  f[bit] = mover == 1 ? 1 : 0;
  return f;
}

std::vector<int> decode_state_half(const FeatureVector& features, std::size_t offset) {
  if (offset != 0 && offset != 42) throw ValidationError("state half offset must be 0 or 42");
  std::vector<int> cells;
  for (std::size_t i = 0; i < 21; ++i) {
    cells.push_back(decode_cell(features[offset + 2 * i], features[offset + 2 * i + 1]));
  }
  return cells;
}

std::vector<LabeledSample> generate_dataset(const std::vector<GameRecord>& records,
                                            DrawPolicy draws) {
  std::vector<LabeledSample> out;
  for (std::size_t g = 0; g < records.size(); ++g) {
    const GameRecord& r = records[g];
    const bool decisive = r.outcome.kind == Status::Kind::win;
    if (!decisive && (r.outcome.kind != Status::Kind::draw || draws == DrawPolicy::exclude)) {
      continue;
    }
    for (std::size_t i = 0; i < r.moves.size(); ++i) {
      const GameState& before = r.states[i];
      LabeledSample s;
      s.features = encode_features(before, r.states[i + 1], before.to_move());
      s.label = decisive && r.outcome.winner == before.to_move() ? 1 : 0;
      s.game_id = g;
      s.ply = static_cast<int>(i);
      out.push_back(s);
    }
  }
  return out;
}

void export_dataset(std::ostream& out, std::vector<LabeledSample> samples, DatasetFormat format) {
  std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return a.game_id != b.game_id ? a.game_id < b.game_id : a.ply < b.ply;
  });
  if (format == DatasetFormat::csv) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) out << 'f' << i << ',';
    out << "label\n";
    for (const auto& s : samples) {
      for (unsigned char b : s.features) out << static_cast<int>(b) << ',';
      out << s.label << '\n';
    }
    return;
  }
  for (const auto& s : samples) {
    nlohmann::ordered_json j;
    j["game_id"] = s.game_id;
    j["ply"] = s.ply;
    j["features"] = std::vector<int>(s.features.begin(), s.features.end());
    j["label"] = s.label;
    out << j.dump() << '\n';
  }
}

void export_dataset_file(const std::string& path, const std::vector<LabeledSample>& samples,
                         DatasetFormat format) {
  if (samples.empty()) throw ValidationError("refusing to export an empty dataset to '" + path + "'");
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  export_dataset(out, samples, format);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

namespace {

unsigned char parse_bit(long v) {
  if (v != 0 && v != 1) throw ValidationError("feature values must be 0 or 1");
  return static_cast<unsigned char>(v);
}

}  // namespace

std::vector<LabeledSample> import_dataset(std::istream& in, DatasetFormat format) {
  std::vector<LabeledSample> out;
  std::string line;
  if (format == DatasetFormat::csv) {
    if (!std::getline(in, line) || line.rfind("f0,", 0) != 0) {
      throw ValidationError("CSV dataset must start with the f0..f84,label header");
    }
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ss(line);
      std::string cell;
      std::vector<long> values;
      while (std::getline(ss, cell, ',')) values.push_back(std::stol(cell));
      if (values.size() != kFeatureCount + 1) {
        throw ValidationError("CSV row has " + std::to_string(values.size()) + " columns");
      }
      LabeledSample s;
      for (std::size_t i = 0; i < kFeatureCount; ++i) s.features[i] = parse_bit(values[i]);
      s.label = parse_bit(values.back());
      s.game_id = out.size();
      out.push_back(s);
    }
    return out;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    const auto bits = j.at("features").get<std::vector<long>>();
    if (bits.size() != kFeatureCount) {
      throw ValidationError("feature vector has " + std::to_string(bits.size()) + " entries");
    }
    LabeledSample s;
    for (std::size_t i = 0; i < kFeatureCount; ++i) s.features[i] = parse_bit(bits[i]);
    s.label = parse_bit(j.at("label").get<long>());
    s.game_id = j.at("game_id").get<std::size_t>();
    s.ply = j.at("ply").get<int>();
    out.push_back(s);
  }
  return out;
}

}  // namespace xigua
