#include "xigua/move_algebra.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "xigua/errors.h"

namespace xigua {

std::string_view domain_name(EntryDomain d) { return d == EntryDomain::y ? "Y" : "Q"; }

namespace {

bool in_y(const Rational& v) { return v == 0 || v == 1 || v == -1; }

}  // namespace

TransitionMatrix::TransitionMatrix(int n, EntryDomain domain)
    : n_(n), domain_(domain), rows_(static_cast<std::size_t>(n > 0 ? n : 0)) {
  if (n < 1) throw ValidationError("matrix dimension must be positive");
}

TransitionMatrix TransitionMatrix::identity(int n, EntryDomain domain) {
  TransitionMatrix m(n, domain);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

TransitionMatrix TransitionMatrix::zero(int n, EntryDomain domain) {
  return TransitionMatrix(n, domain);
}

void TransitionMatrix::check_index(int row, int col) const {
  if (row < 0 || row >= n_ || col < 0 || col >= n_) {
    throw std::out_of_range("matrix index (" + std::to_string(row) + "," + std::to_string(col) +
                            ") outside " + std::to_string(n_) + "x" + std::to_string(n_));
  }
}

Rational TransitionMatrix::at(int row, int col) const {
  check_index(row, col);
  const auto& r = rows_[static_cast<std::size_t>(row)];
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const Entry& e, int c) { return e.col < c; });
  if (it != r.end() && it->col == col) return it->value;
  return 0;
}

void TransitionMatrix::set(int row, int col, const Rational& value) {
  check_index(row, col);
  Rational v = value;
  v.canonicalize();
  if (domain_ == EntryDomain::y && !in_y(v)) {
    throw ValidationError("entry " + v.get_str() + " at (" + std::to_string(row) + "," +
                          std::to_string(col) + ") is outside Y = {-1, 0, 1}");
  }
  auto& r = rows_[static_cast<std::size_t>(row)];
  auto it = std::lower_bound(r.begin(), r.end(), col,
                             [](const Entry& e, int c) { return e.col < c; });
  const bool present = it != r.end() && it->col == col;
  if (v == 0) {
    if (present) r.erase(it);
  } else if (present) {
    it->value = v;
  } else {
    r.insert(it, Entry{col, v});
  }
}

const std::vector<TransitionMatrix::Entry>& TransitionMatrix::row(int r) const {
  check_index(r, 0);
  return rows_[static_cast<std::size_t>(r)];
}

std::size_t TransitionMatrix::nnz() const {
  std::size_t total = 0;
  for (const auto& r : rows_) total += r.size();
  return total;
}

bool TransitionMatrix::entries_in_y() const {
  for (const auto& r : rows_) {
    for (const auto& e : r) {
      if (!in_y(e.value)) return false;
    }
  }
  return true;
}

mpz_class TransitionMatrix::max_denominator() const {
  mpz_class best = 1;
  for (const auto& r : rows_) {
    for (const auto& e : r) best = std::max(best, mpz_class(e.value.get_den()));
  }
  return best;
}

TransitionMatrix TransitionMatrix::transpose() const {
  TransitionMatrix t(n_, domain_);
  for (int i = 0; i < n_; ++i) {
    for (const auto& e : rows_[static_cast<std::size_t>(i)]) {
      t.rows_[static_cast<std::size_t>(e.col)].push_back(Entry{i, e.value});
    }
  }
  return t;
}

TransitionMatrix TransitionMatrix::operator-() const {
  TransitionMatrix out = *this;
  for (auto& r : out.rows_) {
    for (auto& e : r) e.value = -e.value;
  }
  return out;
}

namespace {

EntryDomain result_domain(const TransitionMatrix& a, const TransitionMatrix& b,
                          const std::vector<std::map<int, Rational>>& rows) {
  if (a.domain() != EntryDomain::y || b.domain() != EntryDomain::y) return EntryDomain::q;
  for (const auto& r : rows) {
    for (const auto& [c, v] : r) {
      if (!in_y(v)) return EntryDomain::q;
    }
  }
  return EntryDomain::y;
}

TransitionMatrix from_rows(int n, EntryDomain domain,
                           const std::vector<std::map<int, Rational>>& rows) {
  TransitionMatrix m(n, domain);
  for (int i = 0; i < n; ++i) {
    for (const auto& [c, v] : rows[static_cast<std::size_t>(i)]) m.set(i, c, v);
  }
  return m;
}

}  // namespace

TransitionMatrix operator+(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.n_ != b.n_) throw ValidationError("matrix sum needs equal dimensions");
  std::vector<std::map<int, Rational>> rows(static_cast<std::size_t>(a.n_));
  for (int i = 0; i < a.n_; ++i) {
    auto& out = rows[static_cast<std::size_t>(i)];
    for (const auto& e : a.rows_[static_cast<std::size_t>(i)]) out[e.col] += e.value;
    for (const auto& e : b.rows_[static_cast<std::size_t>(i)]) out[e.col] += e.value;
  }
  return from_rows(a.n_, result_domain(a, b, rows), rows);
}

TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b) {
  if (a.n_ != b.n_) throw ValidationError("matrix product needs equal dimensions");
  std::vector<std::map<int, Rational>> rows(static_cast<std::size_t>(a.n_));
  for (int i = 0; i < a.n_; ++i) {
    auto& out = rows[static_cast<std::size_t>(i)];
    for (const auto& ea : a.rows_[static_cast<std::size_t>(i)]) {
      for (const auto& eb : b.rows_[static_cast<std::size_t>(ea.col)]) {
        out[eb.col] += ea.value * eb.value;
      }
    }
  }
  return from_rows(a.n_, result_domain(a, b, rows), rows);
}

bool TransitionMatrix::operator==(const TransitionMatrix& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& x = rows_[i];
    const auto& y = other.rows_[i];
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
      if (x[k].col != y[k].col || x[k].value != y[k].value) return false;
    }
  }
  return true;
}

std::string TransitionMatrix::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << '\n';
  }
  return os.str();
}

MatrixClass classify_matrix(const TransitionMatrix& m) {
  MatrixClass c;
  c.is_zero = m.nnz() == 0;
  c.is_identity = true;
  for (int i = 0; i < m.size(); ++i) {
    const auto& r = m.row(i);
    if (r.empty()) c.has_zero_row = true;
    if (r.size() != 1 || r[0].col != i || r[0].value != 1) c.is_identity = false;
  }
  c.in_D = !c.is_identity && !c.is_zero && !c.has_zero_row;
  return c;
}

std::vector<Rational> apply_matrix(const TransitionMatrix& m, std::span<const int> cells) {
  if (static_cast<int>(cells.size()) != m.size()) {
    throw ValidationError("matrix is " + std::to_string(m.size()) + "x" +
                          std::to_string(m.size()) + " but the vector has " +
                          std::to_string(cells.size()) + " entries");
  }
  std::vector<Rational> out(cells.size());
  for (int i = 0; i < m.size(); ++i) {
    Rational acc = 0;
    for (const auto& e : m.row(i)) acc += e.value * cells[static_cast<std::size_t>(e.col)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::vector<int> expected_successor(const GameState& before, Move move,
                                    const CaptureSet& captures) {
  const int empty = before.board().alphabet().empty_value();
  std::vector<int> b(before.cells().begin(), before.cells().end());
  b.at(static_cast<std::size_t>(move.to)) = b.at(static_cast<std::size_t>(move.from));
  b.at(static_cast<std::size_t>(move.from)) = empty;
  for (int k : captures.indices) b.at(static_cast<std::size_t>(k)) = empty;
  for (int k : captures.self_indices) b.at(static_cast<std::size_t>(k)) = empty;
  return b;
}

namespace {

void check_move_shape(const GameState& before, Move move, const CaptureSet& captures) {
  const BoardGraph& board = before.board();
  const int mover = before.to_move();
  if (move.from < 0 || move.from >= board.size() || move.to < 0 || move.to >= board.size() ||
      !before.owned_by(move.from, mover) || !before.empty_at(move.to)) {
    throw RuleViolation("transition matrix requested for a move that is not legal here");
  }
  for (int k : captures.indices) {
    if (k == move.from || k == move.to || !before.owned_by(k, opponent_of(mover))) {
      throw RuleViolation("capture index " + std::to_string(k) + " is not an opponent piece");
    }
  }
  for (int k : captures.self_indices) {
    if (k == move.from || (k != move.to && !before.owned_by(k, mover))) {
      throw RuleViolation("self-capture index " + std::to_string(k) + " is not a mover piece");
    }
  }
}

std::optional<int> lowest_cell(const GameState& s, auto&& pred) {
  for (int i = 0; i < s.board().size(); ++i) {
    if (pred(i)) return i;
  }
  return std::nullopt;
}

void ensure_reproduces(const TransitionMatrix& m, const GameState& before, Move move,
                       const CaptureSet& captures) {
  const auto b = expected_successor(before, move, captures);
  const auto got = apply_matrix(m, before.cells());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (got[i] != b[i]) {
      throw ConsistencyError("row " + std::to_string(i) + " of the move matrix yields " +
                             got[i].get_str() + ", expected " + std::to_string(b[i]));
    }
  }
}

// The self-captured pieces of a move ending at q include the piece that just
// landed there; it is cleared through row q, not a capture row.
bool is_landing_cell(Move move, int k) { return k == move.to; }

}  // namespace

TransitionMatrix build_transition_matrix_y(const GameState& before, Move move,
                                           const CaptureSet& captures) {
  const PieceAlphabet& alphabet = before.board().alphabet();
  if (alphabet != kXiguaAlphabet) {
    throw ValidationError("the Y construction needs a tri-valued board (t=1, d=2)");
  }
  check_move_shape(before, move, captures);
  const int n = before.board().size();
  const int p = move.from;
  const int q = move.to;
  const int mover = before.to_move();
  TransitionMatrix m(n, EntryDomain::y);

  const auto helper = lowest_cell(before, [&](int i) { return before.owned_by(i, opponent_of(mover)); });
  const bool q_cleared = std::find(captures.self_indices.begin(), captures.self_indices.end(), q) !=
                         captures.self_indices.end();
  if (helper) {
    // a_p + a_s = 1 + 2 = 3 (empty); a_q - a_s = 3 - a_s = a_p.
    m.set(p, p, 1);
    m.set(p, *helper, 1);
    if (q_cleared) {
      m.set(q, q, 1);
    } else {
      m.set(q, q, 1);
      m.set(q, *helper, -1);
    }
  } else {
    const auto empty_cell = lowest_cell(before, [&](int i) { return i != q && before.empty_at(i); });
    m.set(p, empty_cell.value_or(q), 1);
    m.set(q, q_cleared ? q : p, 1);
  }
  // Captured opponent piece: a_k + a_p = 3.
  for (int k : captures.indices) {
    m.set(k, k, 1);
    m.set(k, p, 1);
  }
  // Own piece removed by suicide: a_k + a_s = 3.
  for (int k : captures.self_indices) {
    if (is_landing_cell(move, k)) continue;
    if (!helper) throw ConsistencyError("self-capture without any opponent piece on the board");
    m.set(k, k, 1);
    m.set(k, *helper, 1);
  }
  for (int i = 0; i < n; ++i) {
    if (m.row(i).empty()) m.set(i, i, 1);
  }
  ensure_reproduces(m, before, move, captures);
  return m;
}

TransitionMatrix build_transition_matrix_q(const GameState& before, Move move,
                                           const CaptureSet& captures, HelperChoice helper_choice) {
  check_move_shape(before, move, captures);
  const PieceAlphabet& alphabet = before.board().alphabet();
  const int n = before.board().size();
  const int p = move.from;
  const int q = move.to;
  const int mover = before.to_move();
  const int top = alphabet.empty_value();  // d + 1
  const int x = before.cell(p);
  TransitionMatrix m(n, EntryDomain::q);

  const auto opponent_cell =
      lowest_cell(before, [&](int i) { return before.owned_by(i, opponent_of(mover)); });
  // Helper for a row that must add (top - v) to a cell holding v.
  auto unit_helper = [&](int v, int excluded_a, int excluded_b) -> std::optional<int> {
    if (helper_choice != HelperChoice::unit_coefficient) return std::nullopt;
    return lowest_cell(before, [&](int i) {
      return i != excluded_a && i != excluded_b && before.cell(i) == top - v;
    });
  };

  auto s = unit_helper(x, p, q);
  if (!s) s = opponent_cell;
  const bool q_cleared = std::find(captures.self_indices.begin(), captures.self_indices.end(), q) !=
                         captures.self_indices.end();
  if (s) {
    const int u = before.cell(*s);
    m.set(p, p, 1);
    m.set(p, *s, Rational(top - x, u));
    m.set(q, q, 1);
    if (!q_cleared) m.set(q, *s, Rational(x - top, u));
  } else {
    const auto empty_cell = lowest_cell(before, [&](int i) { return i != q && before.empty_at(i); });
    m.set(p, empty_cell.value_or(q), 1);
    m.set(q, q_cleared ? q : p, 1);
  }
  for (std::size_t i = 0; i < captures.indices.size(); ++i) {
    const int k = captures.indices[i];
    const int v = before.cell(k);
    m.set(k, k, 1);
    if (helper_choice == HelperChoice::unit_coefficient && x != top - v) {
      if (auto j = unit_helper(v, k, k)) {
        m.set(k, *j, 1);
        continue;
      }
    }
    m.set(k, p, Rational(top - v, x));
  }
  for (int k : captures.self_indices) {
    if (is_landing_cell(move, k)) continue;
    const int v = before.cell(k);
    auto j = unit_helper(v, k, k);
    if (!j) j = opponent_cell;
    if (!j) throw ConsistencyError("self-capture without any opponent piece on the board");
    m.set(k, k, 1);
    m.set(k, *j, Rational(top - v, before.cell(*j)));
  }
  for (int i = 0; i < n; ++i) {
    if (m.row(i).empty()) m.set(i, i, 1);
  }
  ensure_reproduces(m, before, move, captures);
  return m;
}

MoveVerification verify_move(const GameState& before, const PlayedMove& played,
                             const GameState& after, EntryDomain mode, HelperChoice helper) {
  MoveVerification v;
  v.domain = mode;
  try {
    const TransitionMatrix m = mode == EntryDomain::y
                                   ? build_transition_matrix_y(before, played.move, played.captures)
                                   : build_transition_matrix_q(before, played.move, played.captures,
                                                               helper);
    v.matrix_nnz = m.nnz();
    v.in_D = classify_matrix(m).in_D;
    const auto b = apply_matrix(m, before.cells());
    v.exact_match = b.size() == after.cells().size() &&
                    std::equal(b.begin(), b.end(), after.cells().begin(),
                               [](const Rational& r, int c) { return r == c; });
    if (mode == EntryDomain::y) {
      v.entries_ok = m.entries_in_y();
    } else {
      v.entries_ok = m.max_denominator() <= before.board().alphabet().d;
    }
    std::vector<char> special(static_cast<std::size_t>(m.size()), 0);
    special[static_cast<std::size_t>(played.move.from)] = 1;
    special[static_cast<std::size_t>(played.move.to)] = 1;
    for (int k : played.captures.indices) special[static_cast<std::size_t>(k)] = 1;
    for (int k : played.captures.self_indices) special[static_cast<std::size_t>(k)] = 1;
    v.sparsity_ok = true;
    for (int i = 0; i < m.size(); ++i) {
      const std::size_t nz = m.row_nnz(i);
      if (special[static_cast<std::size_t>(i)] ? (nz < 1 || nz > 2) : nz != 1) {
        v.sparsity_ok = false;
      }
    }
  } catch (const std::exception& e) {
    v.error = e.what();
  }
  return v;
}

}  // namespace xigua
