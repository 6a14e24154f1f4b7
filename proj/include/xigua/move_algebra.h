#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "xigua/rules.h"

namespace xigua {

using Rational = mpq_class;

// Entry domain of a transition matrix: Y = {-1, 0, 1} or the rationals.
enum class EntryDomain { y, q };

std::string_view domain_name(EntryDomain d);

// Sparse n x n matrix over the rationals, stored row by row with column-sorted
// nonzero entries. Y-domain matrices reject entries outside {-1, 0, 1}.
class TransitionMatrix {
 public:
  struct Entry {
    int col;
    Rational value;
  };

  explicit TransitionMatrix(int n, EntryDomain domain = EntryDomain::q);

  static TransitionMatrix identity(int n, EntryDomain domain = EntryDomain::y);
  static TransitionMatrix zero(int n, EntryDomain domain = EntryDomain::y);

  int size() const { return n_; }
  EntryDomain domain() const { return domain_; }

  Rational at(int row, int col) const;
  // Setting zero removes the entry.
  void set(int row, int col, const Rational& value);
  const std::vector<Entry>& row(int r) const;
  std::size_t nnz() const;
  std::size_t row_nnz(int r) const { return row(r).size(); }

  bool entries_in_y() const;
  // Largest reduced denominator over all entries (1 for an empty matrix).
  mpz_class max_denominator() const;

  TransitionMatrix transpose() const;
  TransitionMatrix operator-() const;
  friend TransitionMatrix operator+(const TransitionMatrix& a, const TransitionMatrix& b);
  friend TransitionMatrix operator*(const TransitionMatrix& a, const TransitionMatrix& b);
  bool operator==(const TransitionMatrix& other) const;

  std::string to_string() const;

 private:
  void check_index(int row, int col) const;

  int n_;
  EntryDomain domain_;
  std::vector<std::vector<Entry>> rows_;
};

struct MatrixClass {
  bool is_identity = false;
  bool is_zero = false;
  bool has_zero_row = false;
  bool in_D = false;
};

MatrixClass classify_matrix(const TransitionMatrix& m);

// Exact product m * cells. Throws ValidationError on dimension mismatch.
std::vector<Rational> apply_matrix(const TransitionMatrix& m, std::span<const int> cells);

// How the Q-construction picks the helper cell s.
enum class HelperChoice {
  // Lowest-index cell holding an opponent piece.
  lowest_opponent,
  // Lowest-index cell whose value makes the coefficient exactly +-1, falling
  // back to lowest_opponent. Keeps tri-valued-per-side alphabets inside Y.
  unit_coefficient,
};

// Move matrix with entries in {-1, 0, 1} for tri-valued (t=1, d=2) boards.
// `captures` must be the capture set reported by apply_move for this move.
TransitionMatrix build_transition_matrix_y(const GameState& before, Move move,
                                           const CaptureSet& captures);

// Move matrix over Q for any alphabet.
TransitionMatrix build_transition_matrix_q(const GameState& before, Move move,
                                           const CaptureSet& captures,
                                           HelperChoice helper = HelperChoice::lowest_opponent);

// Post-move occupancy implied by (before, move, captures).
std::vector<int> expected_successor(const GameState& before, Move move,
                                    const CaptureSet& captures);

struct MoveVerification {
  EntryDomain domain = EntryDomain::y;
  std::size_t matrix_nnz = 0;
  bool in_D = false;
  bool exact_match = false;
  // Entries in Y (y mode) or reduced denominators within [1, d] (q mode).
  bool entries_ok = false;
  // At most two nonzeros in rows p, q and captured rows; exactly one elsewhere.
  bool sparsity_ok = false;
  std::string error;

  bool passed() const { return in_D && exact_match && entries_ok && sparsity_ok; }
};

// Builds the matrix for one played move and compares M*a with `after`.
MoveVerification verify_move(const GameState& before, const PlayedMove& played,
                             const GameState& after, EntryDomain mode,
                             HelperChoice helper = HelperChoice::lowest_opponent);

}  // namespace xigua
