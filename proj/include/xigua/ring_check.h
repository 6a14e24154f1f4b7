#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xigua/move_algebra.h"

namespace xigua {

// Axioms checked on every sampled triple (A, B, C).
inline const std::vector<std::string> kRingAxioms = {
    "additive_commutativity",    // A + B = B + A
    "additive_associativity",    // (A + B) + C = A + (B + C)
    "multiplicative_associativity",  // (AB)C = A(BC)
    "left_distributivity",       // A(B + C) = AB + AC
    "right_distributivity",      // (A + B)C = AC + BC
    "additive_identity",         // A + 0 = A
    "additive_inverse",          // A + (-A) = 0
};

struct AlgebraReport {
  std::string ring;  // "Z3", "Z5", ..., or "Q"
  int dimension = 0;
  std::size_t samples = 0;
  std::vector<std::pair<std::string, std::size_t>> axiom_passes;
  bool noncommutative = false;
  // A pair with AB != BA, rendered entrywise.
  std::vector<std::vector<std::string>> witness_a;
  std::vector<std::vector<std::string>> witness_b;

  bool all_axioms_hold() const;
};

// Random n x n matrices over Z_modulus. Entries are drawn from
// {0, ..., modulus-1}; for modulus 3 this is Y under -1 -> 2.
AlgebraReport check_ring_axioms(int dimension, int modulus, std::size_t samples,
                                std::uint64_t seed);

// Random matrices over Q with numerators in [-bound, bound] and denominators
// in [1, bound].
AlgebraReport check_ring_axioms_rational(int dimension, std::size_t samples,
                                         std::uint64_t seed, int bound = 5);

struct NonClosureReport {
  int dimension = 0;
  // All-ones M: M in D, -M in D, M + (-M) = 0 and 0 not in D.
  MatrixClass m, neg_m, sum;
  bool sum_is_zero = false;
  // Cyclic shift P: P in D, P^T in D, P P^T = I and I not in D.
  MatrixClass perm, perm_t, product;
  bool product_is_identity = false;
  MatrixClass identity;

  bool additive_witness_valid() const {
    return m.in_D && neg_m.in_D && sum_is_zero && sum.is_zero && !sum.in_D;
  }
  bool multiplicative_witness_valid() const {
    return perm.in_D && perm_t.in_D && product_is_identity && product.is_identity &&
           !product.in_D;
  }
  bool valid() const {
    return additive_witness_valid() && multiplicative_witness_valid() && !identity.in_D;
  }
};

// Requires dimension >= 2.
NonClosureReport nonclosure_witnesses(int dimension);

nlohmann::ordered_json report_to_json(const AlgebraReport& report);
nlohmann::ordered_json report_to_json(const NonClosureReport& report);

}  // namespace xigua
