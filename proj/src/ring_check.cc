#include "xigua/ring_check.h"

#include <algorithm>
#include <random>

#include "xigua/errors.h"

namespace xigua {

namespace {

// Dense square matrix over a ring given by its element type and operations.
template <typename Ring>
class Dense {
 public:
  using T = typename Ring::value_type;

  Dense(int n, const Ring& ring) : n_(n), ring_(&ring), a_(static_cast<std::size_t>(n * n), ring.zero()) {}

  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

  Dense operator+(const Dense& o) const {
    Dense r(n_, *ring_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_->add(a_[k], o.a_[k]);
    return r;
  }
  Dense operator-() const {
    Dense r(n_, *ring_);
    for (std::size_t k = 0; k < a_.size(); ++k) r.a_[k] = ring_->neg(a_[k]);
    return r;
  }
  Dense operator*(const Dense& o) const {
    Dense r(n_, *ring_);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        T acc = ring_->zero();
        for (int k = 0; k < n_; ++k) acc = ring_->add(acc, ring_->mul((*this)(i, k), o(k, j)));
        r(i, j) = acc;
      }
    }
    return r;
  }
  bool operator==(const Dense& o) const { return a_ == o.a_; }

  std::vector<std::vector<std::string>> render() const {
    std::vector<std::vector<std::string>> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)].push_back(ring_->str((*this)(i, j)));
    }
    return out;
  }

 private:
  int n_;
  const Ring* ring_;
  std::vector<T> a_;
};

struct ModRing {
  using value_type = int;
  int m;
  int zero() const { return 0; }
  int add(int a, int b) const { return (a + b) % m; }
  int neg(int a) const { return (m - a) % m; }
  int mul(int a, int b) const { return (a * b) % m; }
  std::string str(int a) const { return std::to_string(a); }
  int draw(std::mt19937_64& rng) const { return static_cast<int>(rng() % static_cast<std::uint64_t>(m)); }
};

struct RationalRing {
  using value_type = Rational;
  int bound;
  Rational zero() const { return 0; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational neg(const Rational& a) const { return -a; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  std::string str(const Rational& a) const { return a.get_str(); }
  Rational draw(std::mt19937_64& rng) const {
    const auto span = static_cast<std::uint64_t>(2 * bound + 1);
    const long num = static_cast<long>(rng() % span) - bound;
    const long den = static_cast<long>(rng() % static_cast<std::uint64_t>(bound)) + 1;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
};

template <typename Ring>
Dense<Ring> random_matrix(int n, const Ring& ring, std::mt19937_64& rng) {
  Dense<Ring> m(n, ring);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = ring.draw(rng);
  }
  return m;
}

template <typename Ring>
AlgebraReport run_axioms(const Ring& ring, std::string name, int n, std::size_t samples,
                         std::uint64_t seed) {
  if (n < 1) throw ValidationError("dimension must be positive");
  if (samples < 1) throw ValidationError("samples must be >= 1");
  AlgebraReport report;
  report.ring = std::move(name);
  report.dimension = n;
  report.samples = samples;
  std::vector<std::size_t> passes(kRingAxioms.size(), 0);
  std::mt19937_64 rng(seed);
  const Dense<Ring> zero(n, ring);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto a = random_matrix(n, ring, rng);
    const auto b = random_matrix(n, ring, rng);
    const auto c = random_matrix(n, ring, rng);
    const bool results[] = {
        a + b == b + a,
        (a + b) + c == a + (b + c),
        (a * b) * c == a * (b * c),
        a * (b + c) == a * b + a * c,
        (a + b) * c == a * c + b * c,
        a + zero == a,
        a + (-a) == zero,
    };
    for (std::size_t k = 0; k < passes.size(); ++k) passes[k] += results[k] ? 1 : 0;
    if (!report.noncommutative && !(a * b == b * a)) {
      report.noncommutative = true;
      report.witness_a = a.render();
      report.witness_b = b.render();
    }
  }
  for (std::size_t k = 0; k < passes.size(); ++k) report.axiom_passes.emplace_back(kRingAxioms[k], passes[k]);
  return report;
}

}  // namespace

bool AlgebraReport::all_axioms_hold() const {
  return axiom_passes.size() == kRingAxioms.size() &&
         std::all_of(axiom_passes.begin(), axiom_passes.end(),
                     [&](const auto& kv) { return kv.second == samples; });
}

AlgebraReport check_ring_axioms(int dimension, int modulus, std::size_t samples,
                                std::uint64_t seed) {
  if (modulus < 2) throw ValidationError("modulus must be >= 2");
  return run_axioms(ModRing{modulus}, "Z" + std::to_string(modulus), dimension, samples, seed);
}

AlgebraReport check_ring_axioms_rational(int dimension, std::size_t samples, std::uint64_t seed,
                                         int bound) {
  if (bound < 1) throw ValidationError("bound must be >= 1");
  return run_axioms(RationalRing{bound}, "Q", dimension, samples, seed);
}

NonClosureReport nonclosure_witnesses(int dimension) {
  if (dimension < 2) throw ValidationError("non-closure witnesses need dimension >= 2");
  const int n = dimension;
  NonClosureReport r;
  r.dimension = n;

  TransitionMatrix ones(n, EntryDomain::y);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) ones.set(i, j, 1);
  }
  const TransitionMatrix neg = -ones;
  const TransitionMatrix sum = ones + neg;
  r.m = classify_matrix(ones);
  r.neg_m = classify_matrix(neg);
  r.sum = classify_matrix(sum);
  r.sum_is_zero = sum == TransitionMatrix::zero(n);

  TransitionMatrix shift(n, EntryDomain::y);
  for (int i = 0; i < n; ++i) shift.set(i, (i + 1) % n, 1);
  const TransitionMatrix shift_t = shift.transpose();
  const TransitionMatrix product = shift * shift_t;
  r.perm = classify_matrix(shift);
  r.perm_t = classify_matrix(shift_t);
  r.product = classify_matrix(product);
  r.product_is_identity = product == TransitionMatrix::identity(n);
  r.identity = classify_matrix(TransitionMatrix::identity(n));
  return r;
}

namespace {

nlohmann::ordered_json class_json(const MatrixClass& c) {
  return {{"is_identity", c.is_identity},
          {"is_zero", c.is_zero},
          {"has_zero_row", c.has_zero_row},
          {"in_D", c.in_D}};
}

}  // namespace

nlohmann::ordered_json report_to_json(const AlgebraReport& report) {
  nlohmann::ordered_json axioms;
  for (const auto& [name, count] : report.axiom_passes) axioms[name] = count;
  nlohmann::ordered_json j = {{"ring", report.ring},
                              {"dimension", report.dimension},
                              {"samples", report.samples},
                              {"axioms", axioms},
                              {"all_axioms_hold", report.all_axioms_hold()},
                              {"noncommutative", report.noncommutative}};
  if (report.noncommutative) {
    j["witness"] = {{"A", report.witness_a}, {"B", report.witness_b}};
  }
  return j;
}

nlohmann::ordered_json report_to_json(const NonClosureReport& r) {
  return {{"dimension", r.dimension},
          {"additive",
           {{"M", class_json(r.m)},
            {"neg_M", class_json(r.neg_m)},
            {"sum", class_json(r.sum)},
            {"sum_is_zero", r.sum_is_zero},
            {"valid", r.additive_witness_valid()}}},
          {"multiplicative",
           {{"P", class_json(r.perm)},
            {"P_T", class_json(r.perm_t)},
            {"product", class_json(r.product)},
            {"product_is_identity", r.product_is_identity},
            {"valid", r.multiplicative_witness_valid()}}},
          {"identity", class_json(r.identity)},
          {"valid", r.valid()}};
}

}  // namespace xigua
