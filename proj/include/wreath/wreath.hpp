#pragma once

#include <array>

#include "wreath/report.hpp"
#include "wreath/sequence.hpp"

namespace wreath {

struct WreathContext {
  const AlgebraSpec& alg;
  const GeneratingSequence& seq;
};

// Element of the wreath product in three-part normal form:
//   laurent:  k -> coefficient of t^k
//   mat:      (i, j) -> b, the term e_ij(b)
//   tails:    (i, j) -> w, the term e_i0(w) * c * t^j
// No zero values stored; for finite-support sequences tails are always
// collapsed into mat (see canonicalize).
struct WreathElement {
  using Key = std::pair<int64_t, int64_t>;

  std::map<int64_t, Scalar> laurent;
  std::map<Key, AlgElement> mat;
  std::map<Key, AlgElement> tails;

  void add_laurent(int64_t k, const Scalar& c, const Field& f);
  void add_mat(int64_t i, int64_t j, const AlgElement& b, const Field& f);
  void add_tail(int64_t i, int64_t j, const AlgElement& w, const Field& f);

  bool formally_zero() const {
    return laurent.empty() && mat.empty() && tails.empty();
  }

  bool operator==(const WreathElement& o) const {
    return laurent == o.laurent && mat == o.mat && tails == o.tails;
  }
  bool operator!=(const WreathElement& o) const { return !(*this == o); }
  bool operator<(const WreathElement& o) const {
    if (laurent != o.laurent) return laurent < o.laurent;
    if (mat != o.mat) return mat < o.mat;
    return tails < o.tails;
  }
};

enum class ZeroMode { formal, exact };

// Generators t, t^-1, e_uu(1), c (in that order); u is the idempotent cell.
std::array<WreathElement, 4> make_generators(const WreathContext& ctx,
                                             int64_t unit_cell = 0);

WreathElement wreath_add(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y);
WreathElement wreath_sub(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y);
WreathElement wreath_scale(const WreathContext& ctx, const WreathElement& x,
                           const Scalar& c);
WreathElement wreath_mul(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y);

// Drops zeros; with finite support rewrites every tail (i,j,w) as
// sum over m in supp of e_{i,m-j}(w * a_m). Idempotent.
WreathElement canonicalize(const WreathContext& ctx, const WreathElement& x);

// formal: structural emptiness of the canonical form. exact: same test, but
// the preconditions making it a true equality test are enforced (finite
// support, or gap_mode plus a domain); otherwise unsupported-mode error.
bool is_zero(const WreathContext& ctx, const WreathElement& x, ZeroMode mode);

// Sparse random element for property tests: at most five parts, indices in
// [-6, 6], coefficient-algebra elements of weight <= 4.
WreathElement random_wreath_element(const WreathContext& ctx,
                                    std::mt19937_64& rng);

// Random product of <= max_len generators (empty product = 1).
WreathElement random_generator_word(const WreathContext& ctx,
                                    std::mt19937_64& rng, uint64_t max_len);

// Literal evaluation of the matrix part on a finite window, Laurent part kept
// separate: entry(i,q) = mat(i,q) + sum_j tails(i,j) * a_{q+j} over q+j >= 1.
struct HonestWindow {
  int64_t r0 = 0, r1 = -1, q0 = 0, q1 = -1;
  std::vector<AlgElement> entries; // row-major, (r1-r0+1) x (q1-q0+1)
  std::map<int64_t, Scalar> laurent_remainder;

  AlgElement& at(int64_t i, int64_t q) {
    return entries[static_cast<size_t>((i - r0) * (q1 - q0 + 1) + (q - q0))];
  }
  const AlgElement& at(int64_t i, int64_t q) const {
    return const_cast<HonestWindow*>(this)->at(i, q);
  }
};

HonestWindow honest_window(const WreathContext& ctx, const WreathElement& x,
                           int64_t r0, int64_t r1, int64_t q0, int64_t q1);

// Compact part-count summary for witnesses.
std::string describe(const WreathContext& ctx, const WreathElement& x);

// Sampled closure checks: left products s*m (any sequence) and right products
// m*s (finite support only) must land in the matrix part.
Report verify_left_ideal(const WreathContext& ctx, uint64_t sample_count,
                         uint64_t degree, uint64_t seed);
Report verify_two_sided_banded(const WreathContext& ctx, uint64_t sample_count,
                               uint64_t degree, uint64_t seed);

Report verify_associativity(const WreathContext& ctx, uint64_t triple_count,
                            uint64_t seed);

} // namespace wreath
