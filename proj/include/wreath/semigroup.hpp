#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wreath/growth.hpp"
#include "wreath/report.hpp"
#include "wreath/wreath.hpp"

namespace wreath {

// The coefficient semigroup P. Elements travel as strings: a basis name for
// the table kind, "x^k" for the free monogenic kind, a word over the alphabet
// (possibly empty) for the capped free monoid.
class SemigroupSpec {
 public:
  enum class Kind { free_monogenic, table, free_monoid };

  static SemigroupSpec free_monogenic();
  // Total Cayley table, rows of element names; associativity checked over all
  // triples.
  static SemigroupSpec
  from_table(std::vector<std::string> names,
             const std::vector<std::vector<std::string>>& rows);
  // Products longer than cap raise a cap error, never truncate.
  static SemigroupSpec free_monoid(std::vector<std::string> alphabet,
                                   uint32_t cap);

  Kind kind() const { return kind_; }
  bool has_unit() const { return has_unit_; }
  size_t size() const; // table kind only
  const std::vector<std::string>& names() const { return names_; }
  std::optional<uint32_t> cap() const { return cap_; }

  std::string mul_elem(const std::string& a, const std::string& b) const;
  std::string random_elem(std::mt19937_64& rng) const;

  // Semigroup algebra over GF(2); a formal unit is adjoined when P has none.
  AlgebraSpec to_algebra() const;
  AlgElement as_algebra_element(const AlgebraSpec& alg,
                                const std::string& elem) const;

  std::string describe() const;

 private:
  SemigroupSpec() = default;

  size_t elem_index(const std::string& name) const;

  Kind kind_ = Kind::free_monogenic;
  bool has_unit_ = false;
  std::vector<std::string> names_;
  std::vector<std::vector<size_t>> mul_;
  std::vector<std::string> alphabet_;
  std::optional<uint32_t> cap_;
  std::optional<size_t> unit_;
};

// Matrix unit over P: zero or e_ij(p).
struct ReesElement {
  bool zero = true;
  int64_t i = 0, j = 0;
  std::string p;

  static ReesElement make_zero() { return {}; }
  static ReesElement unit(int64_t i, int64_t j, std::string p) {
    ReesElement e;
    e.zero = false;
    e.i = i;
    e.j = j;
    e.p = std::move(p);
    return e;
  }
  bool operator==(const ReesElement& o) const {
    if (zero || o.zero) return zero == o.zero;
    return i == o.i && j == o.j && p == o.p;
  }
};

// (i,j,a)(k,q,b) = (i,q,ab) when j = k, else zero; zero absorbs.
ReesElement rees_mul(const SemigroupSpec& P, const ReesElement& x,
                     const ReesElement& y);

// Exhaustive over all element triples and a window of index patterns for the
// table kind; random triples otherwise.
Report rees_associativity(const SemigroupSpec& P, uint64_t random_triples,
                          uint64_t seed);

struct SemigroupCounts {
  GrowthSeries series; // distinct nonzero canonical forms, words of length <= n
  bool zero_seen = false;
  uint64_t zero_first_length = 0;
};
// BFS over generator words; counts distinct canonical wreath-element forms,
// zero tracked separately. Coefficients must live in GF(2).
SemigroupCounts semigroup_growth(const WreathContext& ctx, uint64_t horizon,
                                 int64_t unit_cell = 0);

// Sampled products (word of length <= degree) * e_ij(p) must be single matrix
// atoms or zero.
Report verify_left_ideal_semigroup(const WreathContext& ctx,
                                   const SemigroupSpec& P, uint64_t samples,
                                   uint64_t degree, uint64_t seed,
                                   int64_t unit_cell = 0);

// Sampled atom pairs multiply to a single atom with a one-term coefficient or
// to zero; this is what makes counting via the algebra machinery sound.
Report monomial_closure_check(const WreathContext& ctx, uint64_t samples,
                              uint64_t seed);

} // namespace wreath
