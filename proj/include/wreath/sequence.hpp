#pragma once

#include <map>

#include "wreath/algebra.hpp"

namespace wreath {

// How a rule-based sequence produces its k-th element.
struct ElementRule {
  enum class Kind { var_power, constant, cycle };
  Kind kind = Kind::constant;
  size_t var = 0;                 // var_power: b_k = v^k
  std::vector<AlgElement> elems;  // constant: elems[0]; cycle: elems[(k-1) % n]
};

// The coefficient sequence (a_m): finitely many nonzero entries at positions
// m >= 1, given either as an explicit list or by a position rule
// n_k = a*k^2 + b*k + c materialized up to a horizon. Rule-based sequences
// have conceptually infinite support; queries past the horizon are errors.
class GeneratingSequence {
public:
  static GeneratingSequence explicit_list(const AlgebraSpec& alg,
                                          std::map<int64_t, AlgElement> entries,
                                          bool gap_mode = false);

  static GeneratingSequence rule_quadratic(const AlgebraSpec& alg, int64_t a,
                                           int64_t b, int64_t c,
                                           const ElementRule& er,
                                           int64_t horizon, bool gap_mode);

  // a_m; zero off the support, horizon error past the horizon of a rule.
  const AlgElement& entry(int64_t m) const;

  bool finite_support() const { return !infinite_; }
  bool gap_mode() const { return gap_mode_; }
  int64_t horizon() const { return horizon_; } // rule-based only

  // positions with nonzero entries, ascending; whole support when finite
  std::vector<int64_t> support_upto(int64_t n) const;
  const std::map<int64_t, AlgElement>& known_entries() const { return entries_; }

  // finite support only (precondition error otherwise)
  int64_t max_position() const;
  size_t support_size() const;

private:
  GeneratingSequence() = default;

  std::map<int64_t, AlgElement> entries_;
  bool infinite_ = false;
  int64_t horizon_ = 0;
  bool gap_mode_ = false;
};

// All products a_{i_1} * ... * a_{i_r} (r >= 1) over compositions
// i_1 + ... + i_r <= n with parts in the support, paired with the composition
// sum; sorted by sum, zero products dropped, duplicates keep the smallest sum.
std::vector<std::pair<uint64_t, AlgElement>> weighted_filtration(
    const AlgebraSpec& alg, const GeneratingSequence& seq, uint64_t n);

} // namespace wreath
