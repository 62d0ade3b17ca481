#pragma once

#include <string>
#include <vector>

#include "wreath/config.hpp"
#include "wreath/sequence.hpp"
#include "wreath/wreath.hpp"

namespace wreath::testing {

inline AlgebraSpec f2x() {
  return AlgebraSpec::polynomial(Field::gf(2), {"x"});
}

inline AlgebraSpec f2xy() {
  return AlgebraSpec::polynomial(Field::gf(2), {"x", "y"});
}

inline AlgebraSpec f2_trivial() {
  AlgElement ee;
  ee.add_term(BasisLabel::index(0), Field::gf(2).one(), Field::gf(2));
  return AlgebraSpec::structure_constants(Field::gf(2), {"e"}, {{0, 0, ee}},
                                          true, "e");
}

inline AlgebraSpec q_dual() {
  Field q = Field::rationals();
  auto idx = [&](uint64_t i) {
    AlgElement e;
    e.add_term(BasisLabel::index(i), q.one(), q);
    return e;
  };
  return AlgebraSpec::structure_constants(
      q, {"e", "f"},
      {{0, 0, idx(0)}, {0, 1, idx(1)}, {1, 0, idx(1)}, {1, 1, AlgElement()}},
      true, "e");
}

inline AlgebraSpec mq_xy() {
  return AlgebraSpec::monomial_quotient(Field::gf(2), {"x", "y"}, {"yy"},
                                        false);
}

inline GeneratingSequence seq_of(
    const AlgebraSpec& alg,
    const std::vector<std::pair<int64_t, std::string>>& entries,
    bool gap_mode = false) {
  std::map<int64_t, AlgElement> m;
  for (const auto& [pos, expr] : entries)
    m.emplace(pos, parse_element(alg, expr));
  return GeneratingSequence::explicit_list(alg, std::move(m), gap_mode);
}

// a_{k^2} = x^k: infinite support, strictly increasing gaps, domain.
inline GeneratingSequence seq_squares(const AlgebraSpec& alg,
                                      int64_t horizon = 1000000) {
  ElementRule er;
  er.kind = ElementRule::Kind::var_power;
  er.var = 0;
  return GeneratingSequence::rule_quadratic(alg, 1, 0, 0, er, horizon, true);
}

inline WreathElement mat_elem(const AlgebraSpec& alg, int64_t i, int64_t j,
                              const std::string& expr) {
  WreathElement x;
  x.add_mat(i, j, parse_element(alg, expr), alg.field());
  return x;
}

} // namespace wreath::testing
