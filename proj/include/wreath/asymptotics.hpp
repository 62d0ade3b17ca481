#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wreath/algebra.hpp"
#include "wreath/funcdesc.hpp"
#include "wreath/report.hpp"

namespace wreath {

// All "for all n >= n_k" facts below are horizon-bounded: conditions are
// certified pointwise on [., horizon] and never extrapolated.

struct MergeResult {
  FuncDesc f; // table on [n1, horizon], piece index recorded per point
  std::vector<uint64_t> thresholds;
  Prec prec;
};
// Pointwise-increasing chain g_1 <= ... <= g_m of claimed-subexponential,
// exactly evaluable descriptors; n_k is the smallest n > n_{k-1} with
// g_k(m) <= (1/k) e^{m/k} certified for all m in [n, horizon].
MergeResult merge_subexponential(const std::vector<FuncDesc>& gs,
                                 uint64_t horizon);

struct SuperlinResult {
  FuncDesc h;  // table: h(n) = n * mu(n)
  FuncDesc mu; // table: step function of the threshold ladder
  std::vector<uint64_t> thresholds;
  uint64_t mu_at_horizon = 0;
  Prec prec;
};
// n_k is the smallest n > n_{k-1} with f(k*m) < (1/k) e^{m/k} certified for
// all m in [n, horizon]; the ladder stops at the horizon.
SuperlinResult superlinearize(const FuncDesc& f, uint64_t horizon);

struct DilutionPlan {
  std::vector<AlgElement> generators;
  std::vector<uint64_t> cs;
  std::vector<Rat> eps;
  FuncDesc h;
  std::vector<uint64_t> thresholds;
  std::map<uint64_t, AlgElement> sequence_entries; // n_k -> b_k
  Prec prec;
};
// n_k is the smallest n > n_{k-1} with c_k*m <= h(m) certified for all
// m in [n, horizon]; emits entry b_k at position n_k, zeros elsewhere.
DilutionPlan build_dilution(const AlgebraSpec& alg,
                            std::vector<AlgElement> generators,
                            std::vector<uint64_t> cs, std::vector<Rat> eps,
                            const FuncDesc& h, uint64_t horizon);

struct FitResult {
  std::vector<std::optional<uint64_t>> cs;
  std::vector<Rat> eps;
  std::vector<std::string> notes;
  bool all_ok = true;
  Prec prec;
};
// Smallest integer c_k <= cap with dim span(b_1..b_k)^n <= f(c_k*n)*n^{eps_k}
// certified for all n in [1, horizon]; failures reported, never fabricated.
FitResult fit_eq1(const AlgebraSpec& alg,
                  const std::vector<AlgElement>& generators, const FuncDesc& f,
                  const std::vector<Rat>& eps, uint64_t horizon,
                  uint64_t c_cap = 64);

struct SlopeResult {
  Rat slope;
  long bits = 0;
};
// Least-squares slope of ln g(n) vs ln n over [n0, n1], on interval midpoints
// of the logarithms at the recorded precision.
SlopeResult gk_slope(const std::vector<uint64_t>& values, uint64_t n0,
                     uint64_t n1);

// w(n) <= g(2n+1) and g(n) <= 2(2n+1)^2 w(n) + 2n+1, pointwise over w's range.
Report corollary1_check(const std::vector<uint64_t>& w_values,
                        const std::vector<uint64_t>& g_values);

struct PreceqResult {
  bool holds = true;
  uint64_t witness = 0; // first violating n when !holds
  uint64_t indeterminate = 0;
  long bits = kPrecLadder[0];
};
// f(n) <= c*g(c*n)*n^alpha on [lo, hi]: a witness check, not an asymptotic
// proof.
PreceqResult preceq_witness(const FuncDesc& f, const FuncDesc& g, uint64_t c,
                            const Rat& alpha, uint64_t lo, uint64_t hi);

struct ProbeEntry {
  Rat alpha;
  bool trend_decreasing = true;
  bool flagged_non_subexp = false;
  std::string max_ratio; // certified upper bound at the argmax, decimal
  uint64_t argmax = 0;
  uint64_t indeterminate = 0;
};
struct ProbeResult {
  std::vector<ProbeEntry> entries;
  uint64_t tail_start = 0;
  std::string caveat = "horizon evidence, not a limit proof";
};
// Tail behavior of g(n)/e^{alpha n} over the last tenth of the series.
ProbeResult subexp_probe(const std::vector<uint64_t>& values,
                         const std::vector<Rat>& alphas);

} // namespace wreath
