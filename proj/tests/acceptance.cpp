// Acceptance gate: twelve criteria, one pass/fail line each.
// argv: <cli-binary> <configs-dir> <scratch-dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wreath/asymptotics.hpp"
#include "wreath/errors.hpp"
#include "wreath/growth.hpp"
#include "wreath/honest.hpp"
#include "wreath/semigroup.hpp"
#include "wreath/sequence.hpp"
#include "wreath/wreath.hpp"

using namespace wreath;
namespace fs = std::filesystem;

namespace {

// Pinned budgets and windows.
constexpr double kCorollarySeconds = 120.0;
constexpr double kSlopeSeconds = 600.0;
const Rat kPolySlopeLo(5, 2), kPolySlopeHi(33, 10);
const Rat kTrivialSlopeLo(8, 5), kTrivialSlopeHi(23, 10);
constexpr uint64_t kSeed = 1;

std::string g_cli, g_configs, g_scratch;

struct Criterion {
  int num;
  std::string text;
  std::function<std::string()> run; // "" = pass, else failure detail
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

AlgebraSpec poly_alg() { return AlgebraSpec::polynomial(Field::gf(2), {"x"}); }

AlgebraSpec trivial_alg() {
  Field f = Field::gf(2);
  AlgElement ee;
  ee.add_term(BasisLabel::index(0), f.one(), f);
  return AlgebraSpec::structure_constants(f, {"e"}, {{0, 0, ee}}, true, "e");
}

AlgebraSpec dual_alg() {
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

AlgebraSpec word_alg() {
  return AlgebraSpec::monomial_quotient(Field::gf(2), {"x", "y"}, {"yy"},
                                        false);
}

GeneratingSequence explicit_seq(
    const AlgebraSpec& alg,
    const std::vector<std::pair<int64_t, std::string>>& entries) {
  std::map<int64_t, AlgElement> m;
  for (const auto& [pos, expr] : entries)
    m.emplace(pos, parse_element(alg, expr));
  return GeneratingSequence::explicit_list(alg, std::move(m));
}

GeneratingSequence squares_seq(const AlgebraSpec& alg) {
  ElementRule er;
  er.kind = ElementRule::Kind::var_power;
  er.var = 0;
  return GeneratingSequence::rule_quadratic(alg, 1, 0, 0, er, 1000000, true);
}

std::string check_report(const Report& r, const std::string& what) {
  if (r.pass) return "";
  std::string w = r.witnesses.empty() ? "no witness" : r.witnesses.front();
  return what + " failed: " + w;
}

// ---- independent dense oracle for the semigroup counts ----

struct Dense {
  std::map<int64_t, Scalar> lau;
  std::map<std::pair<int64_t, int64_t>, AlgElement> cells;

  bool zero() const { return lau.empty() && cells.empty(); }
  bool operator<(const Dense& o) const {
    if (lau != o.lau) return lau < o.lau;
    return cells < o.cells;
  }
};

Dense dmul(const AlgebraSpec& alg, const Dense& x, const Dense& y) {
  const Field& f = alg.field();
  Dense r;
  auto add_lau = [&](int64_t k, const Scalar& c) {
    auto it = r.lau.find(k);
    Scalar s = it == r.lau.end() ? c : f.add(it->second, c);
    if (f.is_zero(s))
      r.lau.erase(k);
    else
      r.lau[k] = s;
  };
  auto add_cell = [&](int64_t i, int64_t j, const AlgElement& b) {
    if (b.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto it = r.cells.find(key);
    AlgElement s = it == r.cells.end() ? b : alg.add(it->second, b);
    if (s.is_zero())
      r.cells.erase(key);
    else
      r.cells[key] = s;
  };
  for (const auto& [ka, ca] : x.lau) {
    for (const auto& [kb, cb] : y.lau) add_lau(ka + kb, f.mul(ca, cb));
    for (const auto& [ij, b] : y.cells)
      add_cell(ij.first + ka, ij.second, alg.scale(b, ca));
  }
  for (const auto& [ij, a] : x.cells) {
    for (const auto& [kb, cb] : y.lau)
      add_cell(ij.first, ij.second - kb, alg.scale(a, cb));
    for (const auto& [kl, b] : y.cells)
      if (ij.second == kl.first) add_cell(ij.first, kl.second, alg.mul(a, b));
  }
  return r;
}

struct OracleCounts {
  std::vector<uint64_t> values;
  bool zero_seen = false;
  uint64_t zero_first = 0;
};

OracleCounts dense_counts(const AlgebraSpec& alg, const GeneratingSequence& seq,
                          uint64_t horizon) {
  const Field& f = alg.field();
  Dense t, tinv, e00, c;
  t.lau[1] = f.one();
  tinv.lau[-1] = f.one();
  e00.cells[{0, 0}] = alg.one();
  for (int64_t m : seq.support_upto(seq.max_position()))
    c.cells[{0, m}] = seq.entry(m);
  std::vector<Dense> gens = {t, tinv, e00, c};

  OracleCounts out;
  std::set<Dense> seen;
  std::vector<Dense> frontier;
  for (const Dense& g : gens)
    if (seen.insert(g).second) frontier.push_back(g);
  out.values.push_back(seen.size());
  for (uint64_t n = 2; n <= horizon; ++n) {
    std::vector<Dense> next;
    for (const Dense& v : frontier)
      for (const Dense& g : gens) {
        Dense p = dmul(alg, v, g);
        if (p.zero()) {
          if (!out.zero_seen) {
            out.zero_seen = true;
            out.zero_first = n;
          }
          continue;
        }
        if (seen.insert(p).second) next.push_back(p);
      }
    out.values.push_back(seen.size());
    frontier = std::move(next);
  }
  return out;
}

// ---- criterion bodies ----

std::string c1_corollary() {
  auto t0 = std::chrono::steady_clock::now();
  AlgebraSpec p = poly_alg();
  GeneratingSequence s = explicit_seq(p, {{1, "x"}});
  WreathContext ctx{p, s};
  GrowthSeries w = w_series(ctx, 14);
  GrowthSeries g = growth_series(ctx, 29, ZeroMode::exact);
  Report r = corollary1_check(w.values, g.values);
  if (std::string bad = check_report(r, "corollary check"); !bad.empty())
    return bad;
  if (r.checked != 14) return "expected 14 points, checked " +
                              std::to_string(r.checked);
  double el = seconds_since(t0);
  if (el > kCorollarySeconds)
    return "took " + std::to_string(el) + "s, budget " +
           std::to_string(kCorollarySeconds) + "s";
  return "";
}

std::string c2_left_ideal() {
  AlgebraSpec p = poly_alg();
  GeneratingSequence fin = explicit_seq(p, {{1, "x"}});
  WreathContext fctx{p, fin};
  Report rf = verify_left_ideal(fctx, 200, 6, kSeed);
  if (std::string bad = check_report(rf, "finite-support left products");
      !bad.empty())
    return bad;
  if (rf.checked < 200) return "finite instance sampled under 200 products";
  GeneratingSequence inf = squares_seq(p);
  WreathContext ictx{p, inf};
  Report ri = verify_left_ideal(ictx, 200, 6, kSeed);
  if (std::string bad = check_report(ri, "infinite-support left products");
      !bad.empty())
    return bad;
  if (ri.checked < 200) return "infinite instance sampled under 200 products";
  return "";
}

std::string c3_two_sided() {
  AlgebraSpec p = poly_alg();
  GeneratingSequence s = explicit_seq(p, {{1, "x"}});
  WreathContext ctx{p, s};
  Report r = verify_two_sided_banded(ctx, 200, 6, kSeed);
  if (std::string bad = check_report(r, "banded two-sided products");
      !bad.empty())
    return bad;
  if (r.checked < 200) return "sampled under 200 products";
  return "";
}

std::string c4_membership() {
  AlgebraSpec p = poly_alg();
  GeneratingSequence s = explicit_seq(p, {{1, "x"}});
  WreathContext ctx{p, s};
  return check_report(verify_filtration_membership(ctx, 8),
                      "filtration membership to n = 8");
}

std::string c5_shape() {
  AlgebraSpec p = poly_alg();
  GeneratingSequence s = explicit_seq(p, {{1, "x"}});
  WreathContext ctx{p, s};
  return check_report(verify_layer_shape(ctx, 12), "layer shape to n = 12");
}

std::string c6_assoc_oracle() {
  struct Inst {
    std::string name;
    AlgebraSpec alg;
    GeneratingSequence seq;
  };
  std::vector<Inst> insts;
  {
    AlgebraSpec p = poly_alg();
    insts.push_back({"poly", p, explicit_seq(p, {{1, "x"}})});
    AlgebraSpec pi = poly_alg();
    insts.push_back({"poly-squares", pi, squares_seq(pi)});
    AlgebraSpec t = trivial_alg();
    insts.push_back({"trivial", t, explicit_seq(t, {{1, "e"}})});
    AlgebraSpec d = dual_alg();
    insts.push_back({"dual", d, explicit_seq(d, {{1, "f"}, {2, "e + f"}})});
    AlgebraSpec m = word_alg();
    insts.push_back({"words", m, explicit_seq(m, {{1, "x"}, {3, "xy"}})});
  }
  for (const Inst& in : insts) {
    WreathContext ctx{in.alg, in.seq};
    Report a = verify_associativity(ctx, 1000, kSeed);
    if (!a.pass || a.checked != 1000)
      return in.name + ": " + check_report(a, "associativity") +
             (a.pass ? " (short count)" : "");
    Report o = verify_oracle_equivalence(ctx, 500, kSeed);
    if (!o.pass || o.checked != 500)
      return in.name + ": " + check_report(o, "oracle equivalence") +
             (o.pass ? " (short count)" : "");
  }
  return "";
}

std::string c7_slopes() {
  auto t0 = std::chrono::steady_clock::now();
  AlgebraSpec p = poly_alg();
  GeneratingSequence sp = explicit_seq(p, {{1, "x"}});
  WreathContext pctx{p, sp};
  GrowthSeries gp = growth_series(pctx, 40, ZeroMode::exact);
  SlopeResult slope_p = gk_slope(gp.values, 20, 40);
  if (slope_p.slope < kPolySlopeLo || slope_p.slope > kPolySlopeHi)
    return "polynomial slope " + rat_decimal(slope_p.slope, 4) +
           " outside [2.5, 3.3]";
  if (double el = seconds_since(t0); el > kSlopeSeconds)
    return "polynomial series took " + std::to_string(el) + "s";

  auto t1 = std::chrono::steady_clock::now();
  AlgebraSpec t = trivial_alg();
  GeneratingSequence st = explicit_seq(t, {{1, "e"}});
  WreathContext tctx{t, st};
  GrowthSeries gt = growth_series(tctx, 40, ZeroMode::exact);
  SlopeResult slope_t = gk_slope(gt.values, 20, 40);
  if (slope_t.slope < kTrivialSlopeLo || slope_t.slope > kTrivialSlopeHi)
    return "one-dimensional slope " + rat_decimal(slope_t.slope, 4) +
           " outside [1.6, 2.3]";
  if (double el = seconds_since(t1); el > kSlopeSeconds)
    return "one-dimensional series took " + std::to_string(el) + "s";
  return "";
}

std::string c8_merge() {
  MergeResult m = merge_subexponential(
      {FuncDesc::power(1), FuncDesc::power(2), FuncDesc::power(3)}, 10000);
  if (m.thresholds != std::vector<uint64_t>{1, 11, 36})
    return "thresholds differ from {1, 11, 36}";
  if (m.prec.indeterminate != 0)
    return std::to_string(m.prec.indeterminate) +
           " indeterminate comparisons";
  if (m.f.eval_exact(10) != 10 || m.f.eval_exact(11) != 121 ||
      m.f.eval_exact(36) != 46656)
    return "merged table values differ at a switch point";
  return "";
}

std::string c9_superlinearize() {
  SuperlinResult s = superlinearize(FuncDesc::exp_power(1, 2), 10000);
  const std::vector<uint64_t> want = {2,    11,   34,   75,   141,  238,  370,
                                      545,  769,  1046, 1384, 1788, 2264, 2818,
                                      3456, 4185, 5009, 5936, 6971, 8120, 9389};
  if (s.thresholds != want) return "threshold ladder differs";
  if (s.mu_at_horizon < 4)
    return "mu(10000) = " + std::to_string(s.mu_at_horizon) + " < 4";
  if (s.prec.indeterminate != 0)
    return std::to_string(s.prec.indeterminate) +
           " indeterminate comparisons";
  // sqrt(h(n)) < alpha*n on the last tail, i.e. mu(n) < alpha^2 * n
  for (const Rat& alpha : {Rat(1), Rat(1, 2), Rat(1, 4)}) {
    for (uint64_t n = 9001; n <= 10000; ++n) {
      Rat mu = s.mu.eval_exact(n);
      if (!(mu < alpha * alpha * Rat(static_cast<unsigned long>(n))))
        return "sqrt(h(n)) < " + rat_decimal(alpha, 3) +
               "*n fails at n = " + std::to_string(n);
    }
  }
  return "";
}

std::string c10_dilution() {
  AlgebraSpec p = poly_alg();
  AlgElement x = parse_element(p, "x");
  std::vector<AlgElement> gens(50, x);
  std::vector<uint64_t> cs;
  std::vector<Rat> eps;
  for (uint64_t k = 1; k <= 50; ++k) {
    cs.push_back(k);
    eps.push_back(Rat(1, static_cast<long>(k)));
  }
  DilutionPlan plan = build_dilution(p, gens, cs, eps, FuncDesc::power(2), 200);
  if (plan.thresholds.size() != 50) return "expected 50 thresholds";
  for (uint64_t k = 1; k <= 50; ++k)
    if (plan.thresholds[k - 1] != k)
      return "n_" + std::to_string(k) + " = " +
             std::to_string(plan.thresholds[k - 1]) + ", want " +
             std::to_string(k);
  if (plan.prec.indeterminate != 0) return "indeterminate comparisons";
  return "";
}

std::string c11_semigroup() {
  struct Case {
    std::string name;
    SemigroupSpec P;
    std::string gen;
    uint64_t horizon;
  };
  std::vector<std::string> names;
  for (int i = 0; i < 6; ++i) names.push_back("g" + std::to_string(i));
  std::vector<std::vector<std::string>> rows(6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) rows[i].push_back(names[(i + j) % 6]);

  std::vector<Case> cases = {
      {"trivial", SemigroupSpec::from_table({"e"}, {{"e"}}), "e", 10},
      {"monogenic", SemigroupSpec::free_monogenic(), "x^1", 10},
      {"cyclic6", SemigroupSpec::from_table(names, rows), "g1", 6},
  };

  for (const Case& c : cases) {
    AlgebraSpec alg = c.P.to_algebra();
    std::map<int64_t, AlgElement> ent{{1, c.P.as_algebra_element(alg, c.gen)}};
    GeneratingSequence seq = GeneratingSequence::explicit_list(alg, ent);
    WreathContext ctx{alg, seq};
    SemigroupCounts got = semigroup_growth(ctx, c.horizon);
    OracleCounts want = dense_counts(alg, seq, c.horizon);
    if (got.series.values != want.values)
      return c.name + ": counts diverge from the dense oracle";
    if (got.zero_seen != want.zero_seen ||
        (want.zero_seen && got.zero_first_length != want.zero_first))
      return c.name + ": zero bookkeeping diverges from the dense oracle";
  }

  Report c6r = rees_associativity(cases[2].P, 0, kSeed);
  if (!c6r.pass || c6r.checked < 216)
    return check_report(c6r, "exhaustive Rees associativity (cyclic6)") +
           (c6r.pass ? " (short count)" : "");
  Report trr = rees_associativity(cases[0].P, 0, kSeed);
  if (!trr.pass)
    return check_report(trr, "exhaustive Rees associativity (trivial)");
  return "";
}

int run_cli(const std::string& sub, const std::string& config,
            const std::string& out) {
  fs::create_directories(out);
  std::string cmd = "'" + g_cli + "' " + sub + " --config '" + g_configs +
                    "/" + config + "' --out '" + out + "' > '" + out +
                    "/stdout.txt' 2>&1";
  int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

std::string c12_determinism() {
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"growth", "f2x.toml"},
      {"semigroup", "semigroup_monogenic.toml"},
      {"dilute", "dilute_f2xy.toml"},
  };
  for (const char* side : {"a", "b"}) {
    for (const auto& [sub, cfg] : runs) {
      std::string out = g_scratch + "/" + side + "/" + sub;
      int rc = run_cli(sub, cfg, out);
      if (rc != 0)
        return sub + " run " + side + " exited " + std::to_string(rc);
    }
  }
  for (const auto& [sub, cfg] : runs) {
    fs::path da = fs::path(g_scratch) / "a" / sub;
    fs::path db = fs::path(g_scratch) / "b" / sub;
    size_t compared = 0;
    for (const auto& entry : fs::directory_iterator(da)) {
      if (entry.path().filename() == "stdout.txt") continue;
      std::ifstream fa(entry.path(), std::ios::binary);
      std::ifstream fb(db / entry.path().filename(), std::ios::binary);
      if (!fb) return sub + ": " + entry.path().filename().string() +
                      " missing on rerun";
      std::stringstream sa, sb;
      sa << fa.rdbuf();
      sb << fb.rdbuf();
      if (sa.str() != sb.str())
        return sub + ": " + entry.path().filename().string() +
               " differs between reruns";
      ++compared;
    }
    if (compared == 0) return sub + " produced no output files";
  }
  return "";
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::fprintf(stderr,
                 "usage: acceptance <cli-binary> <configs-dir> <scratch-dir>\n");
    return 2;
  }
  g_cli = argv[1];
  g_configs = argv[2];
  g_scratch = argv[3];
  fs::remove_all(g_scratch);
  fs::create_directories(g_scratch);

  std::vector<Criterion> criteria = {
      {1, "corollary inequalities certified on the polynomial instance",
       c1_corollary},
      {2, "left products land in the matrix part (finite and infinite c)",
       c2_left_ideal},
      {3, "two-sided products stay banded for finite c", c3_two_sided},
      {4, "filtration products appear by layer 2s+1", c4_membership},
      {5, "echelon layers match the shape bound to n = 12", c5_shape},
      {6, "associativity and oracle agreement across all instances",
       c6_assoc_oracle},
      {7, "log-log growth slopes sit in their windows", c7_slopes},
      {8, "power chain merges with zero indeterminates", c8_merge},
      {9, "stretched exponential superlinearizes with a vanishing tail",
       c9_superlinearize},
      {10, "dilution thresholds walk the quadratic bound", c10_dilution},
      {11, "semigroup counts match an independent dense oracle",
       c11_semigroup},
      {12, "repeated CLI runs emit byte-identical files", c12_determinism},
  };

  bool all = true;
  for (const Criterion& c : criteria) {
    std::string detail;
    try {
      detail = c.run();
    } catch (const Error& e) {
      detail = std::string("error: ") + e.what();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    bool ok = detail.empty();
    all = all && ok;
    std::printf("[%s] %2d. %s%s%s\n", ok ? "PASS" : "FAIL", c.num,
                c.text.c_str(), ok ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
