#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "wreath/asymptotics.hpp"
#include "wreath/errors.hpp"
#include "wreath/funcdesc.hpp"
#include "wreath/interval.hpp"

using namespace wreath;
using namespace wreath::testing;

namespace {

template <typename F>
ErrKind kind_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind;
  }
  FAIL("expected an error");
  return ErrKind::internal;
}

Rat rat_str(const char* s) {
  mpq_class r(s);
  r.canonicalize();
  return r;
}

// 20 correct digits; interval must sit inside value +- 1e-19
void check_encloses(const Ival& iv, const char* decimal) {
  Rat v = rat_str(decimal);
  Rat tol = rat_str("1/10000000000000000000");
  CHECK(iv.lo >= v - tol);
  CHECK(iv.hi <= v + tol);
  CHECK(iv.lo <= iv.hi);
}

} // namespace

TEST_CASE("interval constants to twenty digits") {
  check_encloses(exp_ival(Ival(Rat(1)), 160),
                 "271828182845904523536/100000000000000000000");
  check_encloses(ln_mpz(2, 160), "69314718055994530942/100000000000000000000");
  check_encloses(root_ival(2, 1, 2, 160),
                 "141421356237309504880/100000000000000000000");
  Ival e10 = exp_ival(Ival(Rat(10)), 160);
  CHECK(rat_decimal(e10.lo, 15) == "2.20264657948067e4");
}

TEST_CASE("directed rounding and comparisons") {
  Rat third(1, 3);
  Rat dn = round_down(third, 8);
  Rat up = round_up(third, 8);
  CHECK(dn <= third);
  CHECK(up >= third);
  CHECK(up - dn <= Rat(1, 128));
  Ival out = round_out(Ival(dn, up), 4);
  CHECK(out.lo <= dn);
  CHECK(out.hi >= up);

  CHECK(cmp_le(Ival(Rat(1)), Ival(Rat(1))) == Tri::yes);
  CHECK(cmp_lt(Ival(Rat(1)), Ival(Rat(1))) == Tri::no);
  CHECK(cmp_lt(Ival(Rat(0), Rat(2)), Ival(Rat(1), Rat(3))) == Tri::maybe);
  CHECK(cmp_le(Ival(Rat(3), Rat(4)), Ival(Rat(1), Rat(2))) == Tri::no);
}

TEST_CASE("decision ladder escalates precision") {
  Decision d = decide([](long bits) {
    return bits >= 640 ? Tri::yes : Tri::maybe;
  });
  CHECK(d.t == Tri::yes);
  CHECK(d.bits == 640);

  Decision stuck = decide([](long) { return Tri::maybe; });
  CHECK(stuck.t == Tri::maybe);
  CHECK(stuck.bits == 2560);

  Prec prec;
  prec.absorb(d);
  prec.absorb(stuck);
  CHECK(prec.max_bits == 2560);
  CHECK(prec.indeterminate == 1);
}

TEST_CASE("exact ceil of the natural log") {
  CHECK(ceil_ln_u64(1) == 0);
  CHECK(ceil_ln_u64(2) == 1);
  CHECK(ceil_ln_u64(3) == 2);
  CHECK(ceil_ln_u64(7) == 2);
  CHECK(ceil_ln_u64(8) == 3);
  CHECK(ceil_ln_u64(1000000) == 14);
}

TEST_CASE("decimal rendering is deterministic") {
  CHECK(rat_decimal(Rat(1, 3), 6) == "3.33333e-1");
  CHECK(rat_decimal(Rat(22026), 5) == "2.2026e4");
  CHECK(rat_decimal(Rat(-1, 2), 3) == "-5.00e-1");
  CHECK(rat_decimal(Rat(0), 4) == "0");
  CHECK(rat_decimal(Rat(1), 4) == "1.000e0");
}

TEST_CASE("function descriptors evaluate exactly when rational") {
  CHECK(FuncDesc::power(2).eval_exact(7) == 49);
  CHECK(FuncDesc::power(2).is_rational());
  CHECK(FuncDesc::constant(Rat(3)).eval_exact(100) == 3);
  CHECK(FuncDesc::n_ceil_ln_n().eval_exact(1) == 1);
  CHECK(FuncDesc::n_ceil_ln_n().eval_exact(1000000) == 14000000);
  CHECK(!FuncDesc::exponential(Rat(1)).is_rational());
  CHECK(!FuncDesc::exp_power(1, 2).is_rational());
  CHECK(!FuncDesc::n_ln_n_plus_n().is_rational());

  FuncDesc err_tab = FuncDesc::table({{1, Rat(5)}, {2, Rat(7)}},
                                     FuncDesc::Extension::error, "test");
  CHECK(err_tab.eval_exact(2) == 7);
  CHECK(kind_of([&] { (void)err_tab.eval_exact(3); }) == ErrKind::range);
  FuncDesc hold_tab = FuncDesc::table({{1, Rat(5)}, {2, Rat(7)}},
                                      FuncDesc::Extension::hold_last, "test");
  CHECK(hold_tab.eval_exact(9) == 7);
}

TEST_CASE("descriptor parsing") {
  CHECK(parse_funcdesc("power:2").eval_exact(3) == 9);
  CHECK(parse_funcdesc("constant:5/2").eval_exact(1) == Rat(5, 2));
  CHECK(parse_funcdesc("exp_power:1/2").family() == FuncDesc::Family::exp_power);
  CHECK(parse_funcdesc("n_ceil_ln_n").family() == FuncDesc::Family::n_ceil_ln_n);
  CHECK(parse_funcdesc("n_ln_n_plus_n").family() ==
        FuncDesc::Family::n_ln_n_plus_n);
  CHECK(kind_of([] { (void)parse_funcdesc("bogus"); }) == ErrKind::config);
  CHECK(kind_of([] { (void)parse_funcdesc("power:x"); }) == ErrKind::config);
  CHECK(parse_rational("7/3") == Rat(7, 3));
  CHECK(parse_rational("5") == 5);
  CHECK_THROWS_AS((void)parse_rational("1/0"), Error);
}

TEST_CASE("merging a power chain into one subexponential bound") {
  std::vector<FuncDesc> gs = {FuncDesc::power(1), FuncDesc::power(2),
                              FuncDesc::power(3)};
  MergeResult m = merge_subexponential(gs, 1000);
  CHECK(m.thresholds == std::vector<uint64_t>{1, 11, 36});
  CHECK(m.prec.indeterminate == 0);
  CHECK(m.f.family() == FuncDesc::Family::table);
  CHECK(m.f.eval_exact(10) == 10);
  CHECK(m.f.eval_exact(11) == 121);
  CHECK(m.f.eval_exact(35) == 1225);
  CHECK(m.f.eval_exact(36) == 46656);
  CHECK(m.f.eval_exact(1000) == 1000000000);
  CHECK(m.f.pieces().at(10) == 1);
  CHECK(m.f.pieces().at(11) == 2);
  CHECK(m.f.pieces().at(36) == 3);
  CHECK(m.f.table_values().size() == 1000);

  MergeResult single = merge_subexponential({FuncDesc::power(2)}, 100);
  CHECK(single.thresholds == std::vector<uint64_t>{1});
}

TEST_CASE("merge rejects unusable inputs") {
  CHECK(kind_of([] {
          (void)merge_subexponential({FuncDesc::exp_power(1, 2)}, 100);
        }) == ErrKind::precondition);
  CHECK(kind_of([] {
          (void)merge_subexponential({FuncDesc::power(2), FuncDesc::power(1)},
                                     100);
        }) == ErrKind::precondition);
  CHECK(kind_of([] {
          (void)merge_subexponential({FuncDesc::exponential(Rat(1))}, 100);
        }) == ErrKind::precondition);
}

TEST_CASE("superlinearization of a constant bound") {
  SuperlinResult s = superlinearize(FuncDesc::constant(Rat(1)), 20);
  CHECK(s.thresholds ==
        std::vector<uint64_t>{1, 2, 4, 6, 9, 11, 14, 17, 20});
  CHECK(s.mu_at_horizon == 9);
  CHECK(s.mu.eval_exact(1) == 1);
  CHECK(s.mu.eval_exact(3) == 2);
  CHECK(s.mu.eval_exact(20) == 9);
  CHECK(s.h.eval_exact(20) == 180);
  CHECK(s.prec.indeterminate == 0);
  CHECK(kind_of([] {
          (void)superlinearize(FuncDesc::exponential(Rat(1)), 50);
        }) == ErrKind::precondition);
}

TEST_CASE("superlinearization of a stretched exponential") {
  SuperlinResult s = superlinearize(FuncDesc::exp_power(1, 2), 2000);
  CHECK(s.thresholds ==
        std::vector<uint64_t>{2, 11, 34, 75, 141, 238, 370, 545, 769, 1046,
                              1384, 1788});
  CHECK(s.mu_at_horizon == 12);
  CHECK(s.prec.indeterminate == 0);
  // mu is nondecreasing along the ladder; its table opens at n_1 = 2
  CHECK(kind_of([&] { (void)s.mu.eval_exact(1); }) == ErrKind::range);
  uint64_t prev = 0;
  for (uint64_t n = 2; n <= 2000; n += 97) {
    uint64_t mu = mpz_class(s.mu.eval_exact(n).get_num()).get_ui();
    CHECK(mu >= prev);
    prev = mu;
  }
}

TEST_CASE("dilution thresholds follow the h bound") {
  AlgebraSpec p = f2x();
  AlgElement x = parse_element(p, "x");

  std::vector<AlgElement> gens(50, x);
  std::vector<uint64_t> cs;
  std::vector<Rat> eps;
  for (uint64_t k = 1; k <= 50; ++k) {
    cs.push_back(k);
    eps.push_back(Rat(1, static_cast<long>(k)));
  }
  DilutionPlan plan =
      build_dilution(p, gens, cs, eps, FuncDesc::power(2), 100);
  REQUIRE(plan.thresholds.size() == 50);
  for (uint64_t k = 1; k <= 50; ++k) CHECK(plan.thresholds[k - 1] == k);
  CHECK(plan.sequence_entries.size() == 50);
  CHECK(plan.sequence_entries.at(17) == x);
  CHECK(plan.prec.indeterminate == 0);

  DilutionPlan lone = build_dilution(p, {x}, {1}, {Rat(1)},
                                     FuncDesc::n_ln_n_plus_n(), 50);
  CHECK(lone.thresholds == std::vector<uint64_t>{1});

  DilutionPlan pair = build_dilution(p, {x, x}, {1, 2}, {Rat(1), Rat(1, 2)},
                                     FuncDesc::n_ceil_ln_n(), 50);
  CHECK(pair.thresholds == std::vector<uint64_t>{1, 3});
}

TEST_CASE("dilution validates its inputs") {
  AlgebraSpec p = f2x();
  AlgElement x = parse_element(p, "x");
  CHECK(kind_of([&] {
          (void)build_dilution(p, {x, x}, {1}, {Rat(1)}, FuncDesc::power(2),
                               50);
        }) == ErrKind::config);
  CHECK(kind_of([&] {
          (void)build_dilution(p, {x, x}, {1, 1}, {Rat(1), Rat(1)},
                               FuncDesc::power(2), 50);
        }) == ErrKind::config);
  // h(n)/n must be nondecreasing
  CHECK(kind_of([&] {
          (void)build_dilution(p, {x}, {1}, {Rat(1)}, FuncDesc::constant(Rat(1)),
                               20);
        }) == ErrKind::precondition);
  CHECK(kind_of([&] {
          (void)build_dilution(p, {x}, {50}, {Rat(1)}, FuncDesc::power(1), 20);
        }) == ErrKind::horizon_too_small);
}

TEST_CASE("constant fit against the growth inequality") {
  AlgebraSpec p = f2x();
  AlgElement x = parse_element(p, "x");
  FitResult one = fit_eq1(p, {x}, FuncDesc::power(1), {Rat(1)}, 12);
  CHECK(one.all_ok);
  REQUIRE(one.cs.size() == 1);
  CHECK(one.cs[0] == 1);
  CHECK(one.prec.indeterminate == 0);

  AlgebraSpec pq = f2xy();
  std::vector<AlgElement> xy = {parse_element(pq, "x"), parse_element(pq, "y")};
  FitResult two =
      fit_eq1(pq, xy, FuncDesc::power(2), {Rat(1), Rat(1, 2)}, 10);
  CHECK(two.all_ok);
  REQUIRE(two.cs.size() == 2);
  CHECK(two.cs[0] == 1);
  CHECK(two.cs[1] == 2);

  FitResult fails = fit_eq1(p, {x}, FuncDesc::constant(Rat(1)), {Rat(1, 2)},
                            12, 8);
  CHECK(!fails.all_ok);
  CHECK(!fails.cs[0].has_value());
  CHECK(!fails.notes.empty());
}

TEST_CASE("log-log slope recovers polynomial degree") {
  for (uint64_t d = 0; d <= 3; ++d) {
    std::vector<uint64_t> vals;
    for (uint64_t n = 1; n <= 100; ++n) {
      uint64_t p = 1;
      for (uint64_t i = 0; i < d; ++i) p *= n;
      vals.push_back(p);
    }
    SlopeResult s = gk_slope(vals, 20, 100);
    Rat err = s.slope - Rat(static_cast<long>(d));
    if (err < 0) err = -err;
    CHECK(err < Rat(1, 100));
  }
  CHECK(kind_of([] { (void)gk_slope({1, 2, 3}, 2, 5); }) == ErrKind::range);
  CHECK(kind_of([] {
          (void)gk_slope({1, 2, 3, 4, 5, 6}, 5, 5);
        }) == ErrKind::range);
  CHECK(kind_of([] {
          (void)gk_slope({1, 2, 3, 4, 5, 6}, 0, 5);
        }) == ErrKind::precondition);
}

TEST_CASE("pointwise domination witness") {
  PreceqResult ok = preceq_witness(FuncDesc::power(1), FuncDesc::power(1), 1,
                                   Rat(0), 1, 100);
  CHECK(ok.holds);
  CHECK(ok.witness == 0);
  CHECK(ok.indeterminate == 0);

  PreceqResult bad = preceq_witness(FuncDesc::exponential(Rat(1)),
                                    FuncDesc::power(2), 10, Rat(2), 1, 50);
  CHECK(!bad.holds);
  CHECK(bad.witness == 19);
}

TEST_CASE("subexponential tail probe") {
  std::vector<uint64_t> quintic;
  for (uint64_t n = 1; n <= 500; ++n) {
    uint64_t p = 1;
    for (int i = 0; i < 5; ++i) p *= n;
    quintic.push_back(p);
  }
  ProbeResult pr = subexp_probe(quintic, {Rat(1, 10)});
  CHECK(pr.tail_start == 451);
  REQUIRE(pr.entries.size() == 1);
  CHECK(pr.entries[0].trend_decreasing);
  CHECK(!pr.entries[0].flagged_non_subexp);
  CHECK(pr.entries[0].argmax == 451);
  CHECK(pr.entries[0].max_ratio == "4.83283e-7");
  CHECK(pr.entries[0].indeterminate == 0);

  std::vector<uint64_t> doubling;
  for (uint64_t n = 1; n <= 60; ++n) doubling.push_back(uint64_t{1} << n);
  ProbeResult p2 = subexp_probe(doubling, {Rat(1, 2)});
  CHECK(p2.tail_start == 55);
  CHECK(!p2.entries[0].trend_decreasing);
  CHECK(p2.entries[0].flagged_non_subexp);

  ProbeResult flat = subexp_probe(std::vector<uint64_t>(50, 1), {Rat(1)});
  CHECK(flat.tail_start == 46);
  CHECK(flat.entries[0].trend_decreasing);
  CHECK(!flat.entries[0].flagged_non_subexp);
  CHECK(flat.entries[0].max_ratio == "1.05306e-20");
}
