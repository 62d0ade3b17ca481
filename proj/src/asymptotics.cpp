#include "wreath/asymptotics.hpp"

#include <algorithm>

#include "wreath/growth.hpp"

namespace wreath {

namespace {

void check_root_exponent(const Rat& e, const char* what) {
  if (sgn(e) < 0) fail(ErrKind::precondition, std::string(what) + " must be >= 0");
  if (e.get_num() > 64 || e.get_den() > 64)
    fail(ErrKind::config, std::string(what) + " must be p/q with p,q <= 64");
}

Ival pow_rat_exp(uint64_t n, const Rat& e, long bits) {
  return root_ival(mpz_class(static_cast<unsigned long>(n)),
                   mpz_get_ui(e.get_num().get_mpz_t()),
                   mpz_get_ui(e.get_den().get_mpz_t()), bits);
}

// Largest m in [lo, hi] where cond fails (certified-true required to pass),
// or lo-1 if the condition is certified on the whole range.
uint64_t last_failure(uint64_t lo, uint64_t hi,
                      const std::function<Tri(uint64_t, long)>& cond,
                      Prec& prec) {
  for (uint64_t m = hi; m >= lo; --m) {
    Decision d = decide([&](long bits) { return cond(m, bits); });
    prec.absorb(d);
    if (d.t != Tri::yes) return m;
    if (m == lo) break;
  }
  return lo - 1;
}

uint64_t table_start(const FuncDesc& f) {
  if (f.family() != FuncDesc::Family::table) return 1;
  return f.table_values().begin()->first;
}

} // namespace

MergeResult merge_subexponential(const std::vector<FuncDesc>& gs,
                                 uint64_t horizon) {
  if (gs.empty()) fail(ErrKind::config, "merge needs at least one input");
  if (horizon == 0) fail(ErrKind::config, "merge horizon must be >= 1");
  for (const auto& g : gs) {
    if (!g.claimed_subexponential())
      fail(ErrKind::precondition,
           g.describe() + " is not claimed subexponential");
    if (!g.is_rational())
      fail(ErrKind::precondition,
           g.describe() + " has no exact values; a merged table needs them");
  }
  for (size_t k = 0; k + 1 < gs.size(); ++k)
    for (uint64_t n = 1; n <= horizon; ++n)
      if (gs[k].eval_exact(n) > gs[k + 1].eval_exact(n))
        fail(ErrKind::precondition,
             "inputs are not pointwise increasing at n=" + std::to_string(n) +
                 " between " + gs[k].describe() + " and " +
                 gs[k + 1].describe());

  MergeResult out;
  uint64_t prev = 0;
  for (size_t idx = 0; idx < gs.size(); ++idx) {
    uint64_t k = idx + 1;
    mpz_class kz(static_cast<unsigned long>(k));
    auto cond = [&](uint64_t m, long bits) {
      Ival lhs = iv_add(gs[idx].eval_ln(m, bits), ln_mpz(kz, bits), bits);
      return cmp_le(lhs, Ival(Rat(static_cast<unsigned long>(m)) /
                              Rat(static_cast<unsigned long>(k))));
    };
    uint64_t fail_at = last_failure(1, horizon, cond, out.prec);
    uint64_t nk = std::max(fail_at + 1, prev + 1);
    if (nk > horizon)
      fail(ErrKind::horizon_too_small,
           "no threshold for input " + std::to_string(k) + " within horizon " +
               std::to_string(horizon));
    out.thresholds.push_back(nk);
    prev = nk;
  }

  std::map<uint64_t, Rat> values;
  std::map<uint64_t, uint64_t> piece;
  size_t active = 0;
  for (uint64_t n = out.thresholds[0]; n <= horizon; ++n) {
    while (active + 1 < out.thresholds.size() &&
           out.thresholds[active + 1] <= n)
      ++active;
    values.emplace(n, gs[active].eval_exact(n));
    piece.emplace(n, active + 1);
  }
  out.f = FuncDesc::table(std::move(values), FuncDesc::Extension::error,
                          "merged(" + std::to_string(gs.size()) + " inputs)");
  for (const auto& [n, k] : piece) out.f.set_piece(n, k);
  out.f.set_claimed_subexponential(true);
  return out;
}

SuperlinResult superlinearize(const FuncDesc& f, uint64_t horizon) {
  if (horizon == 0) fail(ErrKind::config, "horizon must be >= 1");
  if (!f.claimed_subexponential())
    fail(ErrKind::precondition, f.describe() + " is not claimed subexponential");
  if (!f.increasing())
    fail(ErrKind::precondition, f.describe() + " is not increasing");

  SuperlinResult out;
  uint64_t prev = 0;
  for (uint64_t k = 1;; ++k) {
    mpz_class kz(static_cast<unsigned long>(k));
    auto cond = [&](uint64_t m, long bits) {
      Ival lhs = iv_add(f.eval_ln(k * m, bits), ln_mpz(kz, bits), bits);
      return cmp_lt(lhs, Ival(Rat(static_cast<unsigned long>(m)) /
                              Rat(static_cast<unsigned long>(k))));
    };
    uint64_t fail_at = last_failure(1, horizon, cond, out.prec);
    uint64_t nk = std::max(fail_at + 1, prev + 1);
    if (nk > horizon) {
      if (k == 1)
        fail(ErrKind::horizon_too_small,
             "no superlinearization threshold for " + f.describe() +
                 " within horizon " + std::to_string(horizon));
      break;
    }
    out.thresholds.push_back(nk);
    prev = nk;
  }

  std::map<uint64_t, Rat> mu_vals, h_vals;
  size_t active = 0;
  for (uint64_t n = out.thresholds[0]; n <= horizon; ++n) {
    while (active + 1 < out.thresholds.size() &&
           out.thresholds[active + 1] <= n)
      ++active;
    uint64_t mu = active + 1;
    mu_vals.emplace(n, Rat(static_cast<unsigned long>(mu)));
    h_vals.emplace(n, Rat(static_cast<unsigned long>(n)) *
                          Rat(static_cast<unsigned long>(mu)));
  }
  out.mu_at_horizon = out.thresholds.size();
  out.mu = FuncDesc::table(std::move(mu_vals), FuncDesc::Extension::error,
                           "mu(" + f.describe() + ")");
  out.h = FuncDesc::table(std::move(h_vals), FuncDesc::Extension::error,
                          "superlinearize(" + f.describe() + ")");
  return out;
}

DilutionPlan build_dilution(const AlgebraSpec& alg,
                            std::vector<AlgElement> generators,
                            std::vector<uint64_t> cs, std::vector<Rat> eps,
                            const FuncDesc& h, uint64_t horizon) {
  (void)alg;
  if (cs.size() != generators.size() || eps.size() != generators.size())
    fail(ErrKind::config, "generators, constants, and exponents must align");
  if (horizon == 0) fail(ErrKind::config, "horizon must be >= 1");
  for (uint64_t c : cs)
    if (c < 1) fail(ErrKind::config, "constants must be >= 1");
  for (size_t k = 0; k < eps.size(); ++k) {
    if (sgn(eps[k]) <= 0) fail(ErrKind::config, "exponents must be positive");
    if (k > 0 && eps[k] >= eps[k - 1])
      fail(ErrKind::config, "exponents must strictly decrease");
  }
  for (const auto& b : generators)
    if (b.is_zero()) fail(ErrKind::config, "zero generator in dilution plan");

  DilutionPlan plan;
  plan.h = h;
  uint64_t lo = table_start(h);
  if (lo > horizon)
    fail(ErrKind::horizon_too_small, "h is undefined below the horizon end");

  bool exact = h.is_rational();
  for (uint64_t n = lo; n + 1 <= horizon; ++n) {
    // h(n)/n nondecreasing <=> h(n+1)*n >= h(n)*(n+1)
    if (exact) {
      if (h.eval_exact(n + 1) * Rat(static_cast<unsigned long>(n)) <
          h.eval_exact(n) * Rat(static_cast<unsigned long>(n + 1)))
        fail(ErrKind::precondition,
             "h(n)/n decreases at n=" + std::to_string(n));
    } else {
      Decision d = decide([&](long bits) {
        Ival a = iv_mul(h.eval(n, bits), Ival(Rat(static_cast<unsigned long>(n + 1))), bits);
        Ival b = iv_mul(h.eval(n + 1, bits), Ival(Rat(static_cast<unsigned long>(n))), bits);
        return cmp_le(a, b);
      });
      plan.prec.absorb(d);
      if (d.t != Tri::yes)
        fail(ErrKind::precondition,
             "could not certify h(n)/n nondecreasing at n=" + std::to_string(n));
    }
  }

  uint64_t prev = lo > 0 ? lo - 1 : 0;
  for (size_t k = 0; k < generators.size(); ++k) {
    Rat c(static_cast<unsigned long>(cs[k]));
    std::function<Tri(uint64_t, long)> cond;
    if (exact) {
      cond = [&](uint64_t m, long) {
        return c * Rat(static_cast<unsigned long>(m)) <= h.eval_exact(m)
                   ? Tri::yes
                   : Tri::no;
      };
    } else {
      cond = [&](uint64_t m, long bits) {
        return cmp_le(Ival(c * Rat(static_cast<unsigned long>(m))),
                      h.eval(m, bits));
      };
    }
    uint64_t fail_at = last_failure(lo, horizon, cond, plan.prec);
    uint64_t nk = std::max(fail_at + 1, prev + 1);
    if (nk > horizon)
      fail(ErrKind::horizon_too_small,
           "no dilution threshold for c_" + std::to_string(k + 1) + "=" +
               std::to_string(cs[k]) + " within horizon " +
               std::to_string(horizon));
    plan.thresholds.push_back(nk);
    plan.sequence_entries.emplace(nk, generators[k]);
    prev = nk;
  }
  plan.generators = std::move(generators);
  plan.cs = std::move(cs);
  plan.eps = std::move(eps);
  return plan;
}

FitResult fit_eq1(const AlgebraSpec& alg,
                  const std::vector<AlgElement>& generators, const FuncDesc& f,
                  const std::vector<Rat>& eps, uint64_t horizon,
                  uint64_t c_cap) {
  if (generators.empty()) fail(ErrKind::config, "fit needs generators");
  if (eps.size() != generators.size())
    fail(ErrKind::config, "one exponent per generator prefix required");
  if (horizon == 0) fail(ErrKind::config, "horizon must be >= 1");
  if (c_cap < 1) fail(ErrKind::config, "constant cap must be >= 1");
  for (const auto& e : eps) check_root_exponent(e, "fit exponent");

  FitResult out;
  out.eps = eps;
  for (size_t k = 0; k < generators.size(); ++k) {
    std::vector<AlgElement> prefix(generators.begin(),
                                   generators.begin() + k + 1);
    GrowthSeries dims = algebra_growth(alg, prefix, horizon);
    bool eps_integral = eps[k].get_den() == 1;
    std::optional<uint64_t> found;
    for (uint64_t c = 1; c <= c_cap && !found; ++c) {
      bool ok = true;
      for (uint64_t n = 1; n <= horizon && ok; ++n) {
        Rat dim(static_cast<unsigned long>(dims.values[n - 1]));
        if (f.is_rational() && eps_integral) {
          mpz_class np;
          mpz_ui_pow_ui(np.get_mpz_t(), n,
                        mpz_get_ui(eps[k].get_num().get_mpz_t()));
          ok = dim <= f.eval_exact(c * n) * Rat(np);
          continue;
        }
        Decision d = decide([&](long bits) {
          Ival rhs = iv_mul(f.eval(c * n, bits), pow_rat_exp(n, eps[k], bits),
                            bits);
          return cmp_le(Ival(dim), rhs);
        });
        out.prec.absorb(d);
        ok = d.t == Tri::yes;
      }
      if (ok) found = c;
    }
    out.cs.push_back(found);
    if (!found) {
      out.all_ok = false;
      out.notes.push_back("prefix " + std::to_string(k + 1) + ": no c <= " +
                          std::to_string(c_cap) + " satisfies dim <= " +
                          f.describe() + "(c*n)*n^(" + eps[k].get_str() + ")");
    }
  }
  return out;
}

SlopeResult gk_slope(const std::vector<uint64_t>& values, uint64_t n0,
                     uint64_t n1) {
  if (n0 < 2) fail(ErrKind::precondition, "slope window must start at n >= 2");
  if (n1 <= n0 || n1 > values.size())
    fail(ErrKind::range, "slope window outside the series");
  const long bits = kPrecLadder[0];
  Rat sx = 0, sy = 0, sxx = 0, sxy = 0;
  unsigned long count = 0;
  for (uint64_t n = n0; n <= n1; ++n) {
    uint64_t v = values[n - 1];
    if (v == 0)
      fail(ErrKind::precondition,
           "series value is zero at n=" + std::to_string(n));
    Ival lx = ln_mpz(mpz_class(static_cast<unsigned long>(n)), bits);
    Ival ly = ln_mpz(mpz_class(static_cast<unsigned long>(v)), bits);
    Rat x = (lx.lo + lx.hi) / 2;
    Rat y = (ly.lo + ly.hi) / 2;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  Rat num = Rat(count) * sxy - sx * sy;
  Rat den = Rat(count) * sxx - sx * sx;
  if (sgn(den) == 0) fail(ErrKind::precondition, "degenerate slope window");
  return {num / den, bits};
}

Report corollary1_check(const std::vector<uint64_t>& w_values,
                        const std::vector<uint64_t>& g_values) {
  Report rep;
  rep.name = "corollary1";
  uint64_t nw = w_values.size();
  rep.params["w_horizon"] = std::to_string(nw);
  if (g_values.size() < 2 * nw + 1)
    fail(ErrKind::range, "second series must reach 2n+1 for every w point");
  for (uint64_t n = 1; n <= nw; ++n) {
    mpz_class w(static_cast<unsigned long>(w_values[n - 1]));
    mpz_class g(static_cast<unsigned long>(g_values[n - 1]));
    mpz_class g2(static_cast<unsigned long>(g_values[2 * n]));
    mpz_class m(static_cast<unsigned long>(2 * n + 1));
    ++rep.checked;
    if (w > g2)
      rep.fail_with("w(" + std::to_string(n) + ") = " + w.get_str() +
                    " > g(" + std::to_string(2 * n + 1) + ") = " +
                    g2.get_str());
    if (g > 2 * m * m * w + m)
      rep.fail_with("g(" + std::to_string(n) + ") = " + g.get_str() +
                    " > 2(2n+1)^2 w(n) + 2n+1 = " +
                    mpz_class(2 * m * m * w + m).get_str());
  }
  return rep;
}

PreceqResult preceq_witness(const FuncDesc& f, const FuncDesc& g, uint64_t c,
                            const Rat& alpha, uint64_t lo, uint64_t hi) {
  if (c < 1) fail(ErrKind::config, "comparison constant must be >= 1");
  if (lo < 1 || hi < lo) fail(ErrKind::range, "bad comparison range");
  check_root_exponent(alpha, "comparison exponent");
  PreceqResult out;
  for (uint64_t n = lo; n <= hi; ++n) {
    Decision d = decide([&](long bits) {
      Ival rhs = iv_mul(Ival(Rat(static_cast<unsigned long>(c))),
                        g.eval(c * n, bits), bits);
      if (sgn(alpha) > 0) rhs = iv_mul(rhs, pow_rat_exp(n, alpha, bits), bits);
      return cmp_le(f.eval(n, bits), rhs);
    });
    if (d.bits > out.bits) out.bits = d.bits;
    if (d.t == Tri::no) {
      out.holds = false;
      out.witness = n;
      return out;
    }
    if (d.t == Tri::maybe) ++out.indeterminate;
  }
  return out;
}

ProbeResult subexp_probe(const std::vector<uint64_t>& values,
                         const std::vector<Rat>& alphas) {
  if (values.empty()) fail(ErrKind::precondition, "empty series");
  uint64_t n_max = values.size();
  uint64_t tail_len = std::max<uint64_t>(n_max / 10, std::min<uint64_t>(n_max, 2));
  ProbeResult out;
  out.tail_start = n_max - tail_len + 1;
  for (uint64_t n = out.tail_start; n <= n_max; ++n)
    if (values[n - 1] == 0)
      fail(ErrKind::precondition,
           "probe tail has a zero value at n=" + std::to_string(n));

  auto ln_at = [&](uint64_t n, const Rat& alpha, long bits) {
    Ival l = ln_mpz(mpz_class(static_cast<unsigned long>(values[n - 1])), bits);
    Rat shift = alpha * Rat(static_cast<unsigned long>(n));
    return round_out({l.lo - shift, l.hi - shift}, bits);
  };

  for (const Rat& alpha : alphas) {
    if (sgn(alpha) <= 0)
      fail(ErrKind::precondition, "probe rate must be positive");
    ProbeEntry entry;
    entry.alpha = alpha;
    for (uint64_t n = out.tail_start; n + 1 <= n_max; ++n) {
      Decision d = decide([&](long bits) {
        Ival diff = iv_sub(
            ln_mpz(mpz_class(static_cast<unsigned long>(values[n])), bits),
            ln_mpz(mpz_class(static_cast<unsigned long>(values[n - 1])), bits),
            bits);
        return cmp_lt(diff, Ival(alpha));
      });
      if (d.t == Tri::maybe) ++entry.indeterminate;
      if (d.t != Tri::yes) entry.trend_decreasing = false;
    }
    entry.flagged_non_subexp = !entry.trend_decreasing;
    uint64_t best = out.tail_start;
    for (uint64_t n = out.tail_start + 1; n <= n_max; ++n) {
      Decision d = decide([&](long bits) {
        return cmp_lt(ln_at(best, alpha, bits), ln_at(n, alpha, bits));
      });
      if (d.t == Tri::yes) best = n;
      if (d.t == Tri::maybe) ++entry.indeterminate;
    }
    entry.argmax = best;
    Ival ratio = exp_ival(ln_at(best, alpha, 320), kPrecLadder[0]);
    entry.max_ratio = rat_decimal(ratio.hi, 6);
    out.entries.push_back(entry);
  }
  return out;
}

} // namespace wreath
