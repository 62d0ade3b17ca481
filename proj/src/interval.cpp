#include "wreath/interval.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace wreath {

Ival::Ival(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) fail(ErrKind::internal, "inverted interval");
}

Rat round_down(const Rat& v, long bits) {
  mpz_class scaled_num = v.get_num() << static_cast<unsigned long>(bits);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v.get_den().get_mpz_t());
  Rat r(q, mpz_class(1) << static_cast<unsigned long>(bits));
  r.canonicalize();
  return r;
}

Rat round_up(const Rat& v, long bits) {
  mpz_class scaled_num = v.get_num() << static_cast<unsigned long>(bits);
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v.get_den().get_mpz_t());
  Rat r(q, mpz_class(1) << static_cast<unsigned long>(bits));
  r.canonicalize();
  return r;
}

Ival round_out(const Ival& v, long bits) {
  return {round_down(v.lo, bits), round_up(v.hi, bits)};
}

Ival iv_add(const Ival& a, const Ival& b, long bits) {
  return round_out({a.lo + b.lo, a.hi + b.hi}, bits);
}

Ival iv_sub(const Ival& a, const Ival& b, long bits) {
  return round_out({a.lo - b.hi, a.hi - b.lo}, bits);
}

Ival iv_mul(const Ival& a, const Ival& b, long bits) {
  Rat c1 = a.lo * b.lo, c2 = a.lo * b.hi, c3 = a.hi * b.lo, c4 = a.hi * b.hi;
  Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
  Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return round_out({lo, hi}, bits);
}

Ival iv_div(const Ival& a, const Ival& b, long bits) {
  if (sgn(b.lo) <= 0 && sgn(b.hi) >= 0)
    fail(ErrKind::precondition, "interval division by an interval containing 0");
  Rat c1 = a.lo / b.lo, c2 = a.lo / b.hi, c3 = a.hi / b.lo, c4 = a.hi / b.hi;
  Rat lo = std::min(std::min(c1, c2), std::min(c3, c4));
  Rat hi = std::max(std::max(c1, c2), std::max(c3, c4));
  return round_out({lo, hi}, bits);
}

Ival iv_neg(const Ival& a) { return {-a.hi, -a.lo}; }

namespace {

// smallest N with (N+1)! > 2^(bits+4); series remainder of e^f, f in [0,1],
// after N terms is at most 2/(N+1)!
int exp_terms(long bits) {
  mpz_class fact = 1;
  int n = 0;
  mpz_class bound = mpz_class(1) << static_cast<unsigned long>(bits + 4);
  while (fact <= bound) {
    ++n;
    fact *= n + 1;
  }
  return n;
}

// e^f for rational f in [0,1]
Ival exp_frac(const Rat& f, long bits) {
  int N = exp_terms(bits);
  Rat sum = 1, term = 1;
  for (int j = 1; j <= N; ++j) {
    term *= f;
    term /= j;
    sum += term;
  }
  mpz_class fact = 1;
  for (int j = 1; j <= N + 1; ++j) fact *= j;
  Rat rem = Rat(2) / Rat(fact);
  return round_out({sum, sum + rem}, bits + 8);
}

Ival exp_nonneg(const Rat& r, long bits) {
  long wb = bits + 32;
  mpz_class ipart = r.get_num() / r.get_den(); // floor, r >= 0
  Rat frac = r - Rat(ipart);
  Ival result = exp_frac(frac, wb);
  if (ipart > 0) {
    Ival e1 = exp_frac(Rat(1), wb);
    // e^ipart by squaring, rounding outward each step
    Ival acc(Rat(1));
    Ival base = e1;
    mpz_class k = ipart;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) acc = iv_mul(acc, base, wb);
      k >>= 1;
      if (k > 0) base = iv_mul(base, base, wb);
    }
    result = iv_mul(result, acc, wb);
  }
  return round_out(result, bits);
}

} // namespace

Ival exp_ival(const Ival& x, long bits) {
  auto one_sided = [&](const Rat& r, bool want_hi) -> Rat {
    if (sgn(r) >= 0) {
      Ival e = exp_nonneg(r, bits + 8);
      return want_hi ? e.hi : e.lo;
    }
    Ival e = exp_nonneg(-r, bits + 8);
    // 1/e^{-r}: directed reciprocal
    return want_hi ? round_up(Rat(1) / e.lo, bits + 8)
                   : round_down(Rat(1) / e.hi, bits + 8);
  };
  return round_out({one_sided(x.lo, false), one_sided(x.hi, true)}, bits);
}

namespace {

// 2*atanh(z) = ln((1+z)/(1-z)) for rational z in [0, 1/3]
Ival two_atanh(const Rat& z, long bits) {
  if (sgn(z) == 0) return Ival(Rat(0));
  Rat z2 = z * z;
  Rat pow = z, sum = 0;
  int j = 0;
  Rat eps(mpz_class(1), mpz_class(1) << static_cast<unsigned long>(bits + 6));
  for (;;) {
    sum += pow / (2 * j + 1);
    pow *= z2;
    ++j;
    // remaining tail <= pow * (9/8)
    if (pow * Rat(9, 8) < eps) break;
  }
  Rat rem = pow * Rat(9, 8);
  return round_out({2 * sum, 2 * (sum + rem)}, bits + 6);
}

const Ival& ln2_cached(long bits) {
  static std::map<long, Ival> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bits);
  if (it == cache.end())
    it = cache.emplace(bits, two_atanh(Rat(1, 3), bits)).first;
  return it->second;
}

} // namespace

Ival ln_mpz(const mpz_class& n, long bits) {
  if (n < 1) fail(ErrKind::precondition, "ln of a nonpositive integer");
  if (n == 1) return Ival(Rat(0));
  long wb = bits + 16;
  unsigned long e = mpz_sizeinbase(n.get_mpz_t(), 2) - 1;
  mpz_class p2 = mpz_class(1) << e;
  // n = 2^e * r with r in [1,2); z = (r-1)/(r+1) = (n-2^e)/(n+2^e) in [0,1/3)
  Rat z(n - p2, n + p2);
  z.canonicalize();
  Ival lnr = two_atanh(z, wb);
  const Ival& l2 = ln2_cached(wb);
  Rat elo = Rat(static_cast<unsigned long>(e)) * l2.lo;
  Rat ehi = Rat(static_cast<unsigned long>(e)) * l2.hi;
  return round_out({elo + lnr.lo, ehi + lnr.hi}, bits);
}

Ival ln_rat(const Rat& v, long bits) {
  if (sgn(v) <= 0) fail(ErrKind::precondition, "ln of a nonpositive rational");
  long wb = bits + 8;
  Ival ln_num = ln_mpz(v.get_num(), wb);
  Ival ln_den = ln_mpz(v.get_den(), wb);
  return round_out({ln_num.lo - ln_den.hi, ln_num.hi - ln_den.lo}, bits);
}

Ival ln_ival(const Ival& v, long bits) {
  if (sgn(v.lo) <= 0)
    fail(ErrKind::precondition, "ln of an interval touching 0");
  Ival a = ln_rat(v.lo, bits + 4);
  Ival b = ln_rat(v.hi, bits + 4);
  return round_out({a.lo, b.hi}, bits);
}

Ival root_ival(const mpz_class& n, unsigned long p, unsigned long q, long bits) {
  if (sgn(n) < 0) fail(ErrKind::precondition, "root of a negative integer");
  if (q == 0) fail(ErrKind::precondition, "zeroth root");
  if (p > 4096) fail(ErrKind::range, "power exponent too large");
  if (n == 0) return Ival(Rat(0));
  mpz_class m;
  mpz_pow_ui(m.get_mpz_t(), n.get_mpz_t(), p);
  if (q == 1) return Ival(Rat(m));
  unsigned long B = static_cast<unsigned long>(bits);
  mpz_class t = m << (q * B);
  mpz_class r;
  mpz_root(r.get_mpz_t(), t.get_mpz_t(), q);
  mpz_class denom = mpz_class(1) << B;
  Rat lo(r, denom), hi(r + 1, denom);
  lo.canonicalize();
  hi.canonicalize();
  return {lo, hi};
}

Tri cmp_le(const Ival& a, const Ival& b) {
  if (a.hi <= b.lo) return Tri::yes;
  if (a.lo > b.hi) return Tri::no;
  return Tri::maybe;
}

Tri cmp_lt(const Ival& a, const Ival& b) {
  if (a.hi < b.lo) return Tri::yes;
  if (a.lo >= b.hi) return Tri::no;
  return Tri::maybe;
}

std::string rat_decimal(const Rat& v, int sig_digits) {
  if (sgn(v) == 0) return "0";
  if (sig_digits < 1) sig_digits = 1;
  Rat a = abs(v);
  // decimal exponent estimate from digit counts, then corrected
  long e = static_cast<long>(
               mpz_sizeinbase(a.get_num().get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den().get_mpz_t(), 10));
  auto mantissa_at = [&](long exp10) {
    // floor(a * 10^(sig_digits-1-exp10))
    mpz_class num = a.get_num(), den = a.get_den();
    long shift = sig_digits - 1 - exp10;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10,
                  static_cast<unsigned long>(shift >= 0 ? shift : -shift));
    if (shift >= 0)
      num *= p10;
    else
      den *= p10;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
  };
  mpz_class low, high;
  mpz_ui_pow_ui(low.get_mpz_t(), 10,
                static_cast<unsigned long>(sig_digits - 1));
  high = low * 10;
  mpz_class m = mantissa_at(e);
  while (m >= high) {
    ++e;
    m = mantissa_at(e);
  }
  while (m < low) {
    --e;
    m = mantissa_at(e);
  }
  std::string digits = m.get_str();
  std::string out = sgn(v) < 0 ? "-" : "";
  out += digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(e);
  return out;
}

uint64_t ceil_ln_u64(uint64_t n) {
  if (n == 0) fail(ErrKind::precondition, "ceil_ln of 0");
  if (n == 1) return 0;
  for (long bits : kPrecLadder) {
    Ival l = ln_mpz(mpz_class(static_cast<unsigned long>(n)), bits);
    mpz_class clo, chi;
    mpz_cdiv_q(clo.get_mpz_t(), l.lo.get_num().get_mpz_t(),
               l.lo.get_den().get_mpz_t());
    mpz_cdiv_q(chi.get_mpz_t(), l.hi.get_num().get_mpz_t(),
               l.hi.get_den().get_mpz_t());
    if (clo == chi) return chi.get_ui();
  }
  fail(ErrKind::internal, "ceil(ln n) undecided at maximal precision");
}

Decision decide(const std::function<Tri(long)>& attempt) {
  Decision d;
  for (long bits : kPrecLadder) {
    d.t = attempt(bits);
    d.bits = bits;
    if (d.t != Tri::maybe) return d;
  }
  return d;
}

} // namespace wreath
