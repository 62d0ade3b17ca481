#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <string>

#include "wreath/errors.hpp"

namespace wreath {

using Rat = mpq_class;

// Closed rational interval certified to contain the exact real value.
struct Ival {
  Rat lo, hi;
  Ival() : lo(0), hi(0) {}
  explicit Ival(const Rat& v) : lo(v), hi(v) {}
  Ival(Rat l, Rat h);
};

enum class Tri { yes, no, maybe };

// Directed rounding to denominator 2^bits (outward when paired).
Rat round_down(const Rat& v, long bits);
Rat round_up(const Rat& v, long bits);
Ival round_out(const Ival& v, long bits);

Ival iv_add(const Ival& a, const Ival& b, long bits);
Ival iv_sub(const Ival& a, const Ival& b, long bits);
Ival iv_mul(const Ival& a, const Ival& b, long bits);
Ival iv_div(const Ival& a, const Ival& b, long bits); // b must exclude 0
Ival iv_neg(const Ival& a);

// e^x; series remainders bounded outward, argument any sign.
Ival exp_ival(const Ival& x, long bits);

Ival ln_mpz(const mpz_class& n, long bits); // n >= 1
Ival ln_rat(const Rat& v, long bits);       // v > 0
Ival ln_ival(const Ival& v, long bits);     // v.lo > 0

// n^{p/q} with directed q-th-root bounds.
Ival root_ival(const mpz_class& n, unsigned long p, unsigned long q, long bits);

Tri cmp_le(const Ival& a, const Ival& b);
Tri cmp_lt(const Ival& a, const Ival& b);

// Truncated scientific notation, deterministic.
std::string rat_decimal(const Rat& v, int sig_digits);

// Exact ceil(ln n); well-defined because ln n is irrational for n >= 2.
uint64_t ceil_ln_u64(uint64_t n);

// Escalation ladder for interval comparisons (~48 to ~770 decimal digits).
inline constexpr long kPrecLadder[] = {160, 320, 640, 1280, 2560};

struct Decision {
  Tri t = Tri::maybe;
  long bits = 0;
};

// Runs the predicate up the ladder until it decides.
Decision decide(const std::function<Tri(long)>& attempt);

// Bookkeeping for a scan: widest precision used, undecided comparisons.
struct Prec {
  long max_bits = kPrecLadder[0];
  uint64_t indeterminate = 0;

  void absorb(const Decision& d) {
    if (d.bits > max_bits) max_bits = d.bits;
    if (d.t == Tri::maybe) ++indeterminate;
  }
};

} // namespace wreath
