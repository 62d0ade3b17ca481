#include "wreath/scalar.hpp"

namespace wreath {

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

} // namespace

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // deterministic Miller-Rabin bases for 64-bit
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

Field Field::gf(uint64_t p) {
  if (p < 2 || p >= (uint64_t{1} << 62) || !is_prime_u64(p))
    fail(ErrKind::config, "field modulus must be a prime below 2^62, got " +
                              std::to_string(p));
  return Field(Kind::gf, p);
}

Field Field::rationals() { return Field(Kind::rational, 0); }

Scalar Field::zero() const {
  return kind_ == Kind::gf ? Scalar(uint64_t{0}) : Scalar(mpq_class(0));
}

Scalar Field::one() const {
  return kind_ == Kind::gf ? Scalar(uint64_t{1} % p_) : Scalar(mpq_class(1));
}

Scalar Field::from_int(long long n) const {
  if (kind_ == Kind::rational) return Scalar(mpq_class(static_cast<long>(n)));
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar(static_cast<uint64_t>(r));
}

Scalar Field::from_fraction(long long num, long long den) const {
  if (den == 0) fail(ErrKind::config, "scalar literal with zero denominator");
  return mul(from_int(num), inv(from_int(den)));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::gf) {
    uint64_t s = a.gf() + b.gf();
    if (s >= p_) s -= p_;
    return Scalar(s);
  }
  return Scalar(mpq_class(a.rat() + b.rat()));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::gf) {
    uint64_t s = a.gf() + p_ - b.gf();
    if (s >= p_) s -= p_;
    return Scalar(s);
  }
  return Scalar(mpq_class(a.rat() - b.rat()));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  if (kind_ == Kind::gf) return Scalar(mulmod(a.gf(), b.gf(), p_));
  return Scalar(mpq_class(a.rat() * b.rat()));
}

Scalar Field::neg(const Scalar& a) const {
  if (kind_ == Kind::gf) return a.gf() == 0 ? a : Scalar(p_ - a.gf());
  return Scalar(mpq_class(-a.rat()));
}

Scalar Field::inv(const Scalar& a) const {
  if (is_zero(a)) fail(ErrKind::precondition, "inverse of zero");
  if (kind_ == Kind::gf) return Scalar(powmod(a.gf(), p_ - 2, p_));
  return Scalar(mpq_class(1 / a.rat()));
}

bool Field::is_zero(const Scalar& a) const {
  return kind_ == Kind::gf ? a.gf() == 0 : a.rat() == 0;
}

bool Field::is_one(const Scalar& a) const {
  return kind_ == Kind::gf ? a.gf() == 1 % p_ : a.rat() == 1;
}

std::string Field::to_string(const Scalar& a) const {
  return kind_ == Kind::gf ? std::to_string(a.gf()) : a.rat().get_str();
}

} // namespace wreath
