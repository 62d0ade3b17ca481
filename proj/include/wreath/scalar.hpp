#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "wreath/errors.hpp"

namespace wreath {

bool is_prime_u64(uint64_t n);

// Exact field element: residue mod p, or arbitrary-precision rational.
// All arithmetic goes through Field so a Scalar never outlives its field kind.
class Scalar {
public:
  Scalar() : v_(uint64_t{0}) {}
  explicit Scalar(uint64_t r) : v_(r) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}

  bool is_gf() const { return std::holds_alternative<uint64_t>(v_); }
  uint64_t gf() const { return std::get<uint64_t>(v_); }
  const mpq_class& rat() const { return std::get<mpq_class>(v_); }

  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  bool operator<(const Scalar& o) const {
    if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
    if (is_gf()) return gf() < o.gf();
    return cmp(rat(), o.rat()) < 0;
  }

private:
  std::variant<uint64_t, mpq_class> v_;
};

class Field {
public:
  enum class Kind { gf, rational };

  static Field gf(uint64_t p);
  static Field rationals();

  Kind kind() const { return kind_; }
  uint64_t modulus() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_fraction(long long num, long long den) const; // den inverted

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const; // errors on zero

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;
  std::string to_string(const Scalar& a) const;

  bool operator==(const Field& o) const {
    return kind_ == o.kind_ && p_ == o.p_;
  }

private:
  Field(Kind k, uint64_t p) : kind_(k), p_(p) {}
  Kind kind_;
  uint64_t p_;
};

} // namespace wreath
