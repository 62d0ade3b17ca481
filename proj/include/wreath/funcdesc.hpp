#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wreath/interval.hpp"

namespace wreath {

// Evaluable integer-argument function mapping [1, horizon] into the rationals
// >= 1: a closed-form family or an explicit table with an extension rule.
class FuncDesc {
 public:
  enum class Family {
    constant,
    power,         // n^d
    exponential,   // e^(alpha*n)
    exp_power,     // e^(n^(p/q))
    n_ceil_ln_n,   // n * max(1, ceil(ln n))
    n_ln_n_plus_n, // n*ln(n) + n
    table,
  };
  enum class Extension { error, hold_last };

  FuncDesc() = default; // constant 1

  static FuncDesc constant(const Rat& v);
  static FuncDesc power(uint64_t d);
  static FuncDesc exponential(const Rat& alpha);
  static FuncDesc exp_power(unsigned long p, unsigned long q);
  static FuncDesc n_ceil_ln_n();
  static FuncDesc n_ln_n_plus_n();
  static FuncDesc table(std::map<uint64_t, Rat> values, Extension ext,
                        std::string source);

  Family family() const { return family_; }

  Ival eval(uint64_t n, long bits) const;
  // ln f(n); an exact point for the exponential family.
  Ival eval_ln(uint64_t n, long bits) const;
  bool is_rational() const;
  Rat eval_exact(uint64_t n) const; // requires is_rational()

  bool increasing() const { return increasing_; }
  bool claimed_subexponential() const { return claimed_subexp_; }
  void set_claimed_subexponential(bool v) { claimed_subexp_ = v; }

  // Table family only.
  const std::map<uint64_t, Rat>& table_values() const;
  Extension extension() const { return ext_; }
  // Piece index per table point (which input a merged table follows there).
  const std::map<uint64_t, uint64_t>& pieces() const { return piece_; }
  void set_piece(uint64_t n, uint64_t k);

  std::string describe() const;

 private:
  uint64_t table_key(uint64_t n) const;

  Family family_ = Family::constant;
  Rat param_ = 1; // constant value or exponential alpha
  uint64_t deg_ = 0;
  unsigned long beta_p_ = 1, beta_q_ = 1;
  std::map<uint64_t, Rat> values_;
  std::map<uint64_t, uint64_t> piece_;
  std::string source_;
  Extension ext_ = Extension::error;
  bool increasing_ = true;
  bool claimed_subexp_ = true;
};

// "constant:3", "power:2", "exponential:1", "exp_power:1/2", "n_ceil_ln_n",
// "n_ln_n_plus_n", "table:PATH" or "table:PATH:hold_last".
FuncDesc parse_funcdesc(const std::string& text);

// One "n value" or "n,value" pair per line; '#' starts a comment.
std::map<uint64_t, Rat> load_table_file(const std::string& path);

Rat parse_rational(const std::string& text); // "p" or "p/q"

} // namespace wreath
