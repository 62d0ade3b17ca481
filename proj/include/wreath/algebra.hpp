#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "wreath/scalar.hpp"

namespace wreath {

// Deterministic uniform draw in [lo, hi]; avoids std::uniform_int_distribution
// whose output is implementation-defined.
inline uint64_t rand_range(std::mt19937_64& rng, uint64_t lo, uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}
inline int64_t rand_range_i(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}

// Basis label of a coefficient algebra: dense index (structure constants),
// exponent vector (commutative polynomials), or word over an alphabet
// (monomial quotients). Ordered by graded-lex within each kind.
class BasisLabel {
public:
  using Exps = std::vector<uint32_t>;
  using Word = std::vector<uint16_t>;

  BasisLabel() : v_(uint64_t{0}) {}
  static BasisLabel index(uint64_t i) { return BasisLabel(Var(i)); }
  static BasisLabel exps(Exps e) { return BasisLabel(Var(std::move(e))); }
  static BasisLabel word(Word w) { return BasisLabel(Var(std::move(w))); }

  bool is_index() const { return v_.index() == 0; }
  bool is_exps() const { return v_.index() == 1; }
  bool is_word() const { return v_.index() == 2; }
  uint64_t as_index() const { return std::get<0>(v_); }
  const Exps& as_exps() const { return std::get<1>(v_); }
  const Word& as_word() const { return std::get<2>(v_); }

  uint64_t degree() const;

  bool operator==(const BasisLabel& o) const { return v_ == o.v_; }
  bool operator!=(const BasisLabel& o) const { return !(*this == o); }
  bool operator<(const BasisLabel& o) const;

private:
  using Var = std::variant<uint64_t, Exps, Word>;
  explicit BasisLabel(Var v) : v_(std::move(v)) {}
  Var v_;
};

// Finitely supported map label -> nonzero scalar.
class AlgElement {
public:
  using Terms = std::map<BasisLabel, Scalar>;

  AlgElement() = default;

  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  void add_term(const BasisLabel& l, const Scalar& c, const Field& f);

  bool operator==(const AlgElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgElement& o) const { return !(*this == o); }
  bool operator<(const AlgElement& o) const { return terms_ < o.terms_; }

private:
  Terms terms_;
};

class AlgebraSpec {
public:
  enum class Kind { structure_constants, polynomial, monomial_quotient };

  // Table given sparsely as (i, j, product); missing entries are zero.
  // Runs the exhaustive associativity check over all basis triples; adjoins a
  // formal unit when no unit is claimed or found.
  static AlgebraSpec structure_constants(
      Field f, std::vector<std::string> basis_names,
      const std::vector<std::tuple<uint32_t, uint32_t, AlgElement>>& entries,
      bool is_unital, std::optional<std::string> unit_name);

  static AlgebraSpec polynomial(Field f, std::vector<std::string> vars);

  static AlgebraSpec monomial_quotient(Field f,
                                       std::vector<std::string> alphabet,
                                       const std::vector<std::string>& forbidden,
                                       bool domain_assumed);

  const Field& field() const { return field_; }
  Kind kind() const { return kind_; }
  bool is_unital() const { return true; } // guaranteed post-load
  bool is_domain() const { return is_domain_; }
  bool domain_assumed() const { return domain_assumed_; }
  bool unitalized() const { return unitalized_; }
  uint32_t dim() const { return dim_; } // structure constants only
  size_t var_count() const { return vars_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<char>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  std::optional<uint32_t> word_cap() const { return word_cap_; }
  void set_word_cap(uint32_t cap) { word_cap_ = cap; }

  void validate_label(const BasisLabel& l) const; // malformed error

  BasisLabel unit_label() const;
  AlgElement zero() const { return AlgElement(); }
  AlgElement one() const;
  AlgElement monomial(const BasisLabel& l, const Scalar& c) const;

  AlgElement add(const AlgElement& a, const AlgElement& b) const;
  AlgElement sub(const AlgElement& a, const AlgElement& b) const;
  AlgElement scale(const AlgElement& a, const Scalar& c) const;
  AlgElement mul(const AlgElement& a, const AlgElement& b) const;

  uint64_t label_weight(const BasisLabel& l) const;
  std::string label_string(const BasisLabel& l) const;
  std::string to_string(const AlgElement& a) const;

  BasisLabel random_label(std::mt19937_64& rng, uint64_t max_weight) const;
  AlgElement random_element(std::mt19937_64& rng, size_t max_terms,
                            uint64_t max_weight) const;

private:
  AlgebraSpec(Field f, Kind k) : field_(f), kind_(k) {}

  // product of two basis labels; zero result allowed (quotients, sparse tables)
  AlgElement label_mul(const BasisLabel& a, const BasisLabel& b) const;
  bool word_reduces_to_zero(const BasisLabel::Word& w) const;

  Field field_;
  Kind kind_;
  bool is_domain_ = false;
  bool domain_assumed_ = false;
  bool unitalized_ = false;

  uint32_t dim_ = 0;
  std::vector<std::string> basis_names_;
  std::vector<AlgElement> table_; // dim*dim row-major
  std::optional<uint32_t> unit_;

  std::vector<std::string> vars_;

  std::vector<char> alphabet_;
  std::vector<BasisLabel::Word> forbidden_;
  std::optional<uint32_t> word_cap_;
};

// Full expression grammar: sums, differences, products, powers, parenthesized
// subexpressions, integer and p/q scalar literals, identifiers resolved per
// algebra kind. Products need the spec's multiplication.
AlgElement parse_element(const AlgebraSpec& spec, const std::string& text);

// Linear combinations only (coeff*name terms); used where a product table is
// itself being defined. The resolver maps identifier -> label.
AlgElement parse_linear_combination(
    const Field& f,
    const std::function<std::optional<BasisLabel>(const std::string&)>& resolve,
    const std::string& text);

} // namespace wreath
