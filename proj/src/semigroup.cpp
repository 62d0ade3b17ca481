#include "wreath/semigroup.hpp"

#include <algorithm>
#include <set>

namespace wreath {

namespace {

std::string mono_power(uint64_t k) {
  return k == 1 ? "x" : "x^" + std::to_string(k);
}

uint64_t mono_exponent(const std::string& s) {
  if (s == "x") return 1;
  if (s.size() > 2 && s.size() <= 14 && s[0] == 'x' && s[1] == '^') {
    uint64_t k = 0;
    for (size_t pos = 2; pos < s.size(); ++pos) {
      char ch = s[pos];
      if (ch < '0' || ch > '9')
        fail(ErrKind::precondition, "'" + s + "' is not an element of P");
      k = k * 10 + static_cast<uint64_t>(ch - '0');
    }
    if (k >= 1) return k;
  }
  fail(ErrKind::precondition, "'" + s + "' is not an element of P");
}

} // namespace

SemigroupSpec SemigroupSpec::free_monogenic() {
  SemigroupSpec p;
  p.kind_ = Kind::free_monogenic;
  return p;
}

SemigroupSpec SemigroupSpec::from_table(
    std::vector<std::string> names,
    const std::vector<std::vector<std::string>>& rows) {
  SemigroupSpec p;
  p.kind_ = Kind::table;
  if (names.empty()) fail(ErrKind::config, "semigroup table needs elements");
  if (names.size() > 64) fail(ErrKind::config, "semigroup table too large");
  for (size_t a = 0; a < names.size(); ++a)
    for (size_t b = a + 1; b < names.size(); ++b)
      if (names[a] == names[b])
        fail(ErrKind::config, "duplicate element name '" + names[a] + "'");
  p.names_ = std::move(names);
  size_t d = p.names_.size();
  if (rows.size() != d)
    fail(ErrKind::config, "semigroup table needs one row per element");
  p.mul_.assign(d, std::vector<size_t>(d, 0));
  for (size_t a = 0; a < d; ++a) {
    if (rows[a].size() != d)
      fail(ErrKind::config, "semigroup table row " + std::to_string(a + 1) +
                                " has wrong length");
    for (size_t b = 0; b < d; ++b) p.mul_[a][b] = p.elem_index(rows[a][b]);
  }
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b)
      for (size_t c = 0; c < d; ++c)
        if (p.mul_[p.mul_[a][b]][c] != p.mul_[a][p.mul_[b][c]])
          fail(ErrKind::malformed,
               "semigroup table is not associative at (" + p.names_[a] + ", " +
                   p.names_[b] + ", " + p.names_[c] + ")");
  for (size_t e = 0; e < d; ++e) {
    bool unit = true;
    for (size_t a = 0; a < d && unit; ++a)
      unit = p.mul_[e][a] == a && p.mul_[a][e] == a;
    if (unit) {
      p.has_unit_ = true;
      p.unit_ = e;
      break;
    }
  }
  return p;
}

SemigroupSpec SemigroupSpec::free_monoid(std::vector<std::string> alphabet,
                                         uint32_t cap) {
  SemigroupSpec p;
  p.kind_ = Kind::free_monoid;
  if (alphabet.empty()) fail(ErrKind::config, "free monoid needs an alphabet");
  if (cap == 0) fail(ErrKind::config, "free monoid needs a length cap");
  for (const auto& a : alphabet)
    if (a.size() != 1 || a[0] < 'a' || a[0] > 'z')
      fail(ErrKind::config, "alphabet letters must be single characters a-z");
  p.alphabet_ = std::move(alphabet);
  p.cap_ = cap;
  p.has_unit_ = true; // the empty word
  return p;
}

size_t SemigroupSpec::size() const {
  if (kind_ != Kind::table)
    fail(ErrKind::precondition, describe() + " has no finite element list");
  return names_.size();
}

size_t SemigroupSpec::elem_index(const std::string& name) const {
  for (size_t a = 0; a < names_.size(); ++a)
    if (names_[a] == name) return a;
  fail(ErrKind::config, "'" + name + "' is not an element of P");
}

std::string SemigroupSpec::mul_elem(const std::string& a,
                                    const std::string& b) const {
  switch (kind_) {
    case Kind::free_monogenic:
      return mono_power(mono_exponent(a) + mono_exponent(b));
    case Kind::table:
      return names_[mul_[elem_index(a)][elem_index(b)]];
    case Kind::free_monoid: {
      for (const std::string* w : {&a, &b})
        for (char ch : *w)
          if (std::find_if(alphabet_.begin(), alphabet_.end(),
                           [&](const std::string& l) { return l[0] == ch; }) ==
              alphabet_.end())
            fail(ErrKind::precondition, "'" + *w + "' is not an element of P");
      if (a.size() + b.size() > *cap_)
        fail(ErrKind::cap, "product '" + a + b + "' exceeds the length cap " +
                               std::to_string(*cap_));
      return a + b;
    }
  }
  fail(ErrKind::internal, "unknown semigroup kind");
}

std::string SemigroupSpec::random_elem(std::mt19937_64& rng) const {
  switch (kind_) {
    case Kind::free_monogenic:
      return mono_power(rand_range(rng, 1, 6));
    case Kind::table:
      return names_[rand_range(rng, 0, names_.size() - 1)];
    case Kind::free_monoid: {
      uint64_t len = rand_range(rng, 0, std::min<uint64_t>(*cap_, 3));
      std::string w;
      for (uint64_t s = 0; s < len; ++s)
        w += alphabet_[rand_range(rng, 0, alphabet_.size() - 1)];
      return w;
    }
  }
  fail(ErrKind::internal, "unknown semigroup kind");
}

AlgebraSpec SemigroupSpec::to_algebra() const {
  Field f2 = Field::gf(2);
  switch (kind_) {
    case Kind::free_monogenic:
      return AlgebraSpec::polynomial(f2, {"x"});
    case Kind::table: {
      std::vector<std::tuple<uint32_t, uint32_t, AlgElement>> entries;
      for (size_t a = 0; a < names_.size(); ++a)
        for (size_t b = 0; b < names_.size(); ++b) {
          AlgElement prod;
          prod.add_term(BasisLabel::index(mul_[a][b]), f2.one(), f2);
          entries.emplace_back(a, b, std::move(prod));
        }
      std::optional<std::string> unit_name;
      if (unit_) unit_name = names_[*unit_];
      return AlgebraSpec::structure_constants(f2, names_, entries, has_unit_,
                                              unit_name);
    }
    case Kind::free_monoid: {
      AlgebraSpec alg = AlgebraSpec::monomial_quotient(f2, alphabet_, {}, true);
      alg.set_word_cap(*cap_);
      return alg;
    }
  }
  fail(ErrKind::internal, "unknown semigroup kind");
}

AlgElement SemigroupSpec::as_algebra_element(const AlgebraSpec& alg,
                                             const std::string& elem) const {
  if (kind_ == Kind::free_monoid && elem.empty()) return alg.one();
  return parse_element(alg, elem);
}

std::string SemigroupSpec::describe() const {
  switch (kind_) {
    case Kind::free_monogenic:
      return "free_monogenic";
    case Kind::table:
      return "table(" + std::to_string(names_.size()) + " elements)";
    case Kind::free_monoid:
      return "free_monoid(" + std::to_string(alphabet_.size()) +
             " letters, cap " + std::to_string(*cap_) + ")";
  }
  return "?";
}

ReesElement rees_mul(const SemigroupSpec& P, const ReesElement& x,
                     const ReesElement& y) {
  if (x.zero || y.zero || x.j != y.i) return ReesElement::make_zero();
  return ReesElement::unit(x.i, y.j, P.mul_elem(x.p, y.p));
}

namespace {

std::string rees_str(const ReesElement& e) {
  if (e.zero) return "0";
  return "e_{" + std::to_string(e.i) + "," + std::to_string(e.j) + "}(" +
         (e.p.empty() ? "eps" : e.p) + ")";
}

// Both associations must agree.  A side that caps on an intermediate is
// consistent with the other side completing to zero: the long word dies
// against a mismatched index later, so the true product is zero either way.
// A capped side against a completed nonzero side is impossible for honest
// length-additive products and is reported.
void check_triple(const SemigroupSpec& P, const ReesElement& x,
                  const ReesElement& y, const ReesElement& z, Report& rep) {
  auto side = [&](bool left) -> std::pair<bool, ReesElement> {
    try {
      ReesElement r = left ? rees_mul(P, rees_mul(P, x, y), z)
                           : rees_mul(P, x, rees_mul(P, y, z));
      return {false, r};
    } catch (const Error& e) {
      if (e.kind != ErrKind::cap) throw;
      return {true, ReesElement::make_zero()};
    }
  };
  auto [lcap, l] = side(true);
  auto [rcap, r] = side(false);
  ++rep.checked;
  bool bad = lcap ? (!rcap && !r.zero)
                  : (rcap ? !l.zero : !(l == r));
  if (bad)
    rep.fail_with("(" + rees_str(x) + " " + rees_str(y) + ") " + rees_str(z) +
                  " = " + (lcap ? "cap" : rees_str(l)) + " but " + rees_str(x) +
                  " (" + rees_str(y) + " " + rees_str(z) + ") = " +
                  (rcap ? "cap" : rees_str(r)));
}

} // namespace

Report rees_associativity(const SemigroupSpec& P, uint64_t random_triples,
                          uint64_t seed) {
  Report rep;
  rep.name = "rees_associativity";
  rep.params["semigroup"] = P.describe();
  if (P.kind() == SemigroupSpec::Kind::table) {
    rep.params["style"] = "exhaustive elements x index window {0,1}";
    std::vector<ReesElement> pool;
    pool.push_back(ReesElement::make_zero());
    for (const auto& name : P.names())
      for (int64_t i : {0, 1})
        for (int64_t j : {0, 1}) pool.push_back(ReesElement::unit(i, j, name));
    for (const auto& x : pool)
      for (const auto& y : pool)
        for (const auto& z : pool) check_triple(P, x, y, z, rep);
    return rep;
  }
  rep.params["style"] = std::to_string(random_triples) + " random triples";
  rep.params["seed"] = std::to_string(seed);
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    if (rand_range(rng, 0, 7) == 0) return ReesElement::make_zero();
    return ReesElement::unit(rand_range_i(rng, -3, 3), rand_range_i(rng, -3, 3),
                             P.random_elem(rng));
  };
  for (uint64_t s = 0; s < random_triples; ++s)
    check_triple(P, draw(), draw(), draw(), rep);
  return rep;
}

SemigroupCounts semigroup_growth(const WreathContext& ctx, uint64_t horizon,
                                 int64_t unit_cell) {
  if (horizon == 0) fail(ErrKind::config, "horizon must be >= 1");
  if (!(ctx.alg.field() == Field::gf(2)))
    fail(ErrKind::precondition, "semigroup counting needs GF(2) coefficients");
  for (const auto& [pos, b] : ctx.seq.known_entries())
    if (b.terms().size() != 1)
      fail(ErrKind::precondition,
           "sequence entry at position " + std::to_string(pos) +
               " is not a semigroup element");

  SemigroupCounts out;
  auto gens = make_generators(ctx, unit_cell);
  std::set<WreathElement> seen;
  std::vector<WreathElement> frontier;
  for (const auto& g : gens)
    if (seen.insert(g).second) frontier.push_back(g);
  out.series.values.push_back(seen.size());
  for (uint64_t n = 2; n <= horizon; ++n) {
    std::vector<WreathElement> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        WreathElement v = wreath_mul(ctx, w, g);
        if (v.formally_zero()) {
          if (!out.zero_seen) {
            out.zero_seen = true;
            out.zero_first_length = n;
          }
          continue;
        }
        if (seen.insert(v).second) next.push_back(std::move(v));
      }
    frontier = std::move(next);
    out.series.values.push_back(seen.size());
  }
  out.series.meta["kind"] = "count";
  out.series.meta["horizon"] = std::to_string(horizon);
  out.series.meta["zero_reached_at"] =
      out.zero_seen ? std::to_string(out.zero_first_length) : "never";
  if (ctx.alg.word_cap())
    out.series.meta["cap"] = std::to_string(*ctx.alg.word_cap());
  return out;
}

Report verify_left_ideal_semigroup(const WreathContext& ctx,
                                   const SemigroupSpec& P, uint64_t samples,
                                   uint64_t degree, uint64_t seed,
                                   int64_t unit_cell) {
  if (degree == 0) fail(ErrKind::config, "word degree must be >= 1");
  Report rep;
  rep.name = "left_ideal_semigroup";
  rep.params["samples"] = std::to_string(samples);
  rep.params["degree"] = std::to_string(degree);
  rep.params["seed"] = std::to_string(seed);
  std::mt19937_64 rng(seed);
  auto gens = make_generators(ctx, unit_cell);
  for (uint64_t s = 0; s < samples; ++s) {
    uint64_t len = rand_range(rng, 1, degree);
    std::vector<uint64_t> word{rand_range(rng, 0, 3)};
    WreathElement w = gens[word[0]];
    for (uint64_t q = 1; q < len; ++q) {
      word.push_back(rand_range(rng, 0, 3));
      w = wreath_mul(ctx, w, gens[word.back()]);
    }
    std::string p = P.random_elem(rng);
    WreathElement m;
    m.add_mat(rand_range_i(rng, -3, 3), rand_range_i(rng, -3, 3),
              P.as_algebra_element(ctx.alg, p), ctx.alg.field());
    WreathElement prod = wreath_mul(ctx, w, m);
    ++rep.checked;
    bool atom = prod.laurent.empty() && prod.tails.empty() &&
                prod.mat.size() <= 1;
    if (atom && !prod.mat.empty())
      atom = prod.mat.begin()->second.terms().size() == 1;
    if (!atom) {
      std::string ws;
      for (uint64_t g : word) ws += std::to_string(g);
      rep.fail_with("word [" + ws + "] * e(" + (p.empty() ? "eps" : p) +
                    ") left M_inf(P): " + describe(ctx, prod));
    }
  }
  return rep;
}

Report monomial_closure_check(const WreathContext& ctx, uint64_t samples,
                              uint64_t seed) {
  Report rep;
  rep.name = "monomial_closure";
  rep.params["samples"] = std::to_string(samples);
  rep.params["seed"] = std::to_string(seed);
  std::mt19937_64 rng(seed);
  auto atom = [&]() {
    WreathElement x;
    uint64_t kind = rand_range(rng, 0, 2);
    int64_t i = rand_range_i(rng, -4, 4);
    int64_t j = rand_range_i(rng, -4, 4);
    AlgElement b =
        ctx.alg.monomial(ctx.alg.random_label(rng, 3), ctx.alg.field().one());
    if (kind == 0)
      x.add_laurent(i, ctx.alg.field().one(), ctx.alg.field());
    else if (kind == 1)
      x.add_mat(i, j, b, ctx.alg.field());
    else
      x.add_tail(i, j, b, ctx.alg.field());
    return canonicalize(ctx, x);
  };
  for (uint64_t s = 0; s < samples; ++s) {
    WreathElement x = atom();
    WreathElement y = atom();
    WreathElement prod = wreath_mul(ctx, x, y);
    ++rep.checked;
    size_t parts = prod.laurent.size() + prod.mat.size() + prod.tails.size();
    bool ok = parts <= 1;
    if (ok)
      for (const auto& [key, b] : prod.mat) ok = b.terms().size() == 1;
    if (ok)
      for (const auto& [key, b] : prod.tails) ok = b.terms().size() == 1;
    if (!ok)
      rep.fail_with(describe(ctx, x) + " * " + describe(ctx, y) + " = " +
                    describe(ctx, prod) + " is not an atom");
  }
  return rep;
}

} // namespace wreath
