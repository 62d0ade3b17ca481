#include "wreath/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace wreath {

namespace {

bool valid_ident(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

uint64_t exps_degree(const BasisLabel::Exps& e) {
  return std::accumulate(e.begin(), e.end(), uint64_t{0});
}

} // namespace

uint64_t BasisLabel::degree() const {
  if (is_index()) return 1;
  if (is_exps()) return exps_degree(as_exps());
  return as_word().size();
}

bool BasisLabel::operator<(const BasisLabel& o) const {
  if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
  if (is_index()) return as_index() < o.as_index();
  if (is_exps()) {
    uint64_t da = exps_degree(as_exps()), db = exps_degree(o.as_exps());
    if (da != db) return da < db;
    return as_exps() < o.as_exps();
  }
  if (as_word().size() != o.as_word().size())
    return as_word().size() < o.as_word().size();
  return as_word() < o.as_word();
}

void AlgElement::add_term(const BasisLabel& l, const Scalar& c, const Field& f) {
  if (f.is_zero(c)) return;
  auto it = terms_.find(l);
  if (it == terms_.end()) {
    terms_.emplace(l, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (f.is_zero(it->second)) terms_.erase(it);
}

AlgebraSpec AlgebraSpec::structure_constants(
    Field f, std::vector<std::string> basis_names,
    const std::vector<std::tuple<uint32_t, uint32_t, AlgElement>>& entries,
    bool is_unital, std::optional<std::string> unit_name) {
  AlgebraSpec s(f, Kind::structure_constants);
  if (basis_names.empty() || basis_names.size() > 64)
    fail(ErrKind::config, "structure-constant basis size must be in [1, 64]");
  for (const auto& n : basis_names)
    if (!valid_ident(n))
      fail(ErrKind::config, "invalid basis name '" + n + "'");
  for (size_t i = 0; i < basis_names.size(); ++i)
    for (size_t j = i + 1; j < basis_names.size(); ++j)
      if (basis_names[i] == basis_names[j])
        fail(ErrKind::config, "duplicate basis name '" + basis_names[i] + "'");
  s.dim_ = static_cast<uint32_t>(basis_names.size());
  s.basis_names_ = std::move(basis_names);
  s.table_.assign(static_cast<size_t>(s.dim_) * s.dim_, AlgElement());
  for (const auto& [i, j, prod] : entries) {
    if (i >= s.dim_ || j >= s.dim_)
      fail(ErrKind::config, "structure-constant entry index out of range");
    for (const auto& [l, c] : prod.terms()) {
      if (!l.is_index() || l.as_index() >= s.dim_)
        fail(ErrKind::config, "structure-constant product uses a non-basis label");
      (void)c;
    }
    s.table_[static_cast<size_t>(i) * s.dim_ + j] = prod;
  }

  // exhaustive associativity over basis triples
  for (uint32_t i = 0; i < s.dim_; ++i)
    for (uint32_t j = 0; j < s.dim_; ++j)
      for (uint32_t k = 0; k < s.dim_; ++k) {
        AlgElement left, right;
        const AlgElement& ij = s.table_[static_cast<size_t>(i) * s.dim_ + j];
        for (const auto& [l, c] : ij.terms()) {
          const AlgElement& lk =
              s.table_[l.as_index() * s.dim_ + k];
          for (const auto& [m, d] : lk.terms())
            left.add_term(m, f.mul(c, d), f);
        }
        const AlgElement& jk = s.table_[static_cast<size_t>(j) * s.dim_ + k];
        for (const auto& [l, c] : jk.terms()) {
          const AlgElement& il =
              s.table_[static_cast<size_t>(i) * s.dim_ + l.as_index()];
          for (const auto& [m, d] : il.terms())
            right.add_term(m, f.mul(c, d), f);
        }
        if (!(left == right))
          fail(ErrKind::malformed,
               "structure-constant table is not associative at triple (" +
                   s.basis_names_[i] + ", " + s.basis_names_[j] + ", " +
                   s.basis_names_[k] + "): (ab)c = " + s.to_string(left) +
                   ", a(bc) = " + s.to_string(right));
      }

  auto acts_as_unit = [&](uint32_t u) {
    for (uint32_t i = 0; i < s.dim_; ++i) {
      AlgElement ei;
      ei.add_term(BasisLabel::index(i), f.one(), f);
      if (!(s.table_[static_cast<size_t>(u) * s.dim_ + i] == ei)) return false;
      if (!(s.table_[static_cast<size_t>(i) * s.dim_ + u] == ei)) return false;
    }
    return true;
  };

  if (unit_name) {
    auto it = std::find(s.basis_names_.begin(), s.basis_names_.end(), *unit_name);
    if (it == s.basis_names_.end())
      fail(ErrKind::config, "unit '" + *unit_name + "' is not a basis name");
    uint32_t u = static_cast<uint32_t>(it - s.basis_names_.begin());
    if (!acts_as_unit(u))
      fail(ErrKind::malformed, "claimed unit '" + *unit_name +
                                   "' does not act as a unit");
    s.unit_ = u;
  } else if (is_unital) {
    for (uint32_t u = 0; u < s.dim_ && !s.unit_; ++u)
      if (acts_as_unit(u)) s.unit_ = u;
    if (!s.unit_)
      fail(ErrKind::malformed, "algebra claimed unital but no basis unit found");
  } else {
    // adjoin a formal unit
    uint32_t d = s.dim_, nd = d + 1;
    std::vector<AlgElement> t(static_cast<size_t>(nd) * nd);
    for (uint32_t i = 0; i < d; ++i)
      for (uint32_t j = 0; j < d; ++j)
        t[static_cast<size_t>(i) * nd + j] =
            s.table_[static_cast<size_t>(i) * d + j];
    for (uint32_t i = 0; i < nd; ++i) {
      AlgElement ei;
      ei.add_term(BasisLabel::index(i), f.one(), f);
      t[static_cast<size_t>(d) * nd + i] = ei;
      t[static_cast<size_t>(i) * nd + d] = ei;
    }
    s.table_ = std::move(t);
    s.dim_ = nd;
    s.basis_names_.push_back("1");
    s.unit_ = d;
    s.unitalized_ = true;
  }
  return s;
}

AlgebraSpec AlgebraSpec::polynomial(Field f, std::vector<std::string> vars) {
  AlgebraSpec s(f, Kind::polynomial);
  for (const auto& v : vars)
    if (!valid_ident(v)) fail(ErrKind::config, "invalid variable name '" + v + "'");
  for (size_t i = 0; i < vars.size(); ++i)
    for (size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j])
        fail(ErrKind::config, "duplicate variable name '" + vars[i] + "'");
  s.vars_ = std::move(vars);
  s.is_domain_ = true;
  return s;
}

AlgebraSpec AlgebraSpec::monomial_quotient(
    Field f, std::vector<std::string> alphabet,
    const std::vector<std::string>& forbidden, bool domain_assumed) {
  AlgebraSpec s(f, Kind::monomial_quotient);
  if (alphabet.empty()) fail(ErrKind::config, "empty alphabet");
  for (const auto& a : alphabet) {
    if (a.size() != 1 || !std::isalpha(static_cast<unsigned char>(a[0])))
      fail(ErrKind::config, "alphabet entries must be single letters, got '" +
                                a + "'");
    if (std::count(s.alphabet_.begin(), s.alphabet_.end(), a[0]))
      fail(ErrKind::config, "duplicate alphabet letter '" + a + "'");
    s.alphabet_.push_back(a[0]);
  }
  std::vector<BasisLabel::Word> raw;
  for (const auto& w : forbidden) {
    if (w.empty()) fail(ErrKind::config, "empty forbidden word");
    BasisLabel::Word word;
    for (char c : w) {
      auto it = std::find(s.alphabet_.begin(), s.alphabet_.end(), c);
      if (it == s.alphabet_.end())
        fail(ErrKind::config, "forbidden word '" + w +
                                  "' uses a letter outside the alphabet");
      word.push_back(static_cast<uint16_t>(it - s.alphabet_.begin()));
    }
    raw.push_back(std::move(word));
  }
  auto has_factor = [](const BasisLabel::Word& w, const BasisLabel::Word& f) {
    if (f.size() > w.size()) return false;
    for (size_t i = 0; i + f.size() <= w.size(); ++i)
      if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
    return false;
  };
  // keep only minimal words (factor closure is then automatic under reduction)
  for (size_t i = 0; i < raw.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < raw.size() && !redundant; ++j)
      if (j != i && has_factor(raw[i], raw[j]) &&
          !(raw[i] == raw[j] && j > i))
        redundant = true;
    if (!redundant &&
        std::find(s.forbidden_.begin(), s.forbidden_.end(), raw[i]) ==
            s.forbidden_.end())
      s.forbidden_.push_back(raw[i]);
  }
  std::sort(s.forbidden_.begin(), s.forbidden_.end());
  s.is_domain_ = domain_assumed;
  s.domain_assumed_ = domain_assumed;
  return s;
}

void AlgebraSpec::validate_label(const BasisLabel& l) const {
  switch (kind_) {
    case Kind::structure_constants:
      if (!l.is_index() || l.as_index() >= dim_)
        fail(ErrKind::malformed, "label incompatible with structure-constant algebra");
      return;
    case Kind::polynomial:
      if (!l.is_exps() || l.as_exps().size() != vars_.size())
        fail(ErrKind::malformed, "label incompatible with polynomial algebra");
      return;
    case Kind::monomial_quotient:
      if (!l.is_word())
        fail(ErrKind::malformed, "label incompatible with monomial quotient");
      for (uint16_t c : l.as_word())
        if (c >= alphabet_.size())
          fail(ErrKind::malformed, "word label uses a letter outside the alphabet");
      if (word_reduces_to_zero(l.as_word()))
        fail(ErrKind::malformed, "word label contains a forbidden factor");
      if (word_cap_ && l.as_word().size() > *word_cap_)
        fail(ErrKind::cap, "word label exceeds the length cap");
      return;
  }
}

bool AlgebraSpec::word_reduces_to_zero(const BasisLabel::Word& w) const {
  for (const auto& f : forbidden_) {
    if (f.size() > w.size()) continue;
    for (size_t i = 0; i + f.size() <= w.size(); ++i)
      if (std::equal(f.begin(), f.end(), w.begin() + i)) return true;
  }
  return false;
}

BasisLabel AlgebraSpec::unit_label() const {
  switch (kind_) {
    case Kind::structure_constants:
      return BasisLabel::index(*unit_);
    case Kind::polynomial:
      return BasisLabel::exps(BasisLabel::Exps(vars_.size(), 0));
    case Kind::monomial_quotient:
      return BasisLabel::word({});
  }
  fail(ErrKind::internal, "bad kind");
}

AlgElement AlgebraSpec::one() const {
  AlgElement e;
  e.add_term(unit_label(), field_.one(), field_);
  return e;
}

AlgElement AlgebraSpec::monomial(const BasisLabel& l, const Scalar& c) const {
  validate_label(l);
  AlgElement e;
  e.add_term(l, c, field_);
  return e;
}

AlgElement AlgebraSpec::add(const AlgElement& a, const AlgElement& b) const {
  AlgElement r = a;
  for (const auto& [l, c] : b.terms()) r.add_term(l, c, field_);
  return r;
}

AlgElement AlgebraSpec::sub(const AlgElement& a, const AlgElement& b) const {
  AlgElement r = a;
  for (const auto& [l, c] : b.terms()) r.add_term(l, field_.neg(c), field_);
  return r;
}

AlgElement AlgebraSpec::scale(const AlgElement& a, const Scalar& c) const {
  AlgElement r;
  for (const auto& [l, d] : a.terms()) r.add_term(l, field_.mul(d, c), field_);
  return r;
}

AlgElement AlgebraSpec::label_mul(const BasisLabel& a, const BasisLabel& b) const {
  switch (kind_) {
    case Kind::structure_constants:
      return table_[a.as_index() * dim_ + b.as_index()];
    case Kind::polynomial: {
      BasisLabel::Exps e = a.as_exps();
      const auto& f = b.as_exps();
      for (size_t i = 0; i < e.size(); ++i) e[i] += f[i];
      AlgElement r;
      r.add_term(BasisLabel::exps(std::move(e)), field_.one(), field_);
      return r;
    }
    case Kind::monomial_quotient: {
      BasisLabel::Word w = a.as_word();
      w.insert(w.end(), b.as_word().begin(), b.as_word().end());
      if (word_cap_ && w.size() > *word_cap_)
        fail(ErrKind::cap, "product exceeds the word length cap of " +
                               std::to_string(*word_cap_));
      if (word_reduces_to_zero(w)) return AlgElement();
      AlgElement r;
      r.add_term(BasisLabel::word(std::move(w)), field_.one(), field_);
      return r;
    }
  }
  fail(ErrKind::internal, "bad kind");
}

AlgElement AlgebraSpec::mul(const AlgElement& a, const AlgElement& b) const {
  AlgElement r;
  for (const auto& [la, ca] : a.terms()) {
    validate_label(la);
    for (const auto& [lb, cb] : b.terms()) {
      validate_label(lb);
      AlgElement p = label_mul(la, lb);
      Scalar c = field_.mul(ca, cb);
      for (const auto& [l, d] : p.terms()) r.add_term(l, field_.mul(c, d), field_);
    }
  }
  return r;
}

uint64_t AlgebraSpec::label_weight(const BasisLabel& l) const {
  if (kind_ == Kind::structure_constants)
    return unit_ && l.as_index() == *unit_ ? 0 : 1;
  return l.degree();
}

std::string AlgebraSpec::label_string(const BasisLabel& l) const {
  switch (kind_) {
    case Kind::structure_constants:
      return basis_names_[l.as_index()];
    case Kind::polynomial: {
      const auto& e = l.as_exps();
      std::string s;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += vars_[i];
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
      }
      return s.empty() ? "1" : s;
    }
    case Kind::monomial_quotient: {
      const auto& w = l.as_word();
      if (w.empty()) return "1";
      std::string s;
      for (uint16_t c : w) s += alphabet_[c];
      return s;
    }
  }
  fail(ErrKind::internal, "bad kind");
}

std::string AlgebraSpec::to_string(const AlgElement& a) const {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [l, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    std::string ls = label_string(l);
    if (field_.is_one(c))
      os << ls;
    else if (ls == "1")
      os << field_.to_string(c);
    else
      os << field_.to_string(c) << "*" << ls;
  }
  return os.str();
}

BasisLabel AlgebraSpec::random_label(std::mt19937_64& rng,
                                     uint64_t max_weight) const {
  switch (kind_) {
    case Kind::structure_constants:
      return BasisLabel::index(rand_range(rng, 0, dim_ - 1));
    case Kind::polynomial: {
      BasisLabel::Exps e(vars_.size(), 0);
      uint64_t d = rand_range(rng, 0, max_weight);
      for (uint64_t i = 0; i < d && !e.empty(); ++i)
        e[rand_range(rng, 0, e.size() - 1)]++;
      return BasisLabel::exps(std::move(e));
    }
    case Kind::monomial_quotient: {
      uint64_t cap = word_cap_ ? std::min<uint64_t>(*word_cap_, max_weight)
                               : max_weight;
      for (int attempt = 0; attempt < 32; ++attempt) {
        uint64_t len = rand_range(rng, 0, cap);
        BasisLabel::Word w;
        for (uint64_t i = 0; i < len; ++i)
          w.push_back(
              static_cast<uint16_t>(rand_range(rng, 0, alphabet_.size() - 1)));
        if (!word_reduces_to_zero(w)) return BasisLabel::word(std::move(w));
      }
      return BasisLabel::word({});
    }
  }
  fail(ErrKind::internal, "bad kind");
}

AlgElement AlgebraSpec::random_element(std::mt19937_64& rng, size_t max_terms,
                                       uint64_t max_weight) const {
  AlgElement e;
  size_t n = rand_range(rng, 1, max_terms);
  for (size_t i = 0; i < n; ++i) {
    Scalar c;
    if (field_.kind() == Field::Kind::gf)
      c = field_.from_int(
          static_cast<long long>(rand_range(rng, 1, field_.modulus() - 1)));
    else
      c = field_.from_fraction(rand_range_i(rng, 1, 4) *
                                   (rng() % 2 ? 1 : -1),
                               rand_range_i(rng, 1, 4));
    e.add_term(random_label(rng, max_weight), c, field_);
  }
  return e;
}

// ---- expression parsing ----

namespace {

struct Tok {
  enum Kind { integer, ident, op, end } kind;
  std::string text;
  size_t pos;
};

long long tok_int(const Tok& t) {
  if (t.text.size() > 18)
    fail(ErrKind::config, "integer literal too large at offset " +
                              std::to_string(t.pos));
  return std::stoll(t.text);
}

class Lexer {
public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }
  const Tok& peek() const { return cur_; }
  Tok take() {
    Tok t = cur_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) {
      cur_ = {Tok::end, "", pos_};
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      cur_ = {Tok::integer, s_.substr(start, pos_ - start), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      cur_ = {Tok::ident, s_.substr(start, pos_ - start), start};
      return;
    }
    if (std::string("+-*^()/").find(c) != std::string::npos) {
      cur_ = {Tok::op, std::string(1, c), pos_};
      ++pos_;
      return;
    }
    fail(ErrKind::config, "unexpected character '" + std::string(1, c) +
                              "' at offset " + std::to_string(pos_) +
                              " in element expression");
  }

  const std::string& s_;
  size_t pos_ = 0;
  Tok cur_;
};

class ElemParser {
public:
  ElemParser(const AlgebraSpec& spec, const std::string& text)
      : spec_(spec), f_(spec.field()), lex_(text) {}

  AlgElement parse() {
    AlgElement e = expr();
    if (lex_.peek().kind != Tok::end)
      fail(ErrKind::config, "trailing input at offset " +
                                std::to_string(lex_.peek().pos) +
                                " in element expression");
    return e;
  }

private:
  AlgElement expr() {
    bool negate = false;
    if (lex_.peek().kind == Tok::op && lex_.peek().text == "-") {
      lex_.take();
      negate = true;
    }
    AlgElement acc = term();
    if (negate) acc = spec_.scale(acc, f_.neg(f_.one()));
    while (lex_.peek().kind == Tok::op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      bool minus = lex_.take().text == "-";
      AlgElement t = term();
      acc = minus ? spec_.sub(acc, t) : spec_.add(acc, t);
    }
    return acc;
  }

  AlgElement term() {
    AlgElement acc = factor();
    while (lex_.peek().kind == Tok::op && lex_.peek().text == "*") {
      lex_.take();
      acc = spec_.mul(acc, factor());
    }
    return acc;
  }

  AlgElement factor() {
    AlgElement b = base();
    if (lex_.peek().kind == Tok::op && lex_.peek().text == "^") {
      lex_.take();
      Tok e = lex_.take();
      if (e.kind != Tok::integer)
        fail(ErrKind::config, "expected integer exponent at offset " +
                                  std::to_string(e.pos));
      long long n = tok_int(e);
      if (n < 0 || n > 256)
        fail(ErrKind::config, "exponent out of range [0, 256]");
      AlgElement acc = spec_.one();
      for (long long i = 0; i < n; ++i) acc = spec_.mul(acc, b);
      return acc;
    }
    return b;
  }

  AlgElement base() {
    Tok t = lex_.take();
    if (t.kind == Tok::integer) {
      long long num = tok_int(t);
      if (lex_.peek().kind == Tok::op && lex_.peek().text == "/") {
        lex_.take();
        Tok d = lex_.take();
        if (d.kind != Tok::integer)
          fail(ErrKind::config, "expected integer denominator at offset " +
                                    std::to_string(d.pos));
        return spec_.scale(spec_.one(), f_.from_fraction(num, tok_int(d)));
      }
      return spec_.scale(spec_.one(), f_.from_int(num));
    }
    if (t.kind == Tok::ident) return resolve(t);
    if (t.kind == Tok::op && t.text == "(") {
      AlgElement e = expr();
      Tok close = lex_.take();
      if (close.kind != Tok::op || close.text != ")")
        fail(ErrKind::config, "expected ')' at offset " +
                                  std::to_string(close.pos));
      return e;
    }
    fail(ErrKind::config, "unexpected token '" + t.text + "' at offset " +
                              std::to_string(t.pos) + " in element expression");
  }

  AlgElement resolve(const Tok& t) {
    switch (spec_.kind()) {
      case AlgebraSpec::Kind::structure_constants: {
        const auto& names = spec_.basis_names();
        auto it = std::find(names.begin(), names.end(), t.text);
        if (it == names.end())
          fail(ErrKind::config, "unknown basis element '" + t.text + "'");
        return spec_.monomial(
            BasisLabel::index(static_cast<uint64_t>(it - names.begin())),
            f_.one());
      }
      case AlgebraSpec::Kind::polynomial: {
        const auto& vars = spec_.vars();
        AlgElement acc = spec_.one();
        // allow juxtaposed variable names like "xy"; longest match wins
        std::string rest = t.text;
        while (!rest.empty()) {
          bool matched = false;
          for (size_t len = rest.size(); len >= 1 && !matched; --len) {
            std::string head = rest.substr(0, len);
            for (size_t v = 0; v < vars.size(); ++v) {
              if (vars[v] == head) {
                BasisLabel::Exps e(vars.size(), 0);
                e[v] = 1;
                acc = spec_.mul(
                    acc, spec_.monomial(BasisLabel::exps(std::move(e)), f_.one()));
                rest = rest.substr(len);
                matched = true;
                break;
              }
            }
          }
          if (!matched)
            fail(ErrKind::config, "unknown variable in '" + t.text + "'");
        }
        return acc;
      }
      case AlgebraSpec::Kind::monomial_quotient: {
        const auto& alpha = spec_.alphabet();
        AlgElement acc = spec_.one();
        for (char c : t.text) {
          auto it = std::find(alpha.begin(), alpha.end(), c);
          if (it == alpha.end())
            fail(ErrKind::config, "letter '" + std::string(1, c) +
                                      "' not in the alphabet");
          AlgElement m;
          m.add_term(
              BasisLabel::word({static_cast<uint16_t>(it - alpha.begin())}),
              f_.one(), f_);
          acc = spec_.mul(acc, m);
        }
        return acc;
      }
    }
    fail(ErrKind::internal, "bad kind");
  }

  const AlgebraSpec& spec_;
  const Field& f_;
  Lexer lex_;
};

} // namespace

AlgElement parse_element(const AlgebraSpec& spec, const std::string& text) {
  return ElemParser(spec, text).parse();
}

AlgElement parse_linear_combination(
    const Field& f,
    const std::function<std::optional<BasisLabel>(const std::string&)>& resolve,
    const std::string& text) {
  Lexer lex(text);
  AlgElement acc;
  bool first = true;
  Scalar sign = f.one();
  for (;;) {
    if (first && lex.peek().kind == Tok::op && lex.peek().text == "-") {
      lex.take();
      sign = f.neg(f.one());
    }
    first = false;
    Tok t = lex.take();
    Scalar coeff = sign;
    if (t.kind == Tok::integer) {
      long long num = tok_int(t);
      if (lex.peek().kind == Tok::op && lex.peek().text == "/") {
        lex.take();
        Tok d = lex.take();
        if (d.kind != Tok::integer)
          fail(ErrKind::config, "expected integer denominator at offset " +
                                    std::to_string(d.pos));
        coeff = f.mul(sign, f.from_fraction(num, tok_int(d)));
      } else {
        coeff = f.mul(sign, f.from_int(num));
      }
      if (lex.peek().kind == Tok::op && lex.peek().text == "*") {
        lex.take();
        t = lex.take();
      } else {
        // bare integer: must be 0 (the zero element)
        if (num != 0)
          fail(ErrKind::config,
               "bare nonzero integer in a linear combination; write coeff*name");
        t = {Tok::end, "", t.pos};
      }
    }
    if (t.kind == Tok::ident) {
      auto l = resolve(t.text);
      if (!l)
        fail(ErrKind::config, "unknown basis element '" + t.text + "'");
      acc.add_term(*l, coeff, f);
    } else if (t.kind != Tok::end) {
      fail(ErrKind::config, "unexpected token '" + t.text +
                                "' in linear combination at offset " +
                                std::to_string(t.pos));
    }
    if (lex.peek().kind == Tok::end) break;
    Tok op = lex.take();
    if (op.kind != Tok::op || (op.text != "+" && op.text != "-"))
      fail(ErrKind::config, "expected '+' or '-' at offset " +
                                std::to_string(op.pos));
    sign = op.text == "-" ? f.neg(f.one()) : f.one();
  }
  return acc;
}

} // namespace wreath
