#include "wreath/config.hpp"

#include <cctype>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "wreath/errors.hpp"

namespace wreath {

namespace {

struct CTok {
  enum Kind {
    ident,
    str,
    integer,
    rational,
    lbracket,
    rbracket,
    equals,
    comma,
    dot,
    end
  };
  Kind kind = end;
  std::string text;
  int64_t int_v = 0;
  Rat rat_v;
  int line = 1;
  int col = 1;
};

class CLex {
public:
  CLex(const std::string& text, std::string name)
      : text_(text), name_(std::move(name)) {
    advance();
  }

  const CTok& peek() const { return tok_; }

  CTok take() {
    CTok t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void err(const CTok& at, const std::string& msg) const {
    fail(ErrKind::config, name_ + ":" + std::to_string(at.line) + ":" +
                              std::to_string(at.col) + ": " + msg);
  }

private:
  [[noreturn]] void err_here(const std::string& msg) const {
    fail(ErrKind::config,
         name_ + ":" + std::to_string(line_) + ":" + std::to_string(col_) +
             ": " + msg,
         line_, col_);
  }

  char cur() const { return text_[pos_]; }
  bool done() const { return pos_ >= text_.size(); }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (!done()) {
      char c = cur();
      if (c == '#') {
        while (!done() && cur() != '\n') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  std::string lex_digits() {
    std::string d;
    while (!done() && std::isdigit(static_cast<unsigned char>(cur()))) {
      d += cur();
      bump();
    }
    if (d.empty()) err_here("expected digits");
    if (d.size() > 18) err_here("integer literal too large");
    return d;
  }

  void advance() {
    skip_space();
    tok_ = CTok{};
    tok_.line = line_;
    tok_.col = col_;
    if (done()) {
      tok_.kind = CTok::end;
      return;
    }
    char c = cur();
    switch (c) {
      case '[': tok_.kind = CTok::lbracket; bump(); return;
      case ']': tok_.kind = CTok::rbracket; bump(); return;
      case '=': tok_.kind = CTok::equals; bump(); return;
      case ',': tok_.kind = CTok::comma; bump(); return;
      case '.': tok_.kind = CTok::dot; bump(); return;
      case '"': {
        bump();
        std::string s;
        while (!done() && cur() != '"') {
          char ch = cur();
          if (ch == '\n') err_here("newline inside string literal");
          if (ch == '\\') {
            bump();
            if (done()) err_here("unterminated escape in string literal");
            char e = cur();
            switch (e) {
              case '"': s += '"'; break;
              case '\\': s += '\\'; break;
              case 'n': s += '\n'; break;
              case 't': s += '\t'; break;
              case 'r': s += '\r'; break;
              default: err_here(std::string("unknown escape '\\") + e + "'");
            }
            bump();
          } else {
            s += ch;
            bump();
          }
        }
        if (done()) err_here("unterminated string literal");
        bump();
        tok_.kind = CTok::str;
        tok_.text = std::move(s);
        return;
      }
      default: break;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      bool neg = c == '-';
      if (neg) bump();
      std::string num = lex_digits();
      if (!done() && cur() == '.')
        err_here("floating-point literals are not supported; write p/q");
      if (!done() && cur() == '/') {
        bump();
        std::string den = lex_digits();
        mpz_class nz(num), dz(den);
        if (dz == 0) err_here("rational with zero denominator");
        Rat r{nz, dz};
        r.canonicalize();
        tok_.kind = CTok::rational;
        tok_.rat_v = neg ? Rat(-r) : r;
        return;
      }
      tok_.kind = CTok::integer;
      errno = 0;
      tok_.int_v = std::stoll(num);
      if (neg) tok_.int_v = -tok_.int_v;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (!done() && (std::isalnum(static_cast<unsigned char>(cur())) ||
                         cur() == '_' || cur() == '-')) {
        id += cur();
        bump();
      }
      tok_.kind = CTok::ident;
      tok_.text = std::move(id);
      return;
    }
    err_here(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::string name_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  CTok tok_;
};

ConfigValue parse_value(CLex& lex) {
  CTok t = lex.take();
  ConfigValue v;
  v.line = t.line;
  v.col = t.col;
  switch (t.kind) {
    case CTok::integer:
      v.kind = ConfigValue::Kind::integer;
      v.int_v = t.int_v;
      return v;
    case CTok::rational:
      v.kind = ConfigValue::Kind::rational;
      v.rat_v = t.rat_v;
      return v;
    case CTok::str:
      v.kind = ConfigValue::Kind::string;
      v.str_v = t.text;
      return v;
    case CTok::ident:
      if (t.text == "true" || t.text == "false") {
        v.kind = ConfigValue::Kind::boolean;
        v.bool_v = t.text == "true";
        return v;
      }
      lex.err(t, "bare word '" + t.text + "' is not a value; quote strings");
    case CTok::lbracket: {
      v.kind = ConfigValue::Kind::array;
      for (;;) {
        if (lex.peek().kind == CTok::rbracket) {
          lex.take();
          return v;
        }
        v.arr_v.push_back(parse_value(lex));
        if (lex.peek().kind == CTok::comma) {
          lex.take();
          continue;
        }
        if (lex.peek().kind == CTok::rbracket) {
          lex.take();
          return v;
        }
        lex.err(lex.peek(), "expected ',' or ']' in array");
      }
    }
    default:
      lex.err(t, "expected a value");
  }
}

const char* kind_name(ConfigValue::Kind k) {
  switch (k) {
    case ConfigValue::Kind::integer: return "integer";
    case ConfigValue::Kind::rational: return "rational";
    case ConfigValue::Kind::boolean: return "boolean";
    case ConfigValue::Kind::string: return "string";
    case ConfigValue::Kind::array: return "array";
  }
  return "?";
}

// Typed getters bound to one section; every access marks keys consumed.
struct Sect {
  const ConfigFile& cf;
  std::string s;

  std::string where() const { return s.empty() ? "top level" : "[" + s + "]"; }

  const ConfigValue* find(const std::string& k) const { return cf.find(s, k); }
  const ConfigValue& require(const std::string& k) const {
    return cf.require(s, k);
  }

  [[noreturn]] void wrong_type(const ConfigValue& v, const std::string& k,
                               const char* want) const {
    cf.fail_at(v, where() + " key '" + k + "' must be a " + want + ", not a " +
                      kind_name(v.kind));
  }

  std::string as_str(const ConfigValue& v, const std::string& k) const {
    if (v.kind != ConfigValue::Kind::string) wrong_type(v, k, "string");
    return v.str_v;
  }
  int64_t as_int(const ConfigValue& v, const std::string& k) const {
    if (v.kind != ConfigValue::Kind::integer) wrong_type(v, k, "integer");
    return v.int_v;
  }
  Rat as_rat(const ConfigValue& v, const std::string& k) const {
    if (v.kind == ConfigValue::Kind::rational) return v.rat_v;
    if (v.kind == ConfigValue::Kind::integer) return Rat(v.int_v);
    wrong_type(v, k, "rational or integer");
  }

  std::string req_str(const std::string& k) const {
    return as_str(require(k), k);
  }
  std::string str_or(const std::string& k, const std::string& def) const {
    const ConfigValue* v = find(k);
    return v ? as_str(*v, k) : def;
  }
  std::optional<std::string> opt_str(const std::string& k) const {
    const ConfigValue* v = find(k);
    if (!v) return std::nullopt;
    return as_str(*v, k);
  }
  bool bool_or(const std::string& k, bool def) const {
    const ConfigValue* v = find(k);
    if (!v) return def;
    if (v->kind != ConfigValue::Kind::boolean) wrong_type(*v, k, "boolean");
    return v->bool_v;
  }
  int64_t int_or(const std::string& k, int64_t def, int64_t lo,
                 int64_t hi) const {
    const ConfigValue* v = find(k);
    if (!v) return def;
    int64_t n = as_int(*v, k);
    if (n < lo || n > hi)
      cf.fail_at(*v, where() + " key '" + k + "' must be in [" +
                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return n;
  }
  uint64_t u64_or(const std::string& k, uint64_t def, uint64_t lo,
                  uint64_t hi) const {
    return static_cast<uint64_t>(int_or(k, static_cast<int64_t>(def),
                                        static_cast<int64_t>(lo),
                                        static_cast<int64_t>(hi)));
  }
  const std::vector<ConfigValue>& req_array(const std::string& k) const {
    const ConfigValue& v = require(k);
    if (v.kind != ConfigValue::Kind::array) wrong_type(v, k, "array");
    return v.arr_v;
  }
  std::vector<ConfigValue> array_or(const std::string& k) const {
    const ConfigValue* v = find(k);
    if (!v) return {};
    if (v->kind != ConfigValue::Kind::array) wrong_type(*v, k, "array");
    return v->arr_v;
  }
  std::vector<std::string> str_array(const std::vector<ConfigValue>& a,
                                     const std::string& k) const {
    std::vector<std::string> out;
    out.reserve(a.size());
    for (const auto& v : a) out.push_back(as_str(v, k));
    return out;
  }
};

// Wraps element/descriptor parse errors with the value's file position.
template <typename F>
auto at_value(const ConfigFile& cf, const ConfigValue& v, F&& fn)
    -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    cf.fail_at(v, e.what());
  }
}

std::string dir_of(const std::string& path) {
  size_t slash = path.find_last_of('/');
  if (slash == std::string::npos) return "";
  return path.substr(0, slash + 1);
}

FuncDesc parse_desc_at(const ConfigFile& cf, const ConfigValue& v,
                       const std::string& k, const Sect& sect) {
  std::string text = sect.as_str(v, k);
  if (text.rfind("table:", 0) == 0 && text.size() > 6 && text[6] != '/')
    text = "table:" + dir_of(cf.name()) + text.substr(6);
  return at_value(cf, v, [&] { return parse_funcdesc(text); });
}

Field build_field(const ConfigFile& cf) {
  cf.declare_section("field");
  Sect f{cf, "field"};
  const ConfigValue& kv = f.require("kind");
  std::string kind = f.as_str(kv, "kind");
  if (kind == "gf") {
    const ConfigValue& mv = f.require("modulus");
    int64_t p = f.as_int(mv, "modulus");
    if (p < 2) cf.fail_at(mv, "[field] modulus must be at least 2");
    return at_value(cf, mv, [&] { return Field::gf(static_cast<uint64_t>(p)); });
  }
  if (kind == "rationals") {
    if (const ConfigValue* mv = f.find("modulus"))
      cf.fail_at(*mv, "[field] modulus is only valid for kind \"gf\"");
    return Field::rationals();
  }
  cf.fail_at(kv, "[field] kind must be \"gf\" or \"rationals\"");
}

AlgebraSpec build_algebra(const ConfigFile& cf) {
  if (!cf.has_section("field"))
    fail(ErrKind::config,
         cf.name() + ": [algebra] requires a [field] section");
  Field fld = build_field(cf);
  cf.declare_section("algebra");
  Sect a{cf, "algebra"};
  const ConfigValue& kv = a.require("kind");
  std::string kind = a.as_str(kv, "kind");
  if (kind == "polynomial") {
    const ConfigValue& vv = a.require("vars");
    if (vv.kind != ConfigValue::Kind::array) a.wrong_type(vv, "vars", "array");
    std::vector<std::string> vars = a.str_array(vv.arr_v, "vars");
    return at_value(cf, vv, [&] { return AlgebraSpec::polynomial(fld, vars); });
  }
  if (kind == "structure_constants") {
    const ConfigValue& bv = a.require("basis");
    if (bv.kind != ConfigValue::Kind::array) a.wrong_type(bv, "basis", "array");
    std::vector<std::string> basis = a.str_array(bv.arr_v, "basis");
    bool unital = a.bool_or("unital", false);
    std::optional<std::string> unit = a.opt_str("unit");
    auto resolve = [&](const std::string& n) -> std::optional<BasisLabel> {
      for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == n) return BasisLabel::index(i);
      return std::nullopt;
    };
    auto index_of = [&](const std::string& n,
                        const ConfigValue& v) -> uint32_t {
      for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == n) return static_cast<uint32_t>(i);
      cf.fail_at(v, "'" + n + "' is not a basis element");
    };
    std::vector<std::tuple<uint32_t, uint32_t, AlgElement>> entries;
    std::set<std::pair<uint32_t, uint32_t>> seen;
    for (const ConfigValue& pv : a.array_or("products")) {
      std::string row = a.as_str(pv, "products");
      size_t eq = row.find('=');
      size_t star = row.find('*');
      if (eq == std::string::npos || star == std::string::npos || star > eq)
        cf.fail_at(pv, "product rows look like \"a*b = combination\"");
      auto trim = [](std::string t) {
        size_t b = t.find_first_not_of(" \t");
        size_t e = t.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
      };
      uint32_t i = index_of(trim(row.substr(0, star)), pv);
      uint32_t j = index_of(trim(row.substr(star + 1, eq - star - 1)), pv);
      if (!seen.emplace(i, j).second)
        cf.fail_at(pv, "duplicate product row for this pair");
      AlgElement prod = at_value(cf, pv, [&] {
        return parse_linear_combination(fld, resolve, row.substr(eq + 1));
      });
      entries.emplace_back(i, j, std::move(prod));
    }
    return at_value(cf, kv, [&] {
      return AlgebraSpec::structure_constants(fld, basis, entries, unital,
                                              unit);
    });
  }
  if (kind == "monomial_quotient") {
    const ConfigValue& av = a.require("alphabet");
    if (av.kind != ConfigValue::Kind::array)
      a.wrong_type(av, "alphabet", "array");
    std::vector<std::string> alphabet = a.str_array(av.arr_v, "alphabet");
    std::vector<std::string> forbidden =
        a.str_array(a.array_or("forbidden"), "forbidden");
    bool domain = a.bool_or("domain", false);
    AlgebraSpec spec = at_value(cf, av, [&] {
      return AlgebraSpec::monomial_quotient(fld, alphabet, forbidden, domain);
    });
    uint64_t cap = a.u64_or("word_cap", 0, 0, 1 << 20);
    if (cap > 0) spec.set_word_cap(static_cast<uint32_t>(cap));
    return spec;
  }
  cf.fail_at(kv, "[algebra] kind must be \"polynomial\", "
                 "\"structure_constants\", or \"monomial_quotient\"");
}

std::map<int64_t, AlgElement> parse_entry_list(const ConfigFile& cf,
                                               const AlgebraSpec& alg,
                                               const Sect& sect,
                                               const std::string& key) {
  std::map<int64_t, AlgElement> entries;
  for (const ConfigValue& ev : sect.req_array(key)) {
    std::string row = sect.as_str(ev, key);
    size_t colon = row.find(':');
    if (colon == std::string::npos)
      cf.fail_at(ev, "entries look like \"position: element\"");
    int64_t pos = 0;
    try {
      size_t used = 0;
      pos = std::stoll(row.substr(0, colon), &used);
      std::string head = row.substr(0, colon);
      while (used < head.size() &&
             std::isspace(static_cast<unsigned char>(head[used])))
        ++used;
      if (used != head.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      cf.fail_at(ev, "entry position must be an integer");
    }
    if (pos < 1) cf.fail_at(ev, "entry positions start at 1");
    if (!entries
             .emplace(pos, at_value(cf, ev, [&] {
                        return parse_element(alg, row.substr(colon + 1));
                      }))
             .second)
      cf.fail_at(ev, "duplicate entry position " + std::to_string(pos));
  }
  return entries;
}

GeneratingSequence build_sequence(const ConfigFile& cf, const AlgebraSpec& alg,
                                  int64_t& unit_cell) {
  cf.declare_section("sequence");
  Sect s{cf, "sequence"};
  unit_cell = s.int_or("unit_cell", 0, -8, 8);
  bool gap_mode = s.bool_or("gap_mode", false);
  const ConfigValue& kv = s.require("kind");
  std::string kind = s.as_str(kv, "kind");
  if (kind == "explicit") {
    auto entries = parse_entry_list(cf, alg, s, "entries");
    return at_value(cf, kv, [&] {
      return GeneratingSequence::explicit_list(alg, std::move(entries),
                                               gap_mode);
    });
  }
  if (kind == "rule_quadratic") {
    const ConfigValue& pv = s.require("positions");
    if (pv.kind != ConfigValue::Kind::array ||
        pv.arr_v.size() != 3)
      cf.fail_at(pv, "positions must be [a, b, c] for n_k = a*k^2 + b*k + c");
    int64_t qa = s.as_int(pv.arr_v[0], "positions");
    int64_t qb = s.as_int(pv.arr_v[1], "positions");
    int64_t qc = s.as_int(pv.arr_v[2], "positions");
    const ConfigValue& rv = s.require("element_rule");
    std::string rule = s.as_str(rv, "element_rule");
    ElementRule er;
    size_t colon = rule.find(':');
    std::string head = rule.substr(0, colon);
    std::string rest =
        colon == std::string::npos ? std::string() : rule.substr(colon + 1);
    if (head == "var_power") {
      er.kind = ElementRule::Kind::var_power;
      std::vector<std::string> vars = alg.vars();
      for (char c : alg.alphabet()) vars.emplace_back(1, c);
      size_t idx = vars.size();
      for (size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == rest) idx = i;
      if (idx == vars.size())
        cf.fail_at(rv, "var_power needs a variable or alphabet letter name");
      er.var = idx;
    } else if (head == "constant") {
      er.kind = ElementRule::Kind::constant;
      er.elems.push_back(
          at_value(cf, rv, [&] { return parse_element(alg, rest); }));
    } else if (head == "cycle") {
      er.kind = ElementRule::Kind::cycle;
      std::stringstream ss(rest);
      std::string part;
      while (std::getline(ss, part, ';'))
        er.elems.push_back(
            at_value(cf, rv, [&] { return parse_element(alg, part); }));
      if (er.elems.empty()) cf.fail_at(rv, "cycle needs at least one element");
    } else {
      cf.fail_at(rv, "element_rule must be var_power:<var>, constant:<expr>, "
                     "or cycle:<expr>;<expr>;...");
    }
    int64_t horizon =
        s.int_or("rule_horizon", 1000000, 1, int64_t{1} << 40);
    return at_value(cf, kv, [&] {
      return GeneratingSequence::rule_quadratic(alg, qa, qb, qc, er, horizon,
                                                gap_mode);
    });
  }
  cf.fail_at(kv, "[sequence] kind must be \"explicit\" or \"rule_quadratic\"");
}

GrowthParams build_growth(const ConfigFile& cf) {
  GrowthParams g;
  if (!cf.has_section("growth")) return g;
  cf.declare_section("growth");
  Sect s{cf, "growth"};
  g.horizon = s.u64_or("horizon", g.horizon, 1, 1000000);
  g.snapshots = s.bool_or("snapshots", false);
  g.emit_w = s.bool_or("w_series", true);
  return g;
}

VerifyParams build_verify(const ConfigFile& cf) {
  VerifyParams v;
  if (!cf.has_section("verify")) return v;
  cf.declare_section("verify");
  Sect s{cf, "verify"};
  static const std::vector<std::string> known = {
      "left_ideal", "banded",     "associativity", "oracle",
      "membership", "shape",      "corollary1"};
  for (const ConfigValue& c : s.array_or("checks")) {
    std::string name = s.as_str(c, "checks");
    bool ok = false;
    for (const auto& k : known) ok = ok || k == name;
    if (!ok) cf.fail_at(c, "unknown check '" + name + "'");
    v.checks.push_back(name);
  }
  v.samples = s.u64_or("samples", v.samples, 1, 1000000);
  v.degree = s.u64_or("degree", v.degree, 1, 64);
  v.triples = s.u64_or("triples", v.triples, 1, 1000000);
  v.pairs = s.u64_or("pairs", v.pairs, 1, 1000000);
  v.membership_n = s.u64_or("membership_n", v.membership_n, 1, 64);
  v.shape_n = s.u64_or("shape_n", v.shape_n, 1, 64);
  v.corollary_n = s.u64_or("corollary_n", v.corollary_n, 1, 256);
  return v;
}

std::optional<DiluteParams> build_dilute(const ConfigFile& cf,
                                         const std::optional<AlgebraSpec>& alg) {
  if (!cf.has_section("dilute")) return std::nullopt;
  cf.declare_section("dilute");
  Sect s{cf, "dilute"};
  DiluteParams d;
  std::vector<ConfigValue> gens = s.array_or("generators");
  if (!gens.empty() && !alg)
    fail(ErrKind::config,
         cf.name() + ": [dilute] generators need an [algebra] section");
  for (const ConfigValue& gv : gens) {
    std::string expr = s.as_str(gv, "generators");
    d.generator_names.push_back(expr);
    d.generators.push_back(
        at_value(cf, gv, [&] { return parse_element(*alg, expr); }));
  }
  if (const ConfigValue* fv = s.find("f"))
    d.f = parse_desc_at(cf, *fv, "f", s);
  for (const ConfigValue& ev : s.array_or("eps")) {
    Rat r = s.as_rat(ev, "eps");
    if (r <= 0) cf.fail_at(ev, "eps values must be positive");
    d.eps.push_back(r);
  }
  for (const ConfigValue& cv : s.array_or("cs")) {
    int64_t c = s.as_int(cv, "cs");
    if (c < 1) cf.fail_at(cv, "cs values must be at least 1");
    d.cs.push_back(static_cast<uint64_t>(c));
  }
  const ConfigValue* hv = s.find("h");
  std::optional<std::string> preset = s.opt_str("preset");
  if (hv && preset)
    cf.fail_at(*hv, "[dilute] give either h or preset, not both");
  if (hv) {
    d.h = parse_desc_at(cf, *hv, "h", s);
  } else if (preset) {
    if (*preset != "superlinear_surrogate")
      fail(ErrKind::config,
           cf.name() + ": [dilute] the only preset is \"superlinear_surrogate\"");
    d.h = FuncDesc::n_ceil_ln_n();
  }
  d.horizon = s.u64_or("horizon", d.horizon, 1, 100000000);
  d.fit_horizon = s.u64_or("fit_horizon", d.fit_horizon, 1, 64);
  d.c_cap = s.u64_or("c_cap", d.c_cap, 1, 100000);
  for (const ConfigValue& mv : s.array_or("merge"))
    d.merge.push_back(parse_desc_at(cf, mv, "merge", s));
  if (const ConfigValue* sv = s.find("superlinearize"))
    d.superlin = parse_desc_at(cf, *sv, "superlinearize", s);

  if (!d.generators.empty()) {
    if (d.eps.size() != d.generators.size())
      fail(ErrKind::config,
           cf.name() + ": [dilute] eps must match generators in length");
    if (!d.cs.empty()) {
      if (d.cs.size() != d.generators.size())
        fail(ErrKind::config,
             cf.name() + ": [dilute] cs must match generators in length");
    } else if (!d.f) {
      fail(ErrKind::config,
           cf.name() + ": [dilute] needs either cs or f with eps");
    }
    if (!d.h)
      fail(ErrKind::config, cf.name() + ": [dilute] needs h or preset");
  }
  return d;
}

std::optional<SemigroupParams> build_semigroup(const ConfigFile& cf) {
  if (!cf.has_section("semigroup")) return std::nullopt;
  cf.declare_section("semigroup");
  Sect s{cf, "semigroup"};
  const ConfigValue& kv = s.require("kind");
  std::string kind = s.as_str(kv, "kind");
  std::optional<SemigroupSpec> P;
  if (kind == "free_monogenic") {
    P = SemigroupSpec::free_monogenic();
  } else if (kind == "table") {
    const ConfigValue& nv = s.require("names");
    if (nv.kind != ConfigValue::Kind::array) s.wrong_type(nv, "names", "array");
    std::vector<std::string> names = s.str_array(nv.arr_v, "names");
    std::vector<std::vector<std::string>> rows;
    for (const ConfigValue& rv : s.req_array("rows")) {
      std::string row = s.as_str(rv, "rows");
      std::vector<std::string> cells;
      std::stringstream ss(row);
      std::string cell;
      while (ss >> cell) cells.push_back(cell);
      rows.push_back(std::move(cells));
    }
    P = at_value(cf, kv, [&] { return SemigroupSpec::from_table(names, rows); });
  } else if (kind == "free_monoid") {
    const ConfigValue& av = s.require("alphabet");
    if (av.kind != ConfigValue::Kind::array)
      s.wrong_type(av, "alphabet", "array");
    std::vector<std::string> alphabet = s.str_array(av.arr_v, "alphabet");
    const ConfigValue* capv = s.find("cap");
    if (!capv)
      fail(ErrKind::config,
           cf.name() + ": [semigroup] kind \"free_monoid\" requires cap");
    int64_t cap = s.as_int(*capv, "cap");
    if (cap < 1 || cap > 1000000) cf.fail_at(*capv, "cap must be in [1, 10^6]");
    P = at_value(cf, *capv, [&] {
      return SemigroupSpec::free_monoid(alphabet, static_cast<uint32_t>(cap));
    });
  } else {
    cf.fail_at(kv, "[semigroup] kind must be \"free_monogenic\", \"table\", "
                   "or \"free_monoid\"");
  }
  AlgebraSpec alg = P->to_algebra();
  SemigroupParams out{std::move(*P), parse_entry_list(cf, alg, s, "entries")};
  out.horizon = s.u64_or("horizon", out.horizon, 1, 64);
  out.samples = s.u64_or("samples", out.samples, 1, 1000000);
  out.degree = s.u64_or("degree", out.degree, 1, 16);
  uint64_t default_triples = kind == "table" ? 0 : 1000;
  out.rees_triples = s.u64_or("rees_triples", default_triples, 0, 1000000);
  out.unit_cell = s.int_or("unit_cell", 0, -8, 8);
  return out;
}

} // namespace

ConfigFile ConfigFile::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrKind::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

ConfigFile ConfigFile::parse_text(std::string text, std::string name) {
  ConfigFile cf;
  cf.name_ = std::move(name);
  cf.text_ = std::move(text);
  CLex lex(cf.text_, cf.name_);
  cf.sections_[""];
  std::string current;
  while (lex.peek().kind != CTok::end) {
    CTok t = lex.peek();
    if (t.kind == CTok::lbracket) {
      lex.take();
      std::string sec;
      for (;;) {
        CTok id = lex.take();
        if (id.kind != CTok::ident) lex.err(id, "expected a section name");
        sec += id.text;
        CTok nxt = lex.take();
        if (nxt.kind == CTok::dot) {
          sec += '.';
          continue;
        }
        if (nxt.kind == CTok::rbracket) break;
        lex.err(nxt, "expected '.' or ']' in section header");
      }
      auto [it, fresh] = cf.sections_.emplace(sec, Section{});
      if (fresh) it->second.line = t.line;
      current = sec;
      continue;
    }
    if (t.kind == CTok::ident || t.kind == CTok::str) {
      CTok key = lex.take();
      CTok eq = lex.take();
      if (eq.kind != CTok::equals)
        lex.err(eq, "expected '=' after key '" + key.text + "'");
      ConfigValue v = parse_value(lex);
      v.line = key.line;
      v.col = key.col;
      if (!cf.sections_[current].keys.emplace(key.text, Entry{std::move(v)})
               .second)
        lex.err(key, "duplicate key '" + key.text + "'");
      continue;
    }
    lex.err(t, "expected a key or a [section] header");
  }
  return cf;
}

bool ConfigFile::has_section(const std::string& s) const {
  return sections_.count(s) > 0 && (!s.empty() || !sections_.at(s).keys.empty());
}

const ConfigValue* ConfigFile::find(const std::string& s,
                                    const std::string& k) const {
  auto sit = sections_.find(s);
  if (sit == sections_.end()) return nullptr;
  auto kit = sit->second.keys.find(k);
  if (kit == sit->second.keys.end()) return nullptr;
  kit->second.consumed = true;
  return &kit->second.value;
}

const ConfigValue& ConfigFile::require(const std::string& s,
                                       const std::string& k) const {
  const ConfigValue* v = find(s, k);
  if (!v) {
    std::string where = s.empty() ? "top level" : "[" + s + "]";
    fail(ErrKind::config,
         name_ + ": " + where + " is missing required key '" + k + "'");
  }
  return *v;
}

void ConfigFile::declare_section(const std::string& s) const {
  auto sit = sections_.find(s);
  if (sit != sections_.end()) sit->second.declared = true;
}

void ConfigFile::reject_leftovers() const {
  for (const auto& [sec, body] : sections_) {
    if (!sec.empty() && !body.declared)
      fail(ErrKind::config, name_ + ":" + std::to_string(body.line) +
                                ": unknown section [" + sec + "]");
    for (const auto& [key, entry] : body.keys)
      if (!entry.consumed)
        fail_at(entry.value,
                "unknown key '" + key + "' in " +
                    (sec.empty() ? std::string("the top level") : "[" + sec + "]"));
  }
}

void ConfigFile::fail_at(const ConfigValue& v, const std::string& msg) const {
  fail(ErrKind::config,
       name_ + ":" + std::to_string(v.line) + ":" + std::to_string(v.col) +
           ": " + msg,
       v.line, v.col);
}

void ConfigFile::fail_here(const std::string& msg) const {
  fail(ErrKind::config, name_ + ": " + msg);
}

const AlgebraSpec& RunConfig::alg() const {
  if (!algebra)
    fail(ErrKind::config, path + ": this command needs an [algebra] section");
  return *algebra;
}

const GeneratingSequence& RunConfig::seq() const {
  if (!sequence)
    fail(ErrKind::config, path + ": this command needs a [sequence] section");
  return *sequence;
}

RunConfig load_run_config_text(std::string text, std::string name,
                               const CliOverrides& ov) {
  ConfigFile cf = ConfigFile::parse_text(std::move(text), std::move(name));
  RunConfig rc;
  rc.path = cf.name();
  rc.text = cf.text();

  cf.declare_section("");
  Sect top{cf, ""};
  rc.seed = top.u64_or("seed", 1, 0, std::numeric_limits<int64_t>::max());
  std::string mode = top.str_or("mode", "formal");
  if (mode == "formal") {
    rc.mode = ZeroMode::formal;
  } else if (mode == "exact") {
    rc.mode = ZeroMode::exact;
  } else {
    fail(ErrKind::config,
         cf.name() + ": mode must be \"formal\" or \"exact\"");
  }

  if (cf.has_section("output")) {
    cf.declare_section("output");
    Sect o{cf, "output"};
    rc.basename = o.str_or("basename", rc.basename);
    bool ok = !rc.basename.empty();
    for (char c : rc.basename)
      ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                  c == '-');
    if (!ok)
      fail(ErrKind::config,
           cf.name() + ": [output] basename must be [A-Za-z0-9_-]+");
  }

  if (cf.has_section("algebra")) {
    rc.algebra = build_algebra(cf);
    if (cf.has_section("sequence"))
      rc.sequence = build_sequence(cf, *rc.algebra, rc.unit_cell);
  } else if (cf.has_section("field")) {
    fail(ErrKind::config,
         cf.name() + ": [field] without an [algebra] section");
  } else if (cf.has_section("sequence")) {
    fail(ErrKind::config,
         cf.name() + ": [sequence] requires an [algebra] section");
  }

  rc.growth = build_growth(cf);
  rc.verify = build_verify(cf);
  rc.dilute = build_dilute(cf, rc.algebra);
  rc.semigroup = build_semigroup(cf);

  if (ov.seed) rc.seed = *ov.seed;
  if (ov.mode) rc.mode = *ov.mode;
  if (ov.horizon) {
    if (*ov.horizon < 1)
      fail(ErrKind::config, "--horizon must be at least 1");
    rc.growth.horizon = *ov.horizon;
    if (rc.dilute) rc.dilute->horizon = *ov.horizon;
    if (rc.semigroup) rc.semigroup->horizon = *ov.horizon;
  }

  cf.reject_leftovers();
  return rc;
}

RunConfig load_run_config(const std::string& path, const CliOverrides& ov) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrKind::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_run_config_text(ss.str(), path, ov);
}

} // namespace wreath
