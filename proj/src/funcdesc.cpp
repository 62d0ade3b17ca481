#include "wreath/funcdesc.hpp"

#include <fstream>
#include <sstream>

namespace wreath {

namespace {

void require_ge_one(const Rat& v, const char* what) {
  if (v < 1) fail(ErrKind::config, std::string(what) + " must be >= 1");
}

} // namespace

FuncDesc FuncDesc::constant(const Rat& v) {
  require_ge_one(v, "constant value");
  FuncDesc f;
  f.family_ = Family::constant;
  f.param_ = v;
  return f;
}

FuncDesc FuncDesc::power(uint64_t d) {
  if (d > 1024) fail(ErrKind::config, "power degree too large");
  FuncDesc f;
  f.family_ = Family::power;
  f.deg_ = d;
  return f;
}

FuncDesc FuncDesc::exponential(const Rat& alpha) {
  if (sgn(alpha) <= 0)
    fail(ErrKind::config, "exponential rate must be positive");
  FuncDesc f;
  f.family_ = Family::exponential;
  f.param_ = alpha;
  f.claimed_subexp_ = false;
  return f;
}

FuncDesc FuncDesc::exp_power(unsigned long p, unsigned long q) {
  if (p == 0 || q == 0) fail(ErrKind::config, "exp_power exponent must be positive");
  if (p > 64 || q > 64) fail(ErrKind::config, "exp_power exponent too large");
  FuncDesc f;
  f.family_ = Family::exp_power;
  f.beta_p_ = p;
  f.beta_q_ = q;
  f.claimed_subexp_ = p < q;
  return f;
}

FuncDesc FuncDesc::n_ceil_ln_n() {
  FuncDesc f;
  f.family_ = Family::n_ceil_ln_n;
  return f;
}

FuncDesc FuncDesc::n_ln_n_plus_n() {
  FuncDesc f;
  f.family_ = Family::n_ln_n_plus_n;
  return f;
}

FuncDesc FuncDesc::table(std::map<uint64_t, Rat> values, Extension ext,
                         std::string source) {
  if (values.empty()) fail(ErrKind::config, "empty function table");
  FuncDesc f;
  f.family_ = Family::table;
  f.ext_ = ext;
  f.source_ = std::move(source);
  const Rat* prev = nullptr;
  for (const auto& [n, v] : values) {
    if (n == 0) fail(ErrKind::config, "table argument must be >= 1");
    require_ge_one(v, "table value");
    if (prev && v < *prev) f.increasing_ = false;
    prev = &v;
  }
  f.values_ = std::move(values);
  f.claimed_subexp_ = false;
  return f;
}

uint64_t FuncDesc::table_key(uint64_t n) const {
  auto it = values_.upper_bound(n);
  if (it == values_.begin())
    fail(ErrKind::range, "argument below table start in " + describe());
  --it;
  if (it->first != n && ext_ == Extension::error)
    fail(ErrKind::range,
         "no table entry for argument " + std::to_string(n) + " in " + describe());
  return it->first;
}

Ival FuncDesc::eval(uint64_t n, long bits) const {
  if (n == 0) fail(ErrKind::precondition, "function argument must be >= 1");
  switch (family_) {
    case Family::constant:
      return Ival(param_);
    case Family::power: {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), n, deg_);
      return Ival(Rat(v));
    }
    case Family::exponential:
      return exp_ival(Ival(param_ * Rat(static_cast<unsigned long>(n))), bits);
    case Family::exp_power:
      return exp_ival(root_ival(mpz_class(static_cast<unsigned long>(n)),
                                beta_p_, beta_q_, bits + 8),
                      bits);
    case Family::n_ceil_ln_n:
      return Ival(eval_exact(n));
    case Family::n_ln_n_plus_n: {
      Ival l = ln_mpz(mpz_class(static_cast<unsigned long>(n)), bits + 8);
      Rat m(static_cast<unsigned long>(n));
      return round_out({m * l.lo + m, m * l.hi + m}, bits);
    }
    case Family::table:
      return Ival(values_.at(table_key(n)));
  }
  fail(ErrKind::internal, "unknown function family");
}

Ival FuncDesc::eval_ln(uint64_t n, long bits) const {
  if (n == 0) fail(ErrKind::precondition, "function argument must be >= 1");
  switch (family_) {
    case Family::constant:
      return ln_rat(param_, bits);
    case Family::power: {
      if (deg_ == 0) return Ival(Rat(0));
      Ival l = ln_mpz(mpz_class(static_cast<unsigned long>(n)), bits + 4);
      Rat d(static_cast<unsigned long>(deg_));
      return round_out({d * l.lo, d * l.hi}, bits);
    }
    case Family::exponential:
      return Ival(param_ * Rat(static_cast<unsigned long>(n)));
    case Family::exp_power:
      return root_ival(mpz_class(static_cast<unsigned long>(n)), beta_p_,
                       beta_q_, bits);
    case Family::n_ceil_ln_n: {
      Rat v = eval_exact(n);
      return ln_mpz(v.get_num(), bits);
    }
    case Family::n_ln_n_plus_n:
      return ln_ival(eval(n, bits + 8), bits);
    case Family::table:
      return ln_rat(values_.at(table_key(n)), bits);
  }
  fail(ErrKind::internal, "unknown function family");
}

bool FuncDesc::is_rational() const {
  switch (family_) {
    case Family::constant:
    case Family::power:
    case Family::n_ceil_ln_n:
    case Family::table:
      return true;
    default:
      return false;
  }
}

Rat FuncDesc::eval_exact(uint64_t n) const {
  if (n == 0) fail(ErrKind::precondition, "function argument must be >= 1");
  switch (family_) {
    case Family::constant:
      return param_;
    case Family::power: {
      mpz_class v;
      mpz_ui_pow_ui(v.get_mpz_t(), n, deg_);
      return Rat(v);
    }
    case Family::n_ceil_ln_n: {
      uint64_t c = ceil_ln_u64(n);
      if (c < 1) c = 1;
      return Rat(static_cast<unsigned long>(n)) * Rat(static_cast<unsigned long>(c));
    }
    case Family::table:
      return values_.at(table_key(n));
    default:
      fail(ErrKind::precondition, describe() + " has no exact rational values");
  }
}

const std::map<uint64_t, Rat>& FuncDesc::table_values() const {
  if (family_ != Family::table)
    fail(ErrKind::precondition, describe() + " is not a table");
  return values_;
}

void FuncDesc::set_piece(uint64_t n, uint64_t k) {
  if (family_ != Family::table)
    fail(ErrKind::precondition, describe() + " is not a table");
  piece_[n] = k;
}

std::string FuncDesc::describe() const {
  switch (family_) {
    case Family::constant:
      return "constant:" + param_.get_str();
    case Family::power:
      return "power:" + std::to_string(deg_);
    case Family::exponential:
      return "exponential:" + param_.get_str();
    case Family::exp_power:
      return "exp_power:" + std::to_string(beta_p_) + "/" + std::to_string(beta_q_);
    case Family::n_ceil_ln_n:
      return "n_ceil_ln_n";
    case Family::n_ln_n_plus_n:
      return "n_ln_n_plus_n";
    case Family::table:
      return "table:" + source_ + "[" + std::to_string(values_.size()) + "]";
  }
  return "?";
}

Rat parse_rational(const std::string& text) {
  auto is_uint = [](const std::string& s) {
    if (s.empty() || s.size() > 18) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string body = text;
  bool neg = false;
  if (!body.empty() && body[0] == '-') {
    neg = true;
    body.erase(0, 1);
  }
  std::string num = body, den = "1";
  auto slash = body.find('/');
  if (slash != std::string::npos) {
    num = body.substr(0, slash);
    den = body.substr(slash + 1);
  }
  if (!is_uint(num) || !is_uint(den))
    fail(ErrKind::config, "malformed rational '" + text + "'");
  mpz_class nz(num), dz(den);
  if (dz == 0) fail(ErrKind::config, "zero denominator in '" + text + "'");
  Rat r{nz, dz};
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

std::map<uint64_t, Rat> load_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::config, "cannot open table file " + path);
  std::map<uint64_t, Rat> values;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream ss(line);
    std::string ns, vs, extra;
    if (!(ss >> ns)) continue;
    if (!(ss >> vs) || (ss >> extra))
      fail(ErrKind::config, path + ":" + std::to_string(lineno) +
                                ": expected one 'n value' pair");
    Rat nr = parse_rational(ns);
    if (nr.get_den() != 1 || sgn(nr) <= 0 || nr.get_num() > 1000000000)
      fail(ErrKind::config, path + ":" + std::to_string(lineno) +
                                ": argument must be a positive integer");
    uint64_t n = mpz_get_ui(nr.get_num().get_mpz_t());
    if (values.count(n))
      fail(ErrKind::config, path + ":" + std::to_string(lineno) +
                                ": duplicate argument " + std::to_string(n));
    values.emplace(n, parse_rational(vs));
  }
  return values;
}

FuncDesc parse_funcdesc(const std::string& text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    auto colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  const std::string& fam = parts[0];
  auto want_arg = [&](size_t n) {
    if (parts.size() != n + 1)
      fail(ErrKind::config, "descriptor '" + text + "': expected " +
                                (n ? "one parameter" : "no parameter"));
  };
  if (fam == "constant") {
    want_arg(1);
    return FuncDesc::constant(parse_rational(parts[1]));
  }
  if (fam == "power") {
    want_arg(1);
    Rat d = parse_rational(parts[1]);
    if (d.get_den() != 1 || sgn(d) < 0)
      fail(ErrKind::config, "power degree must be a nonnegative integer");
    return FuncDesc::power(mpz_get_ui(d.get_num().get_mpz_t()));
  }
  if (fam == "exponential") {
    want_arg(1);
    return FuncDesc::exponential(parse_rational(parts[1]));
  }
  if (fam == "exp_power") {
    want_arg(1);
    Rat b = parse_rational(parts[1]);
    if (sgn(b) <= 0) fail(ErrKind::config, "exp_power exponent must be positive");
    return FuncDesc::exp_power(mpz_get_ui(b.get_num().get_mpz_t()),
                               mpz_get_ui(b.get_den().get_mpz_t()));
  }
  if (fam == "n_ceil_ln_n") {
    want_arg(0);
    return FuncDesc::n_ceil_ln_n();
  }
  if (fam == "n_ln_n_plus_n") {
    want_arg(0);
    return FuncDesc::n_ln_n_plus_n();
  }
  if (fam == "table") {
    if (parts.size() < 2)
      fail(ErrKind::config, "descriptor '" + text + "': missing table path");
    auto ext = FuncDesc::Extension::error;
    size_t last = parts.size();
    if (parts.back() == "hold_last") {
      ext = FuncDesc::Extension::hold_last;
      --last;
    }
    std::string path;
    for (size_t i = 1; i < last; ++i) {
      if (i > 1) path += ":";
      path += parts[i];
    }
    if (path.empty())
      fail(ErrKind::config, "descriptor '" + text + "': missing table path");
    return FuncDesc::table(load_table_file(path), ext, path);
  }
  fail(ErrKind::config, "unknown function family '" + fam + "'");
}

} // namespace wreath
