#include "wreath/wreath.hpp"

#include <sstream>

namespace wreath {

void WreathElement::add_laurent(int64_t k, const Scalar& c, const Field& f) {
  if (f.is_zero(c)) return;
  auto it = laurent.find(k);
  if (it == laurent.end()) {
    laurent.emplace(k, c);
    return;
  }
  it->second = f.add(it->second, c);
  if (f.is_zero(it->second)) laurent.erase(it);
}

namespace {

void accumulate(std::map<WreathElement::Key, AlgElement>& part, int64_t i,
                int64_t j, const AlgElement& b, const Field& f) {
  if (b.is_zero()) return;
  WreathElement::Key key{i, j};
  auto it = part.find(key);
  if (it == part.end()) {
    part.emplace(key, b);
    return;
  }
  for (const auto& [l, c] : b.terms()) it->second.add_term(l, c, f);
  if (it->second.is_zero()) part.erase(it);
}

} // namespace

void WreathElement::add_mat(int64_t i, int64_t j, const AlgElement& b,
                            const Field& f) {
  accumulate(mat, i, j, b, f);
}

void WreathElement::add_tail(int64_t i, int64_t j, const AlgElement& w,
                             const Field& f) {
  accumulate(tails, i, j, w, f);
}

std::array<WreathElement, 4> make_generators(const WreathContext& ctx,
                                             int64_t unit_cell) {
  const Field& f = ctx.alg.field();
  WreathElement t, tinv, e, c;
  t.add_laurent(1, f.one(), f);
  tinv.add_laurent(-1, f.one(), f);
  e.add_mat(unit_cell, unit_cell, ctx.alg.one(), f);
  c.add_tail(0, 0, ctx.alg.one(), f);
  return {t, tinv, e, canonicalize(ctx, c)};
}

WreathElement wreath_add(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y) {
  const Field& f = ctx.alg.field();
  WreathElement r = x;
  for (const auto& [k, c] : y.laurent) r.add_laurent(k, c, f);
  for (const auto& [ij, b] : y.mat) r.add_mat(ij.first, ij.second, b, f);
  for (const auto& [ij, w] : y.tails) r.add_tail(ij.first, ij.second, w, f);
  return r;
}

WreathElement wreath_scale(const WreathContext& ctx, const WreathElement& x,
                           const Scalar& c) {
  const Field& f = ctx.alg.field();
  WreathElement r;
  for (const auto& [k, d] : x.laurent) r.add_laurent(k, f.mul(d, c), f);
  for (const auto& [ij, b] : x.mat)
    r.add_mat(ij.first, ij.second, ctx.alg.scale(b, c), f);
  for (const auto& [ij, w] : x.tails)
    r.add_tail(ij.first, ij.second, ctx.alg.scale(w, c), f);
  return r;
}

WreathElement wreath_sub(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y) {
  const Field& f = ctx.alg.field();
  return wreath_add(ctx, x, wreath_scale(ctx, y, f.neg(f.one())));
}

WreathElement wreath_mul(const WreathContext& ctx, const WreathElement& x,
                         const WreathElement& y) {
  const Field& f = ctx.alg.field();
  const AlgebraSpec& A = ctx.alg;
  WreathElement r;

  for (const auto& [k, c] : x.laurent) {
    for (const auto& [m, d] : y.laurent) r.add_laurent(k + m, f.mul(c, d), f);
    for (const auto& [ij, b] : y.mat)
      r.add_mat(ij.first + k, ij.second, A.scale(b, c), f);
    for (const auto& [ij, w] : y.tails)
      r.add_tail(ij.first + k, ij.second, A.scale(w, c), f);
  }

  for (const auto& [ij, b] : x.mat) {
    for (const auto& [m, c] : y.laurent)
      r.add_mat(ij.first, ij.second - m, A.scale(b, c), f);
    for (const auto& [kl, b2] : y.mat)
      if (ij.second == kl.first)
        r.add_mat(ij.first, kl.second, A.mul(b, b2), f);
    for (const auto& [kl, w] : y.tails)
      if (ij.second == kl.first)
        r.add_tail(ij.first, kl.second, A.mul(b, w), f);
  }

  for (const auto& [ij, w] : x.tails) {
    for (const auto& [m, c] : y.laurent)
      r.add_tail(ij.first, ij.second + m, A.scale(w, c), f);
    for (const auto& [kl, b] : y.mat) {
      int64_t m = kl.first + ij.second;
      if (m < 1) continue;
      const AlgElement& am = ctx.seq.entry(m);
      if (am.is_zero()) continue;
      r.add_mat(ij.first, kl.second, A.mul(A.mul(w, am), b), f);
    }
    for (const auto& [kl, w2] : y.tails) {
      int64_t m = kl.first + ij.second;
      if (m < 1) continue;
      const AlgElement& am = ctx.seq.entry(m);
      if (am.is_zero()) continue;
      r.add_tail(ij.first, kl.second, A.mul(A.mul(w, am), w2), f);
    }
  }

  return canonicalize(ctx, r);
}

WreathElement canonicalize(const WreathContext& ctx, const WreathElement& x) {
  const Field& f = ctx.alg.field();
  WreathElement r;
  for (const auto& [k, c] : x.laurent) r.add_laurent(k, c, f);
  for (const auto& [ij, b] : x.mat) r.add_mat(ij.first, ij.second, b, f);
  if (ctx.seq.finite_support()) {
    for (const auto& [ij, w] : x.tails)
      for (const auto& [m, am] : ctx.seq.known_entries())
        r.add_mat(ij.first, m - ij.second, ctx.alg.mul(w, am), f);
  } else {
    for (const auto& [ij, w] : x.tails) r.add_tail(ij.first, ij.second, w, f);
  }
  return r;
}

bool is_zero(const WreathContext& ctx, const WreathElement& x, ZeroMode mode) {
  if (mode == ZeroMode::exact && !ctx.seq.finite_support()) {
    if (!ctx.seq.gap_mode() || !ctx.alg.is_domain())
      fail(ErrKind::unsupported_mode,
           "exact zero test over infinite support needs gap_mode and a domain");
  }
  return canonicalize(ctx, x).formally_zero();
}

WreathElement random_wreath_element(const WreathContext& ctx,
                                    std::mt19937_64& rng) {
  const Field& f = ctx.alg.field();
  WreathElement r;
  size_t parts = rand_range(rng, 1, 5);
  for (size_t p = 0; p < parts; ++p) {
    int64_t i = rand_range_i(rng, -6, 6);
    int64_t j = rand_range_i(rng, -6, 6);
    switch (rand_range(rng, 0, 2)) {
      case 0: {
        Scalar c = f.kind() == Field::Kind::gf
                       ? f.from_int(static_cast<long long>(
                             rand_range(rng, 1, f.modulus() - 1)))
                       : f.from_fraction(rand_range_i(rng, 1, 4) *
                                             (rng() % 2 ? 1 : -1),
                                         rand_range_i(rng, 1, 4));
        r.add_laurent(i, c, f);
        break;
      }
      case 1:
        r.add_mat(i, j, ctx.alg.random_element(rng, 2, 4), f);
        break;
      case 2:
        r.add_tail(i, j, ctx.alg.random_element(rng, 2, 4), f);
        break;
    }
  }
  return canonicalize(ctx, r);
}

WreathElement random_generator_word(const WreathContext& ctx,
                                    std::mt19937_64& rng, uint64_t max_len) {
  auto gens = make_generators(ctx);
  WreathElement acc;
  acc.add_laurent(0, ctx.alg.field().one(), ctx.alg.field());
  uint64_t len = rand_range(rng, 0, max_len);
  for (uint64_t i = 0; i < len; ++i)
    acc = wreath_mul(ctx, acc, gens[rand_range(rng, 0, 3)]);
  return acc;
}

HonestWindow honest_window(const WreathContext& ctx, const WreathElement& x,
                           int64_t r0, int64_t r1, int64_t q0, int64_t q1) {
  if (r0 > r1 || q0 > q1) fail(ErrKind::range, "empty honest window");
  uint64_t cells =
      static_cast<uint64_t>(r1 - r0 + 1) * static_cast<uint64_t>(q1 - q0 + 1);
  if (cells > 16'000'000) fail(ErrKind::range, "honest window too large");

  const Field& f = ctx.alg.field();
  HonestWindow w;
  w.r0 = r0;
  w.r1 = r1;
  w.q0 = q0;
  w.q1 = q1;
  w.entries.assign(cells, AlgElement());
  w.laurent_remainder = x.laurent;

  for (const auto& [ij, b] : x.mat)
    if (ij.first >= r0 && ij.first <= r1 && ij.second >= q0 && ij.second <= q1)
      for (const auto& [l, c] : b.terms())
        w.at(ij.first, ij.second).add_term(l, c, f);

  for (const auto& [ij, tw] : x.tails) {
    if (ij.first < r0 || ij.first > r1) continue;
    for (int64_t q = q0; q <= q1; ++q) {
      int64_t m = q + ij.second;
      if (m < 1) continue;
      const AlgElement& am = ctx.seq.entry(m);
      if (am.is_zero()) continue;
      AlgElement prod = ctx.alg.mul(tw, am);
      for (const auto& [l, c] : prod.terms()) w.at(ij.first, q).add_term(l, c, f);
    }
  }
  return w;
}

std::string describe(const WreathContext& ctx, const WreathElement& x) {
  std::ostringstream os;
  os << "{laurent:" << x.laurent.size() << " mat:" << x.mat.size()
     << " tails:" << x.tails.size();
  if (!x.laurent.empty())
    os << " first_laurent=t^" << x.laurent.begin()->first;
  if (!x.mat.empty())
    os << " first_mat=(" << x.mat.begin()->first.first << ","
       << x.mat.begin()->first.second
       << ")=" << ctx.alg.to_string(x.mat.begin()->second);
  if (!x.tails.empty())
    os << " first_tail=(" << x.tails.begin()->first.first << ","
       << x.tails.begin()->first.second
       << ")=" << ctx.alg.to_string(x.tails.begin()->second);
  os << "}";
  return os.str();
}

Report verify_left_ideal(const WreathContext& ctx, uint64_t sample_count,
                         uint64_t degree, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Field& f = ctx.alg.field();
  Report rep;
  rep.name = "left_ideal";
  rep.params["samples"] = std::to_string(sample_count);
  rep.params["degree"] = std::to_string(degree);
  rep.params["seed"] = std::to_string(seed);
  for (uint64_t s = 0; s < sample_count; ++s) {
    WreathElement word = random_generator_word(ctx, rng, degree);
    WreathElement m;
    m.add_mat(rand_range_i(rng, -6, 6), rand_range_i(rng, -6, 6),
              ctx.alg.random_element(rng, 2, 4), f);
    WreathElement p = wreath_mul(ctx, word, m);
    ++rep.checked;
    if (!p.laurent.empty() || !p.tails.empty())
      rep.fail_with("sample " + std::to_string(s) +
                    ": product left the matrix part: " + describe(ctx, p));
  }
  return rep;
}

Report verify_two_sided_banded(const WreathContext& ctx, uint64_t sample_count,
                               uint64_t degree, uint64_t seed) {
  if (!ctx.seq.finite_support())
    fail(ErrKind::precondition,
         "two-sided closure check needs a finite-support sequence");
  std::mt19937_64 rng(seed);
  const Field& f = ctx.alg.field();
  Report rep;
  rep.name = "two_sided_ideal";
  rep.params["samples"] = std::to_string(sample_count);
  rep.params["degree"] = std::to_string(degree);
  rep.params["seed"] = std::to_string(seed);
  for (uint64_t s = 0; s < sample_count; ++s) {
    WreathElement word = random_generator_word(ctx, rng, degree);
    WreathElement m;
    m.add_mat(rand_range_i(rng, -6, 6), rand_range_i(rng, -6, 6),
              ctx.alg.random_element(rng, 2, 4), f);
    WreathElement p = wreath_mul(ctx, m, word);
    ++rep.checked;
    if (!p.laurent.empty() || !p.tails.empty())
      rep.fail_with("sample " + std::to_string(s) +
                    ": product left the matrix part: " + describe(ctx, p));
  }
  return rep;
}

Report verify_associativity(const WreathContext& ctx, uint64_t triple_count,
                            uint64_t seed) {
  std::mt19937_64 rng(seed);
  Report rep;
  rep.name = "associativity";
  rep.params["triples"] = std::to_string(triple_count);
  rep.params["seed"] = std::to_string(seed);
  for (uint64_t s = 0; s < triple_count; ++s) {
    WreathElement x = random_wreath_element(ctx, rng);
    WreathElement y = random_wreath_element(ctx, rng);
    WreathElement z = random_wreath_element(ctx, rng);
    WreathElement left = wreath_mul(ctx, wreath_mul(ctx, x, y), z);
    WreathElement right = wreath_mul(ctx, x, wreath_mul(ctx, y, z));
    ++rep.checked;
    if (!(left == right))
      rep.fail_with("triple " + std::to_string(s) + ": (xy)z = " +
                    describe(ctx, left) + " vs x(yz) = " + describe(ctx, right));
  }
  return rep;
}

} // namespace wreath
