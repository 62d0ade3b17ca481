#include "wreath/honest.hpp"

#include <set>

namespace wreath {

HonestWindow literal_window_product(const WreathContext& ctx,
                                    const WreathElement& x,
                                    const WreathElement& y, int64_t core) {
  const Field& f = ctx.alg.field();
  // random parts carry indices in [-6,6] and Laurent exponents in [-6,6];
  // +16 covers every shifted access from the core
  int64_t rw = core + 16;
  HonestWindow xw = honest_window(ctx, x, -rw, rw, -rw, rw);
  HonestWindow yw = honest_window(ctx, y, -rw, rw, -rw, rw);

  HonestWindow out;
  out.r0 = -core;
  out.r1 = core;
  out.q0 = -core;
  out.q1 = core;
  out.entries.assign(static_cast<size_t>(2 * core + 1) *
                         static_cast<size_t>(2 * core + 1),
                     AlgElement());

  for (const auto& [k, c] : x.laurent)
    for (const auto& [m, d] : y.laurent) {
      auto it = out.laurent_remainder.find(k + m);
      Scalar s = f.mul(c, d);
      if (it == out.laurent_remainder.end()) {
        if (!f.is_zero(s)) out.laurent_remainder.emplace(k + m, s);
      } else {
        it->second = f.add(it->second, s);
        if (f.is_zero(it->second)) out.laurent_remainder.erase(it);
      }
    }

  // the matrix part of y lives on finitely many rows
  std::set<int64_t> yrows;
  for (const auto& [ij, b] : y.mat) yrows.insert(ij.first);
  for (const auto& [ij, w] : y.tails) yrows.insert(ij.first);

  auto acc_into = [&](AlgElement& dst, const AlgElement& p) {
    for (const auto& [l, c] : p.terms()) dst.add_term(l, c, f);
  };

  for (int64_t i = -core; i <= core; ++i)
    for (int64_t q = -core; q <= core; ++q) {
      AlgElement acc;
      for (int64_t s : yrows) {
        if (s < -rw || s > rw) continue;
        const AlgElement& a = xw.at(i, s);
        if (a.is_zero()) continue;
        const AlgElement& b = yw.at(s, q);
        if (b.is_zero()) continue;
        acc_into(acc, ctx.alg.mul(a, b));
      }
      for (const auto& [k, c] : x.laurent) {
        const AlgElement& b = yw.at(i - k, q);
        if (!b.is_zero()) acc_into(acc, ctx.alg.scale(b, c));
      }
      for (const auto& [k, c] : y.laurent) {
        const AlgElement& a = xw.at(i, q + k);
        if (!a.is_zero()) acc_into(acc, ctx.alg.scale(a, c));
      }
      if (!acc.is_zero()) out.at(i, q) = std::move(acc);
    }
  return out;
}

Report verify_oracle_equivalence(const WreathContext& ctx, uint64_t pair_count,
                                 uint64_t seed) {
  std::mt19937_64 rng(seed);
  int64_t core = ctx.seq.finite_support() ? 16 + ctx.seq.max_position() : 20;
  Report rep;
  rep.name = "oracle_equivalence";
  rep.params["pairs"] = std::to_string(pair_count);
  rep.params["seed"] = std::to_string(seed);
  rep.params["core"] = std::to_string(core);

  for (uint64_t p = 0; p < pair_count; ++p) {
    WreathElement x = random_wreath_element(ctx, rng);
    WreathElement y = random_wreath_element(ctx, rng);
    WreathElement xy = wreath_mul(ctx, x, y);
    HonestWindow lhs = honest_window(ctx, xy, -core, core, -core, core);
    HonestWindow rhs = literal_window_product(ctx, x, y, core);
    ++rep.checked;
    if (lhs.laurent_remainder != rhs.laurent_remainder) {
      rep.fail_with("pair " + std::to_string(p) + ": Laurent parts differ");
      continue;
    }
    bool ok = true;
    for (int64_t i = -core; i <= core && ok; ++i)
      for (int64_t q = -core; q <= core; ++q)
        if (!(lhs.at(i, q) == rhs.at(i, q))) {
          rep.fail_with("pair " + std::to_string(p) + ": entry (" +
                        std::to_string(i) + "," + std::to_string(q) +
                        "): normal form gives " +
                        ctx.alg.to_string(lhs.at(i, q)) + ", oracle gives " +
                        ctx.alg.to_string(rhs.at(i, q)));
          ok = false;
          break;
        }
  }
  return rep;
}

} // namespace wreath
