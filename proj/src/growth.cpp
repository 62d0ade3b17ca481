#include "wreath/growth.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace wreath {

bool LabelIndex::ColLabel::operator<(const ColLabel& o) const {
  if (kind != o.kind) return kind < o.kind;
  if (i != o.i) return i < o.i;
  if (j != o.j) return j < o.j;
  return beta < o.beta;
}

uint64_t LabelIndex::id_of(const ColLabel& l) {
  auto it = ids_.find(l);
  if (it != ids_.end()) return it->second;
  uint64_t id = labels_.size();
  ids_.emplace(l, id);
  labels_.push_back(l);
  return id;
}

SparseVec coordinatize(const WreathElement& x, LabelIndex& idx) {
  SparseVec v;
  for (const auto& [k, c] : x.laurent)
    v.emplace_back(idx.id_of({LabelIndex::Kind::laur, k, 0, BasisLabel()}), c);
  for (const auto& [ij, b] : x.mat)
    for (const auto& [beta, c] : b.terms())
      v.emplace_back(
          idx.id_of({LabelIndex::Kind::mat, ij.first, ij.second, beta}), c);
  for (const auto& [ij, w] : x.tails)
    for (const auto& [beta, c] : w.terms())
      v.emplace_back(
          idx.id_of({LabelIndex::Kind::tail, ij.first, ij.second, beta}), c);
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return v;
}

SparseVec coordinatize(const AlgElement& a, LabelIndex& idx) {
  SparseVec v;
  for (const auto& [beta, c] : a.terms())
    v.emplace_back(idx.id_of({LabelIndex::Kind::mat, 0, 0, beta}), c);
  std::sort(v.begin(), v.end(),
            [](const auto& a_, const auto& b_) { return a_.first < b_.first; });
  return v;
}

uint64_t GrowthSeries::at(uint64_t n) const {
  if (n < 1 || n > values.size())
    fail(ErrKind::range, "series value at n=" + std::to_string(n) +
                             " not computed (horizon " +
                             std::to_string(values.size()) + ")");
  return values[n - 1];
}

namespace {

unsigned thread_count_from_env() {
  const char* v = std::getenv("WREATH_GROWTH_THREADS");
  if (!v) return 1;
  char* end = nullptr;
  unsigned long n = std::strtoul(v, &end, 10);
  if (end == v || *end != '\0' || n < 1) return 1;
  return static_cast<unsigned>(std::min<unsigned long>(n, 64));
}

} // namespace

GrowthEngine::GrowthEngine(const WreathContext& ctx, ZeroMode mode,
                           bool keep_layer_snapshots, int64_t unit_cell)
    : ctx_(ctx),
      mode_(mode),
      snapshots_(keep_layer_snapshots),
      threads_(thread_count_from_env()),
      gens_(make_generators(ctx, unit_cell)),
      basis_(ctx.alg.field()) {
  if (mode == ZeroMode::exact && !ctx.seq.finite_support() &&
      (!ctx.seq.gap_mode() || !ctx.alg.is_domain()))
    fail(ErrKind::unsupported_mode,
         "exact growth over infinite support needs gap_mode and a domain");
}

void GrowthEngine::run_layer() {
  std::vector<WreathElement> candidates;
  if (values_.empty()) {
    candidates.assign(gens_.begin(), gens_.end());
  } else {
    candidates.reserve(new_elems_.size() * gens_.size());
    if (threads_ <= 1 || new_elems_.size() * gens_.size() < 64) {
      for (const auto& u : new_elems_)
        for (const auto& g : gens_) candidates.push_back(wreath_mul(ctx_, u, g));
    } else {
      size_t total = new_elems_.size() * gens_.size();
      candidates.assign(total, WreathElement());
      size_t chunk = (total + threads_ - 1) / threads_;
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errs(threads_);
      for (unsigned t = 0; t < threads_; ++t) {
        size_t lo = t * chunk, hi = std::min(total, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi, t] {
          try {
            for (size_t idx = lo; idx < hi; ++idx)
              candidates[idx] = wreath_mul(ctx_, new_elems_[idx / 4],
                                           gens_[idx % 4]);
          } catch (...) {
            errs[t] = std::current_exception();
          }
        });
      }
      for (auto& th : pool) th.join();
      for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    }
  }

  std::vector<WreathElement> next_new;
  for (auto& cand : candidates) {
    if (cand.formally_zero()) continue;
    if (basis_.insert(coordinatize(cand, idx_))) next_new.push_back(std::move(cand));
  }
  new_elems_ = std::move(next_new);
  values_.push_back(basis_.rank());
  if (snapshots_) layer_snaps_.push_back(basis_);
}

void GrowthEngine::extend_to(uint64_t n) {
  while (values_.size() < n) run_layer();
}

uint64_t GrowthEngine::g(uint64_t n) {
  if (n < 1) fail(ErrKind::range, "growth layer must be at least 1");
  extend_to(n);
  return values_[n - 1];
}

const SpanBasis& GrowthEngine::layer(uint64_t n) const {
  if (!snapshots_)
    fail(ErrKind::range, "layer snapshots were not kept for this run");
  if (n < 1 || n > layer_snaps_.size())
    fail(ErrKind::range, "layer " + std::to_string(n) + " not computed");
  return layer_snaps_[n - 1];
}

bool GrowthEngine::member(const WreathElement& x, uint64_t n) {
  if (n < 1) fail(ErrKind::range, "membership layer must be at least 1");
  extend_to(n);
  SparseVec v = coordinatize(canonicalize(ctx_, x), idx_);
  if (snapshots_) return layer(n).contains(v);
  if (n != values_.size())
    fail(ErrKind::range,
         "membership against a historic layer needs snapshots");
  return basis_.contains(v);
}

GrowthSeries growth_series(const WreathContext& ctx, uint64_t horizon,
                           ZeroMode mode, int64_t unit_cell) {
  if (horizon < 1) fail(ErrKind::config, "growth horizon must be at least 1");
  GrowthEngine eng(ctx, mode, /*keep_layer_snapshots=*/false, unit_cell);
  eng.extend_to(horizon);
  GrowthSeries s;
  s.values = eng.values();
  s.meta["kind"] = "g";
  s.meta["mode"] = mode == ZeroMode::exact ? "exact" : "formal";
  s.meta["horizon"] = std::to_string(horizon);
  return s;
}

GrowthSeries w_series(const WreathContext& ctx, uint64_t horizon) {
  if (horizon < 1) fail(ErrKind::config, "w horizon must be at least 1");
  auto filt = weighted_filtration(ctx.alg, ctx.seq, horizon);
  LabelIndex idx;
  SpanBasis basis(ctx.alg.field());
  GrowthSeries s;
  size_t ptr = 0;
  for (uint64_t n = 1; n <= horizon; ++n) {
    while (ptr < filt.size() && filt[ptr].first <= n) {
      basis.insert(coordinatize(filt[ptr].second, idx));
      ++ptr;
    }
    s.values.push_back(basis.rank());
  }
  s.meta["kind"] = "w";
  s.meta["horizon"] = std::to_string(horizon);
  return s;
}

GrowthSeries algebra_growth(const AlgebraSpec& alg,
                            const std::vector<AlgElement>& gens,
                            uint64_t horizon) {
  if (horizon < 1) fail(ErrKind::config, "growth horizon must be at least 1");
  for (const auto& g : gens)
    if (g.is_zero())
      fail(ErrKind::config, "zero generator in algebra growth");
  LabelIndex idx;
  SpanBasis basis(alg.field());
  std::vector<AlgElement> new_elems;
  GrowthSeries s;
  for (uint64_t n = 1; n <= horizon; ++n) {
    std::vector<AlgElement> candidates;
    if (n == 1) {
      candidates = gens;
    } else {
      candidates.reserve(new_elems.size() * gens.size());
      for (const auto& u : new_elems)
        for (const auto& g : gens) candidates.push_back(alg.mul(u, g));
    }
    std::vector<AlgElement> next_new;
    for (auto& cand : candidates) {
      if (cand.is_zero()) continue;
      if (basis.insert(coordinatize(cand, idx)))
        next_new.push_back(std::move(cand));
    }
    new_elems = std::move(next_new);
    s.values.push_back(basis.rank());
  }
  s.meta["kind"] = "algebra_growth";
  s.meta["horizon"] = std::to_string(horizon);
  return s;
}

Report verify_filtration_membership(const WreathContext& ctx, uint64_t n_max) {
  Report rep;
  rep.name = "filtration_membership";
  rep.params["n_max"] = std::to_string(n_max);
  GrowthEngine eng(ctx, ZeroMode::formal, /*keep_layer_snapshots=*/true);
  eng.extend_to(2 * n_max + 1);
  auto filt = weighted_filtration(ctx.alg, ctx.seq, n_max);
  const Field& f = ctx.alg.field();
  for (const auto& [sum, w] : filt) {
    WreathElement e;
    e.add_mat(0, 0, w, f);
    ++rep.checked;
    if (!eng.member(e, 2 * sum + 1))
      rep.fail_with("e_00(" + ctx.alg.to_string(w) + ") with weight " +
                    std::to_string(sum) + " is not in V^" +
                    std::to_string(2 * sum + 1));
  }
  return rep;
}

Report verify_layer_shape(const WreathContext& ctx, uint64_t n_max) {
  Report rep;
  rep.name = "layer_shape";
  rep.params["n_max"] = std::to_string(n_max);

  GrowthEngine eng(ctx, ZeroMode::formal, /*keep_layer_snapshots=*/true);
  eng.extend_to(n_max);

  // filtration stages as echelon bases over the coefficient algebra,
  // stage 0 = span(1), stage s adds all products with sum <= s
  auto filt = weighted_filtration(ctx.alg, ctx.seq, n_max);
  LabelIndex aidx;
  std::vector<SpanBasis> stages;
  {
    SpanBasis st(ctx.alg.field());
    st.insert(coordinatize(ctx.alg.one(), aidx));
    stages.push_back(st);
    size_t ptr = 0;
    for (uint64_t s = 1; s <= n_max; ++s) {
      while (ptr < filt.size() && filt[ptr].first <= s) {
        st.insert(coordinatize(filt[ptr].second, aidx));
        ++ptr;
      }
      stages.push_back(st);
    }
  }

  std::map<std::pair<BasisLabel, uint64_t>, bool> spanned_cache;
  auto beta_spanned = [&](const BasisLabel& beta, uint64_t stage) {
    auto key = std::make_pair(beta, stage);
    auto it = spanned_cache.find(key);
    if (it != spanned_cache.end()) return it->second;
    AlgElement e;
    e.add_term(beta, ctx.alg.field().one(), ctx.alg.field());
    bool ok = stages[stage].contains(coordinatize(e, aidx));
    spanned_cache.emplace(key, ok);
    return ok;
  };

  // Finite-support tails collapse to matrix entries e_{i,m-j0}(w * a_m), so
  // the matrix column range widens by the support: such a label is in shape
  // when beta lies in span(stage(n - |j0|) * a_m) for some support position.
  std::vector<int64_t> supp;
  if (ctx.seq.finite_support())
    supp = ctx.seq.support_upto(ctx.seq.max_position());
  std::map<std::pair<int64_t, uint64_t>, SpanBasis> shifted_stages;
  auto shifted_stage = [&](int64_t m, uint64_t s) -> SpanBasis& {
    auto key = std::make_pair(m, s);
    auto it = shifted_stages.find(key);
    if (it != shifted_stages.end()) return it->second;
    SpanBasis st(ctx.alg.field());
    const AlgElement& am = ctx.seq.entry(m);
    st.insert(coordinatize(am, aidx));
    for (const auto& [sum, w] : filt) {
      if (sum > s) break;
      AlgElement prod = ctx.alg.mul(w, am);
      if (!prod.is_zero()) st.insert(coordinatize(prod, aidx));
    }
    return shifted_stages.emplace(key, std::move(st)).first->second;
  };
  auto collapsed_tail_ok = [&](int64_t i, int64_t j, const BasisLabel& beta,
                               uint64_t n) {
    if (static_cast<uint64_t>(std::llabs(i)) > n) return false;
    AlgElement e;
    e.add_term(beta, ctx.alg.field().one(), ctx.alg.field());
    SparseVec v = coordinatize(e, aidx);
    for (int64_t m : supp) {
      int64_t j0 = m - j;
      uint64_t aj0 = static_cast<uint64_t>(std::llabs(j0));
      if (aj0 + 1 > n) continue;
      if (shifted_stage(m, n - aj0).contains(v)) return true;
    }
    return false;
  };

  for (uint64_t n = 1; n <= n_max; ++n) {
    const SpanBasis& layer = eng.layer(n);
    for (const auto& row : layer.rows()) {
      ++rep.checked;
      for (const auto& [col, c] : row) {
        (void)c;
        const auto& l = eng.labels().label_of(col);
        bool ok = true;
        std::string why;
        switch (l.kind) {
          case LabelIndex::Kind::laur:
            ok = static_cast<uint64_t>(std::llabs(l.i)) <= n;
            why = "Laurent exponent out of range";
            break;
          case LabelIndex::Kind::mat:
            ok = (static_cast<uint64_t>(std::llabs(l.i)) <= n &&
                  static_cast<uint64_t>(std::llabs(l.j)) <= n &&
                  beta_spanned(l.beta, n)) ||
                 collapsed_tail_ok(l.i, l.j, l.beta, n);
            why = "matrix label out of range";
            break;
          case LabelIndex::Kind::tail: {
            uint64_t aj = static_cast<uint64_t>(std::llabs(l.j));
            ok = static_cast<uint64_t>(std::llabs(l.i)) <= n && aj + 1 <= n &&
                 beta_spanned(l.beta, n - aj);
            why = "tail label out of range";
            break;
          }
        }
        if (!ok) {
          std::ostringstream os;
          os << "layer " << n << ": " << why << ": kind="
             << static_cast<int>(l.kind) << " i=" << l.i << " j=" << l.j
             << " beta=" << ctx.alg.label_string(l.beta);
          rep.fail_with(os.str());
        }
      }
    }
  }
  return rep;
}

} // namespace wreath
