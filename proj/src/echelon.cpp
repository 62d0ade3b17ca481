#include "wreath/echelon.hpp"

namespace wreath {

SparseVec sparse_axpy(const Field& f, const SparseVec& u, const Scalar& c,
                      const SparseVec& v) {
  SparseVec out;
  out.reserve(u.size() + v.size());
  size_t i = 0, j = 0;
  while (i < u.size() || j < v.size()) {
    if (j == v.size() || (i < u.size() && u[i].first < v[j].first)) {
      out.push_back(u[i++]);
    } else if (i == u.size() || v[j].first < u[i].first) {
      Scalar s = f.mul(c, v[j].second);
      if (!f.is_zero(s)) out.emplace_back(v[j].first, s);
      ++j;
    } else {
      Scalar s = f.add(u[i].second, f.mul(c, v[j].second));
      if (!f.is_zero(s)) out.emplace_back(u[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

SparseVec SpanBasis::reduce(SparseVec v) const {
  const Field& f = *field_;
  // Scan left to right; eliminating a pivot column only adds entries in
  // larger non-pivot columns, so one pass suffices.
  size_t at = 0;
  while (at < v.size()) {
    auto it = pivot_owner_.find(v[at].first);
    if (it == pivot_owner_.end()) {
      ++at;
      continue;
    }
    SparseVec next = sparse_axpy(f, v, f.neg(v[at].second), rows_[it->second]);
    // entries before v[at] are untouched non-pivot columns
    v = std::move(next);
  }
  return v;
}

bool SpanBasis::insert(SparseVec v) {
  const Field& f = *field_;
  v = reduce(std::move(v));
  if (v.empty()) return false;

  // normalize the pivot to 1
  Scalar inv = f.inv(v.front().second);
  if (!f.is_one(v.front().second))
    for (auto& [col, s] : v) s = f.mul(s, inv);

  uint64_t pivot = v.front().first;
  size_t idx = rows_.size();

  // clear the new pivot column from older rows
  auto uses = col_uses_.find(pivot);
  if (uses != col_uses_.end()) {
    for (size_t r : uses->second) {
      SparseVec& row = rows_[r];
      auto hit = std::lower_bound(
          row.begin(), row.end(), pivot,
          [](const auto& e, uint64_t c) { return e.first < c; });
      if (hit == row.end() || hit->first != pivot) continue; // stale
      SparseVec updated = sparse_axpy(f, row, f.neg(hit->second), v);
      for (const auto& [col, s] : updated) {
        if (col == pivot) continue;
        (void)s;
        auto& lst = col_uses_[col];
        if (lst.empty() || lst.back() != r) lst.push_back(r);
      }
      row = std::move(updated);
    }
    col_uses_.erase(uses);
  }

  for (const auto& [col, s] : v) {
    col_uses_[col].push_back(idx);
    (void)s;
  }
  pivot_owner_.emplace(pivot, idx);
  rows_.push_back(std::move(v));
  return true;
}

} // namespace wreath
