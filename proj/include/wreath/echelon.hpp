#pragma once

#include <unordered_map>

#include "wreath/scalar.hpp"

namespace wreath {

// Sparse vector over an abstract coordinate space; entries sorted by
// coordinate, scalars nonzero.
using SparseVec = std::vector<std::pair<uint64_t, Scalar>>;

SparseVec sparse_axpy(const Field& f, const SparseVec& u, const Scalar& c,
                      const SparseVec& v); // u + c*v

// Row space kept in reduced echelon form: unit pivots, pivot columns cleared
// from all other rows. Copyable, so callers can snapshot per layer.
class SpanBasis {
public:
  explicit SpanBasis(const Field& f) : field_(&f) {}

  // Reduces v against the basis; inserts the remainder if nonzero.
  // Returns true when the rank grew.
  bool insert(SparseVec v);

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  SparseVec reduce(SparseVec v) const;

  size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }

private:
  const Field* field_;
  std::vector<SparseVec> rows_;
  std::unordered_map<uint64_t, size_t> pivot_owner_;
  // col -> rows that once held an entry there; entries may be stale
  std::unordered_map<uint64_t, std::vector<size_t>> col_uses_;
};

} // namespace wreath
