#pragma once

#include "wreath/echelon.hpp"
#include "wreath/wreath.hpp"

namespace wreath {

// Registry from component labels to dense column ids, grown on demand.
// Ids are assigned in first-seen order, so identical runs number identically.
class LabelIndex {
public:
  enum class Kind : uint8_t { laur, mat, tail };
  struct ColLabel {
    Kind kind = Kind::laur;
    int64_t i = 0; // LAUR: the exponent k; MAT/TAIL: the row
    int64_t j = 0; // MAT: the column; TAIL: the t-shift
    BasisLabel beta;

    bool operator<(const ColLabel& o) const;
  };

  uint64_t id_of(const ColLabel& l);
  const ColLabel& label_of(uint64_t id) const { return labels_[id]; }
  size_t size() const { return labels_.size(); }

private:
  std::map<ColLabel, uint64_t> ids_;
  std::vector<ColLabel> labels_;
};

SparseVec coordinatize(const WreathElement& x, LabelIndex& idx);
// coefficient-algebra elements are coordinatized as MAT(0,0,beta) columns
SparseVec coordinatize(const AlgElement& a, LabelIndex& idx);

struct GrowthSeries {
  std::vector<uint64_t> values; // values[n-1] = value at n
  std::map<std::string, std::string> meta;

  uint64_t at(uint64_t n) const;
};

// Layer recursion for g(n) = dim of the span of generator products of length
// <= n. Each layer multiplies only the elements that were new in the previous
// layer by the four generators: V^n = V^{n-1} + span(new_{n-1})*V.
class GrowthEngine {
public:
  GrowthEngine(const WreathContext& ctx, ZeroMode mode,
               bool keep_layer_snapshots, int64_t unit_cell = 0);

  void extend_to(uint64_t n);
  uint64_t g(uint64_t n); // extends on demand

  uint64_t layers_computed() const { return values_.size(); }
  const std::vector<uint64_t>& values() const { return values_; }

  // true iff x lies in the span of products of length <= n; extends on
  // demand. Historic layers need snapshots (range error otherwise).
  bool member(const WreathElement& x, uint64_t n);

  const SpanBasis& layer(uint64_t n) const; // snapshots only
  const SpanBasis& current() const { return basis_; }
  const LabelIndex& labels() const { return idx_; }

private:
  void run_layer();

  WreathContext ctx_;
  ZeroMode mode_;
  bool snapshots_;
  unsigned threads_;
  std::array<WreathElement, 4> gens_;
  LabelIndex idx_;
  SpanBasis basis_;
  std::vector<WreathElement> new_elems_;
  std::vector<uint64_t> values_;
  std::vector<SpanBasis> layer_snaps_;
};

GrowthSeries growth_series(const WreathContext& ctx, uint64_t horizon,
                           ZeroMode mode, int64_t unit_cell = 0);

// w(n) = rank of the weighted filtration products with composition sum <= n.
GrowthSeries w_series(const WreathContext& ctx, uint64_t horizon);

// Growth of span(gens) inside the coefficient algebra itself.
GrowthSeries algebra_growth(const AlgebraSpec& alg,
                            const std::vector<AlgElement>& gens,
                            uint64_t horizon);

// Every filtration product w with sum s satisfies e_00(w) in V^{2s+1}.
Report verify_filtration_membership(const WreathContext& ctx, uint64_t n_max);

// Every echelon row of V^n is supported on the expected label set:
// LAUR(k) with |k| <= n; MAT(i,j,beta) with |i|,|j| <= n and beta spanned by
// filtration stage n (unit allowed); TAIL(i,beta,j) with |i| <= n, |j| <= n-1
// and beta spanned by stage n-|j|.
Report verify_layer_shape(const WreathContext& ctx, uint64_t n_max);

} // namespace wreath
