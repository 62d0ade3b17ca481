#include "wreath/sequence.hpp"

#include <algorithm>
#include <set>

namespace wreath {

namespace {

const AlgElement kZero{};

void validate_entries(const AlgebraSpec& alg,
                      const std::map<int64_t, AlgElement>& entries) {
  if (entries.empty())
    fail(ErrKind::config, "generating sequence has no nonzero entries");
  for (const auto& [pos, elem] : entries) {
    if (pos < 1)
      fail(ErrKind::config, "sequence position " + std::to_string(pos) +
                                " is below 1");
    if (elem.is_zero())
      fail(ErrKind::config, "sequence entry at position " +
                                std::to_string(pos) + " is zero");
    for (const auto& [l, c] : elem.terms()) {
      alg.validate_label(l);
      (void)c;
    }
  }
}

void validate_gaps(const std::map<int64_t, AlgElement>& entries) {
  std::vector<int64_t> pos;
  for (const auto& [p, e] : entries) pos.push_back(p);
  int64_t prev_gap = -1;
  for (size_t i = 1; i < pos.size(); ++i) {
    int64_t gap = pos[i] - pos[i - 1];
    if (gap <= prev_gap)
      fail(ErrKind::config,
           "gap_mode requires strictly increasing gaps, violated at position " +
               std::to_string(pos[i]));
    prev_gap = gap;
  }
}

} // namespace

GeneratingSequence GeneratingSequence::explicit_list(
    const AlgebraSpec& alg, std::map<int64_t, AlgElement> entries,
    bool gap_mode) {
  validate_entries(alg, entries);
  if (gap_mode) validate_gaps(entries);
  GeneratingSequence s;
  s.entries_ = std::move(entries);
  s.gap_mode_ = gap_mode;
  return s;
}

GeneratingSequence GeneratingSequence::rule_quadratic(
    const AlgebraSpec& alg, int64_t a, int64_t b, int64_t c,
    const ElementRule& er, int64_t horizon, bool gap_mode) {
  if (horizon < 1) fail(ErrKind::config, "rule horizon must be at least 1");
  if (a < 0 || (a == 0 && b <= 0))
    fail(ErrKind::config, "position rule must be strictly increasing");
  auto pos_at = [&](int64_t k) { return a * k * k + b * k + c; };
  if (pos_at(1) < 1)
    fail(ErrKind::config, "first rule position is below 1");
  if (pos_at(1) > horizon)
    fail(ErrKind::config, "horizon lies below the first rule position");

  std::map<int64_t, AlgElement> entries;
  for (int64_t k = 1;; ++k) {
    int64_t p = pos_at(k);
    if (p > horizon) break;
    if (k > 1 && p <= pos_at(k - 1))
      fail(ErrKind::config, "position rule must be strictly increasing");
    if (k > 1'000'000)
      fail(ErrKind::range, "rule materializes too many positions");

    AlgElement e;
    switch (er.kind) {
      case ElementRule::Kind::var_power: {
        switch (alg.kind()) {
          case AlgebraSpec::Kind::polynomial: {
            if (er.var >= alg.var_count())
              fail(ErrKind::config, "var_power variable index out of range");
            BasisLabel::Exps ex(alg.var_count(), 0);
            ex[er.var] = static_cast<uint32_t>(k);
            e = alg.monomial(BasisLabel::exps(std::move(ex)),
                             alg.field().one());
            break;
          }
          case AlgebraSpec::Kind::monomial_quotient: {
            if (er.var >= alg.alphabet().size())
              fail(ErrKind::config, "var_power letter index out of range");
            BasisLabel::Word w(static_cast<size_t>(k),
                               static_cast<uint16_t>(er.var));
            e = alg.monomial(BasisLabel::word(std::move(w)),
                             alg.field().one());
            break;
          }
          case AlgebraSpec::Kind::structure_constants:
            fail(ErrKind::config,
                 "var_power elements need a polynomial or word algebra");
        }
        break;
      }
      case ElementRule::Kind::constant:
        if (er.elems.size() != 1)
          fail(ErrKind::config, "constant element rule needs exactly one element");
        e = er.elems[0];
        break;
      case ElementRule::Kind::cycle:
        if (er.elems.empty())
          fail(ErrKind::config, "cycle element rule needs at least one element");
        e = er.elems[static_cast<size_t>((k - 1) % static_cast<int64_t>(
                                             er.elems.size()))];
        break;
    }
    entries.emplace(p, std::move(e));
  }

  validate_entries(alg, entries);
  if (gap_mode) validate_gaps(entries);
  GeneratingSequence s;
  s.entries_ = std::move(entries);
  s.infinite_ = true;
  s.horizon_ = horizon;
  s.gap_mode_ = gap_mode;
  return s;
}

const AlgElement& GeneratingSequence::entry(int64_t m) const {
  if (m <= 0) return kZero;
  if (infinite_ && m > horizon_)
    fail(ErrKind::horizon, "sequence queried at position " + std::to_string(m) +
                               " beyond its horizon " + std::to_string(horizon_));
  auto it = entries_.find(m);
  return it == entries_.end() ? kZero : it->second;
}

std::vector<int64_t> GeneratingSequence::support_upto(int64_t n) const {
  if (infinite_ && n > horizon_)
    fail(ErrKind::horizon, "support requested up to " + std::to_string(n) +
                               " beyond the horizon " + std::to_string(horizon_));
  std::vector<int64_t> out;
  for (const auto& [p, e] : entries_) {
    if (p > n) break;
    out.push_back(p);
    (void)e;
  }
  return out;
}

int64_t GeneratingSequence::max_position() const {
  if (infinite_)
    fail(ErrKind::precondition, "max_position needs finite support");
  return entries_.rbegin()->first;
}

size_t GeneratingSequence::support_size() const {
  if (infinite_)
    fail(ErrKind::precondition, "support_size needs finite support");
  return entries_.size();
}

std::vector<std::pair<uint64_t, AlgElement>> weighted_filtration(
    const AlgebraSpec& alg, const GeneratingSequence& seq, uint64_t n) {
  std::vector<int64_t> parts = seq.support_upto(static_cast<int64_t>(n));
  std::vector<std::pair<uint64_t, AlgElement>> found;
  size_t nodes = 0;

  // DFS over compositions, parts ascending at each level
  std::function<void(uint64_t, const AlgElement&)> go =
      [&](uint64_t sum, const AlgElement& prod) {
        for (int64_t p : parts) {
          uint64_t next = sum + static_cast<uint64_t>(p);
          if (next > n) break;
          if (++nodes > 5'000'000)
            fail(ErrKind::range, "weighted filtration too large at bound " +
                                     std::to_string(n));
          AlgElement q = alg.mul(prod, seq.entry(p));
          if (q.is_zero()) continue;
          found.emplace_back(next, q);
          go(next, q);
        }
      };
  go(0, alg.one());

  std::stable_sort(found.begin(), found.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<uint64_t, AlgElement>> out;
  std::set<AlgElement> seen;
  for (auto& [s, e] : found)
    if (seen.insert(e).second) out.emplace_back(s, std::move(e));
  return out;
}

} // namespace wreath
