#pragma once

#include <cstdint>
#include <vector>

#include "advcalc/grid_set.hpp"
#include "advcalc/morphology.hpp"
#include "advcalc/risk.hpp"
#include "advcalc/subset_risk.hpp"

namespace advcalc {

// A finite search space: every subset of the lattice cells in `domain`.
// The domain is the whole universe (DomainPolicy::kUniverse), so dilations
// are clipped to it and complements are taken inside it. Cell i of the
// bitmask is the i-th cell of the domain box in row-major order.
struct SearchInstance {
  Lattice lattice;
  GridBox domain;
  LabeledDistribution dist;
  Norm norm;
  Rational eps;

  // `cells` equally spaced lattice points covering [lo, hi] (cells >= 2).
  static SearchInstance on_segment(const Rational& lo, const Rational& hi, std::size_t cells,
                                   LabeledDistribution dist, const Rational& eps);

  std::size_t cells() const { return domain.volume(); }
  GridContext context() const { return {norm, eps, domain, DomainPolicy::kUniverse}; }
  GridSet set_of(std::uint64_t mask) const;
  // Throws DomainError if s has members outside the domain.
  std::uint64_t mask_of(const GridSet& s) const;
  // Throws DomainError if an atom is not a cell of the domain.
  SubsetRiskModel model() const;
};

struct TraceEntry {
  std::size_t iteration;
  Rational risk;
};

struct SearchResult {
  GridSet best_set;
  Rational best_risk;
  bool optimal = false;
  std::vector<TraceEntry> trace;
};

// Exhaustive minimizer over all 2^n subsets, n <= 24 (else
// BudgetExceeded("exhaustive budget exceeded")). Ties go to the smallest
// bitmask.
SearchResult oracle_search(const SearchInstance& inst, unsigned threads = 0);
// Same minimum through a Gray-code walk; used to cross-check oracle_search.
SearchResult gray_code_search(const SearchInstance& inst);

// Local search by single-cell flips (largest exact decrease, ties to the
// lowest cell). No optimality claim.
SearchResult greedy_flip_descent(const SearchInstance& inst, const GridSet& start, std::size_t max_iters);

struct MollifiedReport {
  SearchResult oracle;
  GridSet mollified;
  Rational mollified_risk;
  bool risk_equal = false;     // R^eps(mollify(A*)) == R^eps(A*)
  bool pseudo_robust = false;  // informational only
};

MollifiedReport mollified_optimality_check(const SearchInstance& inst, unsigned threads = 0);

struct SequenceStep {
  GridSet tail;               // B_n
  bool decreasing = true;     // B_{n+1} c B_n
  bool dilation_union = true; // (B_n)^eps == union of A_k^eps, k >= n
  Rational tail_risk;         // R^eps(B_n)
  Rational set_risk;          // R^eps(A_n)
};

struct SequenceReport {
  std::vector<SequenceStep> steps;
  Rational first_tail_risk;
  Rational min_sequence_risk;
  bool identities_hold() const {
    for (const auto& s : steps) {
      if (!s.decreasing || !s.dilation_union) return false;
    }
    return true;
  }
};

// Tail-union construction over a finite sequence, with its identities and risks.
SequenceReport minimizing_sequence_harness(const std::vector<GridSet>& seq, const SearchInstance& inst);

}  // namespace advcalc
