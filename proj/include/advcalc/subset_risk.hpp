#pragma once

#include <cstdint>
#include <vector>

#include "advcalc/rational.hpp"

namespace advcalc {

// Adversarial risk of subsets S of at most 64 cells, when membership of atom
// i in S^eps and (S^C)^eps depends only on a neighbourhood N_i:
//   x_i in S^eps      iff S meets N_i
//   x_i in (S^C)^eps  iff N_i is not contained in S.
// Weights are scaled to integers over a common denominator so enumeration
// runs on machine words; results are converted back to exact rationals.
class SubsetRiskModel {
 public:
  struct Term {
    std::uint64_t neighbourhood;
    Rational plus;   // p (1 - eta), paid when x_i in S^eps
    Rational minus;  // p eta, paid when x_i in (S^C)^eps
  };

  SubsetRiskModel(std::size_t cells, const std::vector<Term>& terms);

  std::size_t cells() const { return cells_; }
  std::uint64_t full_mask() const { return cells_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << cells_) - 1; }

  // Risk scaled by the common denominator.
  std::int64_t scaled_risk(std::uint64_t mask) const;
  Rational risk(std::uint64_t mask) const { return unscale(scaled_risk(mask)); }
  Rational unscale(std::int64_t scaled) const;

  struct Best {
    std::uint64_t mask = 0;
    std::int64_t scaled = 0;
  };

  // All 2^n subsets (n <= 24, else BudgetExceeded); ties go to the smallest
  // mask. The range is split across threads and merged in index order.
  Best enumerate(unsigned threads = 0) const;
  // Independent enumeration in Gray-code order with incremental counts.
  Best enumerate_gray() const;

  struct Step {
    std::uint64_t mask;
    std::int64_t scaled;
  };
  // Single-cell flips taking the largest decrease, ties to the lowest cell,
  // until no flip improves or max_iters flips have been made. The first
  // entry is the start.
  std::vector<Step> descend(std::uint64_t start, std::size_t max_iters) const;

 private:
  std::size_t cells_;
  mpz_class denominator_;
  std::vector<std::uint64_t> masks_;
  std::vector<std::int64_t> plus_;
  std::vector<std::int64_t> minus_;
};

inline constexpr std::size_t kExhaustiveBudgetCells = 24;

}  // namespace advcalc
