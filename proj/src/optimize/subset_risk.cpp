#include "advcalc/subset_risk.hpp"

#include <bit>
#include <limits>
#include <thread>

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

std::int64_t to_int64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error("risk weights need too fine a common denominator");
  return v.get_si();
}

bool better(std::int64_t a_scaled, std::uint64_t a_mask, std::int64_t b_scaled, std::uint64_t b_mask) {
  return a_scaled < b_scaled || (a_scaled == b_scaled && a_mask < b_mask);
}

}  // namespace

SubsetRiskModel::SubsetRiskModel(std::size_t cells, const std::vector<Term>& terms) : cells_(cells) {
  if (cells > 64) throw BudgetExceeded("subset model holds at most 64 cells");
  denominator_ = 1;
  for (const auto& t : terms) {
    if (t.plus < 0 || t.minus < 0) throw Error("risk weights must be nonnegative");
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), t.plus.get_den_mpz_t());
    mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(), t.minus.get_den_mpz_t());
  }
  mpz_class total = 0;
  for (const auto& t : terms) {
    if (t.neighbourhood & ~full_mask()) throw Error("neighbourhood outside the cell range");
    mpz_class p = t.plus.get_num() * (denominator_ / t.plus.get_den());
    mpz_class m = t.minus.get_num() * (denominator_ / t.minus.get_den());
    total += p + m;
    masks_.push_back(t.neighbourhood);
    plus_.push_back(to_int64(p));
    minus_.push_back(to_int64(m));
  }
  to_int64(total);
}

std::int64_t SubsetRiskModel::scaled_risk(std::uint64_t mask) const {
  std::int64_t r = 0;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (mask & masks_[i]) r += plus_[i];
    if (masks_[i] & ~mask) r += minus_[i];
  }
  return r;
}

Rational SubsetRiskModel::unscale(std::int64_t scaled) const {
  Rational r(mpz_class(static_cast<long>(scaled)), denominator_);
  r.canonicalize();
  return r;
}

SubsetRiskModel::Best SubsetRiskModel::enumerate(unsigned threads) const {
  if (cells_ > kExhaustiveBudgetCells) throw BudgetExceeded("exhaustive budget exceeded");
  const std::uint64_t total = std::uint64_t{1} << cells_;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (total < (std::uint64_t{1} << 12)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, total));

  std::vector<Best> partial(threads);
  auto work = [&](unsigned t) {
    const std::uint64_t lo = total * t / threads, hi = total * (t + 1) / threads;
    Best best{lo, scaled_risk(lo)};
    for (std::uint64_t m = lo + 1; m < hi; ++m) {
      std::int64_t r = scaled_risk(m);
      if (r < best.scaled) best = {m, r};
    }
    partial[t] = best;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  Best best = partial.front();
  for (const auto& b : partial) {
    if (better(b.scaled, b.mask, best.scaled, best.mask)) best = b;
  }
  return best;
}

SubsetRiskModel::Best SubsetRiskModel::enumerate_gray() const {
  if (cells_ > kExhaustiveBudgetCells) throw BudgetExceeded("exhaustive budget exceeded");
  const std::size_t k = masks_.size();
  std::vector<int> count(k, 0), size(k);
  for (std::size_t i = 0; i < k; ++i) size[i] = std::popcount(masks_[i]);

  auto current = [&]() {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (count[i] > 0) r += plus_[i];
      if (count[i] < size[i]) r += minus_[i];
    }
    return r;
  };

  std::uint64_t mask = 0;
  Best best{0, current()};
  const std::uint64_t total = std::uint64_t{1} << cells_;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const std::uint64_t flip = std::uint64_t{1} << bit;
    const int delta = (mask & flip) ? -1 : 1;
    mask ^= flip;
    for (std::size_t i = 0; i < k; ++i) {
      if (masks_[i] & flip) count[i] += delta;
    }
    std::int64_t r = current();
    if (better(r, mask, best.scaled, best.mask)) best = {mask, r};
  }
  return best;
}

std::vector<SubsetRiskModel::Step> SubsetRiskModel::descend(std::uint64_t start, std::size_t max_iters) const {
  if (start & ~full_mask()) throw Error("start set outside the cell range");
  std::vector<Step> trace{{start, scaled_risk(start)}};
  for (std::size_t it = 0; it < max_iters; ++it) {
    const Step cur = trace.back();
    std::int64_t best_gain = 0;
    std::size_t best_cell = cells_;
    for (std::size_t c = 0; c < cells_; ++c) {
      std::int64_t gain = cur.scaled - scaled_risk(cur.mask ^ (std::uint64_t{1} << c));
      if (gain > best_gain) {
        best_gain = gain;
        best_cell = c;
      }
    }
    if (best_cell == cells_) break;
    trace.push_back({cur.mask ^ (std::uint64_t{1} << best_cell), cur.scaled - best_gain});
  }
  return trace;
}

}  // namespace advcalc
