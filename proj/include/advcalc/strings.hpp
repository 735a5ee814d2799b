#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "advcalc/risk.hpp"

namespace advcalc::strings {

using StringSet = std::set<std::string>;
using StringDistribution = BasicDistribution<std::string>;

// Every string of length 0..max_len over an alphabet of at most 4 symbols
// (max_len <= 5).
class StringUniverse {
 public:
  static StringUniverse make(std::string alphabet, std::size_t max_len);

  const std::string& alphabet() const { return alphabet_; }
  std::size_t max_len() const { return max_len_; }
  std::size_t size() const { return all_.size(); }
  bool contains(const std::string& w) const;
  // Shortest first, then lexicographic.
  const std::vector<std::string>& all() const { return all_; }
  StringSet as_set() const { return {all_.begin(), all_.end()}; }

 private:
  std::string alphabet_;
  std::size_t max_len_ = 0;
  std::vector<std::string> all_;
};

using SwapPair = std::pair<std::size_t, std::size_t>;  // 1-based positions, i != j

// A finite set of transpositions b^{i,j}. With include_identity the family
// also contains the map that leaves every string in place, so A c A^eps as
// for norm balls; without it A^eps is exactly {b(a) : a in A, b in pairs}.
struct SwapFamily {
  std::vector<SwapPair> pairs;
  bool include_identity = true;

  // "1,2;2,3"
  static SwapFamily parse(std::string_view text, bool include_identity = true);
  void validate() const;
};

// Swaps positions i and j when the string is long enough, else returns w.
std::string swap_apply(const SwapPair& pair, const std::string& w);

// A^eps = {b(a) : a in A, b in B}.
StringSet perturb(const StringSet& a, const SwapFamily& b);
// Strings whose perturbations all stay in A: U \ (U \ A)^eps.
StringSet erode(const StringSet& a, const SwapFamily& b, const StringUniverse& u);
StringSet complement(const StringSet& a, const StringUniverse& u);

struct IntersectionCheck {
  bool holds = false;
  StringSet lhs;  // intersection of the C_n^eps
  StringSet rhs;  // (intersection of the C_n)^eps
};

// Throws Error when the chain is empty or not decreasing.
IntersectionCheck decreasing_intersection_check(const std::vector<StringSet>& chain, const SwapFamily& b);

Rational string_standard_risk(const StringSet& a, const StringDistribution& d);
// Throws DomainError when an atom or a member of A lies outside the universe.
Rational string_adversarial_risk(const StringSet& a, const StringDistribution& d, const SwapFamily& b,
                                 const StringUniverse& u);

struct StringSearchResult {
  StringSet best_set;
  Rational best_risk;
  bool optimal = true;
  std::vector<std::string> cells;  // strings the risk depends on, in bit order
};

// Exhaustive minimizer. Risk only depends on membership of the strings one
// perturbation away from an atom, so the search runs over subsets of those
// (at most 24, else BudgetExceeded). Ties go to the smallest bitmask over the
// cells in shortlex order.
StringSearchResult string_oracle_search(const StringDistribution& d, const SwapFamily& b, const StringUniverse& u);

}  // namespace advcalc::strings
