#include "advcalc/strings.hpp"

#include <algorithm>

#include "advcalc/subset_risk.hpp"

namespace advcalc::strings {
namespace {

bool shortlex(const std::string& a, const std::string& b) {
  return a.size() != b.size() ? a.size() < b.size() : a < b;
}

// Strings reached from x by one member of the family (the family is closed
// under inverses since every b is an involution).
StringSet neighbourhood(const std::string& x, const SwapFamily& b) { return perturb({x}, b); }

void require_in_universe(const StringSet& a, const StringUniverse& u) {
  for (const auto& w : a) {
    if (!u.contains(w)) throw DomainError("string '" + w + "' outside the universe");
  }
}

}  // namespace

StringUniverse StringUniverse::make(std::string alphabet, std::size_t max_len) {
  std::string sorted = alphabet;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty() || sorted.size() > 4) throw Error("alphabet needs 1 to 4 symbols");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("alphabet symbols must be distinct");
  if (max_len > 5) throw Error("max_len must be at most 5");
  StringUniverse u;
  u.alphabet_ = sorted;
  u.max_len_ = max_len;
  std::vector<std::string> layer{""};
  u.all_ = layer;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::string> next;
    for (const auto& w : layer) {
      for (char c : sorted) next.push_back(w + c);
    }
    u.all_.insert(u.all_.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return u;
}

bool StringUniverse::contains(const std::string& w) const {
  if (w.size() > max_len_) return false;
  return std::all_of(w.begin(), w.end(), [&](char c) { return alphabet_.find(c) != std::string::npos; });
}

SwapFamily SwapFamily::parse(std::string_view text, bool include_identity) {
  SwapFamily f;
  f.include_identity = include_identity;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    auto comma = item.find(',');
    if (comma == std::string_view::npos) throw ParseError("swap pair needs the form i,j");
    try {
      std::size_t used = 0;
      std::string lhs(item.substr(0, comma)), rhs(item.substr(comma + 1));
      long i = std::stol(lhs, &used);
      if (used != lhs.size()) throw ParseError("bad swap index");
      long j = std::stol(rhs, &used);
      if (used != rhs.size()) throw ParseError("bad swap index");
      if (i < 1 || j < 1) throw ParseError("swap positions are 1-based");
      f.pairs.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    } catch (const std::logic_error&) {
      throw ParseError("bad swap pair '" + std::string(item) + "'");
    }
    start = end + 1;
  }
  f.validate();
  return f;
}

void SwapFamily::validate() const {
  for (const auto& [i, j] : pairs) {
    if (i == 0 || j == 0) throw Error("swap positions are 1-based");
    if (i == j) throw Error("swap positions must differ");
  }
}

std::string swap_apply(const SwapPair& pair, const std::string& w) {
  const auto [i, j] = pair;
  if (i == 0 || j == 0 || std::max(i, j) > w.size()) return w;
  std::string out = w;
  std::swap(out[i - 1], out[j - 1]);
  return out;
}

StringSet perturb(const StringSet& a, const SwapFamily& b) {
  b.validate();
  StringSet out;
  for (const auto& w : a) {
    if (b.include_identity) out.insert(w);
    for (const auto& p : b.pairs) out.insert(swap_apply(p, w));
  }
  return out;
}

StringSet complement(const StringSet& a, const StringUniverse& u) {
  require_in_universe(a, u);
  StringSet out;
  for (const auto& w : u.all()) {
    if (!a.contains(w)) out.insert(w);
  }
  return out;
}

StringSet erode(const StringSet& a, const SwapFamily& b, const StringUniverse& u) {
  return complement(perturb(complement(a, u), b), u);
}

IntersectionCheck decreasing_intersection_check(const std::vector<StringSet>& chain, const SwapFamily& b) {
  if (chain.empty()) throw Error("chain must be nonempty");
  for (std::size_t n = 1; n < chain.size(); ++n) {
    if (!std::includes(chain[n - 1].begin(), chain[n - 1].end(), chain[n].begin(), chain[n].end())) {
      throw Error("chain is not decreasing");
    }
  }
  IntersectionCheck r;
  r.lhs = perturb(chain.front(), b);
  for (std::size_t n = 1; n < chain.size(); ++n) {
    StringSet img = perturb(chain[n], b), keep;
    std::set_intersection(r.lhs.begin(), r.lhs.end(), img.begin(), img.end(), std::inserter(keep, keep.end()));
    r.lhs = std::move(keep);
  }
  r.rhs = perturb(chain.back(), b);  // the chain decreases, so its intersection is the last set
  r.holds = r.lhs == r.rhs;
  return r;
}

Rational string_standard_risk(const StringSet& a, const StringDistribution& d) {
  return risk_sum(
      d, [&](const std::string& x) { return a.contains(x); }, [&](const std::string& x) { return !a.contains(x); });
}

Rational string_adversarial_risk(const StringSet& a, const StringDistribution& d, const SwapFamily& b,
                                 const StringUniverse& u) {
  for (const auto& atom : d.atoms()) {
    if (!u.contains(atom.x)) throw DomainError("atom '" + atom.x + "' outside the universe");
  }
  const StringSet plus = perturb(a, b);
  const StringSet minus = perturb(complement(a, u), b);
  return risk_sum(
      d, [&](const std::string& x) { return plus.contains(x); }, [&](const std::string& x) { return minus.contains(x); });
}

StringSearchResult string_oracle_search(const StringDistribution& d, const SwapFamily& b, const StringUniverse& u) {
  StringSet relevant;
  for (const auto& atom : d.atoms()) {
    if (!u.contains(atom.x)) throw DomainError("atom '" + atom.x + "' outside the universe");
    for (const auto& w : neighbourhood(atom.x, b)) relevant.insert(w);
  }
  StringSearchResult r;
  r.cells.assign(relevant.begin(), relevant.end());
  std::sort(r.cells.begin(), r.cells.end(), shortlex);
  if (r.cells.size() > kExhaustiveBudgetCells) throw BudgetExceeded("exhaustive budget exceeded");

  std::vector<SubsetRiskModel::Term> terms;
  for (const auto& atom : d.atoms()) {
    std::uint64_t nb = 0;
    for (const auto& w : neighbourhood(atom.x, b)) {
      auto it = std::find(r.cells.begin(), r.cells.end(), w);
      nb |= std::uint64_t{1} << (it - r.cells.begin());
    }
    terms.push_back({nb, atom.p * (1 - atom.eta), atom.p * atom.eta});
  }
  SubsetRiskModel model(r.cells.size(), terms);
  auto best = model.enumerate();
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    if (best.mask >> i & 1) r.best_set.insert(r.cells[i]);
  }
  r.best_risk = model.unscale(best.scaled);
  return r;
}

}  // namespace advcalc::strings
