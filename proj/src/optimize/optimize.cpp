#include "advcalc/optimize.hpp"

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

SearchResult make_result(const SearchInstance& inst, const SubsetRiskModel& model, std::uint64_t mask,
                         std::int64_t scaled, bool optimal) {
  SearchResult r;
  r.best_set = inst.set_of(mask);
  r.best_risk = model.unscale(scaled);
  r.optimal = optimal;
  r.trace.push_back({0, r.best_risk});
  return r;
}

}  // namespace

SearchInstance SearchInstance::on_segment(const Rational& lo, const Rational& hi, std::size_t cells,
                                          LabeledDistribution dist, const Rational& eps) {
  if (cells < 2 || hi <= lo) throw Error("segment needs lo < hi and at least two cells");
  Rational h = (hi - lo) / static_cast<long>(cells - 1);
  return {Lattice{{lo}, h}, GridBox{{0}, {static_cast<std::int64_t>(cells)}}, std::move(dist), Norm::l1(1), eps};
}

GridSet SearchInstance::set_of(std::uint64_t mask) const {
  GridSet s(lattice, domain);
  for (std::size_t i = 0; i < cells(); ++i) {
    if (mask >> i & 1) s.set_flat(i);
  }
  return s;
}

std::uint64_t SearchInstance::mask_of(const GridSet& s) const {
  if (s.lattice() != lattice) throw Error("incompatible lattices");
  std::uint64_t mask = 0;
  for (const auto& c : s.cells()) {
    if (!domain.contains(c)) throw DomainError("cell outside the search domain");
    mask |= std::uint64_t{1} << domain.flat(c);
  }
  return mask;
}

SubsetRiskModel SearchInstance::model() const {
  if (eps < 0) throw Error("radius must be nonnegative");
  if (norm.dimension() != lattice.dimension()) throw DimensionMismatch("norm dimension does not match grid");
  if (cells() > 64) throw BudgetExceeded("search domain holds at most 64 cells");
  std::vector<SubsetRiskModel::Term> terms;
  for (const auto& a : dist.atoms()) {
    if (a.x.dimension() != lattice.dimension()) throw DimensionMismatch("atom dimension does not match grid");
    auto k = lattice.index_of(a.x);
    if (!k || !domain.contains(*k)) throw DomainError("atom " + a.x.to_string() + " outside the search domain");
    std::uint64_t nb = 0;
    for (std::size_t i = 0; i < cells(); ++i) {
      Index c = domain.unflat(i);
      std::vector<Rational> v(c.size());
      for (std::size_t j = 0; j < c.size(); ++j) v[j] = lattice.cell * static_cast<long>(c[j] - (*k)[j]);
      if (norm.within(v, eps)) nb |= std::uint64_t{1} << i;
    }
    terms.push_back({nb, a.p * (1 - a.eta), a.p * a.eta});
  }
  return SubsetRiskModel(cells(), terms);
}

SearchResult oracle_search(const SearchInstance& inst, unsigned threads) {
  if (inst.cells() > kExhaustiveBudgetCells) throw BudgetExceeded("exhaustive budget exceeded");
  auto model = inst.model();
  auto best = model.enumerate(threads);
  return make_result(inst, model, best.mask, best.scaled, true);
}

SearchResult gray_code_search(const SearchInstance& inst) {
  if (inst.cells() > kExhaustiveBudgetCells) throw BudgetExceeded("exhaustive budget exceeded");
  auto model = inst.model();
  auto best = model.enumerate_gray();
  return make_result(inst, model, best.mask, best.scaled, true);
}

SearchResult greedy_flip_descent(const SearchInstance& inst, const GridSet& start, std::size_t max_iters) {
  auto model = inst.model();
  auto steps = model.descend(inst.mask_of(start), max_iters);
  SearchResult r = make_result(inst, model, steps.back().mask, steps.back().scaled, false);
  r.trace.clear();
  for (std::size_t i = 0; i < steps.size(); ++i) r.trace.push_back({i, model.unscale(steps[i].scaled)});
  return r;
}

MollifiedReport mollified_optimality_check(const SearchInstance& inst, unsigned threads) {
  MollifiedReport rep;
  rep.oracle = oracle_search(inst, threads);
  const GridContext ctx = inst.context();
  rep.mollified = mollify(rep.oracle.best_set, ctx);
  rep.mollified_risk = adversarial_risk(rep.mollified, inst.dist, ctx);
  rep.risk_equal = rep.mollified_risk == rep.oracle.best_risk;
  rep.pseudo_robust = is_pseudo_certifiably_robust(rep.mollified, ctx).robust;
  return rep;
}

SequenceReport minimizing_sequence_harness(const std::vector<GridSet>& seq, const SearchInstance& inst) {
  if (seq.empty()) throw Error("sequence must be nonempty");
  const GridContext ctx = inst.context();
  auto tails = tail_unions(seq);
  std::vector<GridSet> dilated;
  for (const auto& s : seq) dilated.push_back(dilate(s, ctx));

  SequenceReport rep;
  GridSet running = dilated.back();
  std::vector<GridSet> unions(seq.size());
  for (std::size_t n = seq.size(); n-- > 0;) {
    if (n + 1 < seq.size()) running = set_union(running, dilated[n]);
    unions[n] = running;
  }
  for (std::size_t n = 0; n < seq.size(); ++n) {
    SequenceStep st;
    st.tail = tails[n];
    st.decreasing = n + 1 == seq.size() || is_subset(tails[n + 1], tails[n]);
    st.dilation_union = dilate(tails[n], ctx) == unions[n];
    st.tail_risk = adversarial_risk(tails[n], inst.dist, ctx);
    st.set_risk = adversarial_risk(seq[n], inst.dist, ctx);
    if (n == 0 || st.set_risk < rep.min_sequence_risk) rep.min_sequence_risk = st.set_risk;
    rep.steps.push_back(std::move(st));
  }
  rep.first_tail_risk = rep.steps.front().tail_risk;
  return rep;
}

}  // namespace advcalc
