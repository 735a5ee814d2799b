#include "advcalc/interval_set.hpp"

#include <algorithm>

#include "advcalc/errors.hpp"

namespace advcalc {
namespace {

// Lower bounds order: a closed bound at v precedes an open bound at v.
bool lower_less(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// Upper bounds order: an open bound at v precedes a closed bound at v.
bool upper_less(const Interval& a, const Interval& b) {
  if (a.hi != b.hi) return a.hi < b.hi;
  return !a.hi_closed && b.hi_closed;
}

// a (sorted first) and b overlap or touch at a point one of them contains.
bool joins(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

std::vector<Interval> merge_sorted(std::vector<Interval> raw) {
  std::sort(raw.begin(), raw.end(), lower_less);
  std::vector<Interval> out;
  for (auto& iv : raw) {
    if (!out.empty() && joins(out.back(), iv)) {
      if (upper_less(out.back(), iv)) {
        out.back().hi = iv.hi;
        out.back().hi_closed = iv.hi_closed;
      }
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

}  // namespace

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

std::string Interval::to_string() const {
  return std::string(lo_closed ? "[" : "(") + lo.get_str() + ", " + hi.get_str() + (hi_closed ? "]" : ")");
}

IntervalSet canonicalize(std::vector<Interval> raw) {
  std::vector<Interval> kept;
  kept.reserve(raw.size());
  for (auto& iv : raw) {
    if (iv.lo > iv.hi) {
      throw Error("interval lower end " + iv.lo.get_str() + " exceeds upper end " + iv.hi.get_str());
    }
    if (iv.empty()) continue;
    kept.push_back(std::move(iv));
  }
  return IntervalSet::from_intervals(std::move(kept));
}

IntervalSet IntervalSet::from_intervals(std::vector<Interval> raw) {
  for (const auto& iv : raw) {
    if (iv.lo > iv.hi) {
      throw Error("interval lower end " + iv.lo.get_str() + " exceeds upper end " + iv.hi.get_str());
    }
  }
  std::erase_if(raw, [](const Interval& iv) { return iv.empty(); });
  IntervalSet s;
  s.intervals_ = merge_sorted(std::move(raw));
  return s;
}

IntervalSet IntervalSet::closed(const std::vector<std::pair<Rational, Rational>>& raw) {
  std::vector<Interval> ivs;
  ivs.reserve(raw.size());
  for (const auto& [lo, hi] : raw) ivs.push_back(Interval::closed(lo, hi));
  return from_intervals(std::move(ivs));
}

bool IntervalSet::contains(const Rational& x) const {
  // first interval whose upper end is >= x
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Interval& iv, const Rational& v) { return iv.hi < v; });
  return it != intervals_.end() && it->contains(x);
}

std::optional<Interval> IntervalSet::hull() const {
  if (intervals_.empty()) return std::nullopt;
  return Interval::closed(intervals_.front().lo, intervals_.back().hi);
}

IntervalSet IntervalSet::closure() const {
  std::vector<Interval> ivs = intervals_;
  for (auto& iv : ivs) iv.lo_closed = iv.hi_closed = true;
  return from_intervals(std::move(ivs));
}

bool IntervalSet::is_closed() const {
  return std::all_of(intervals_.begin(), intervals_.end(),
                     [](const Interval& iv) { return iv.lo_closed && iv.hi_closed; });
}

Rational IntervalSet::length() const {
  Rational total = 0;
  for (const auto& iv : intervals_) total += iv.hi - iv.lo;
  return total;
}

std::optional<Rational> IntervalSet::any_point() const {
  if (intervals_.empty()) return std::nullopt;
  const Interval& iv = intervals_.front();
  if (iv.lo_closed) return iv.lo;
  if (iv.hi_closed) return iv.hi;
  return Rational((iv.lo + iv.hi) / 2);
}

std::string IntervalSet::to_string() const {
  if (intervals_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (i) out += " u ";
    out += intervals_[i].to_string();
  }
  return out;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> all = a.intervals();
  all.insert(all.end(), b.intervals().begin(), b.intervals().end());
  return IntervalSet::from_intervals(std::move(all));
}

IntervalSet intersection(const IntervalSet& a, const IntervalSet& b) {
  std::vector<Interval> out;
  const auto& x = a.intervals();
  const auto& y = b.intervals();
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    Interval cut;
    const Interval& lo_src = lower_less(x[i], y[j]) ? y[j] : x[i];
    const Interval& hi_src = upper_less(x[i], y[j]) ? x[i] : y[j];
    cut.lo = lo_src.lo;
    cut.lo_closed = lo_src.lo_closed;
    cut.hi = hi_src.hi;
    cut.hi_closed = hi_src.hi_closed;
    if (!cut.empty()) out.push_back(cut);
    if (upper_less(x[i], y[j])) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet complement(const IntervalSet& a, const Interval& domain) {
  std::vector<Interval> out;
  Interval gap = domain;
  for (const auto& iv : a.intervals()) {
    Interval piece = gap;
    piece.hi = iv.lo;
    piece.hi_closed = !iv.lo_closed;
    if (piece.hi > gap.hi || (piece.hi == gap.hi && !gap.hi_closed)) {
      piece.hi = gap.hi;
      piece.hi_closed = gap.hi_closed;
    }
    if (!piece.empty()) out.push_back(piece);
    if (iv.hi > gap.lo || (iv.hi == gap.lo && iv.hi_closed)) {
      gap.lo = iv.hi;
      gap.lo_closed = !iv.hi_closed;
    }
  }
  if (!gap.empty()) out.push_back(gap);
  return IntervalSet::from_intervals(std::move(out));
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
  auto h = a.hull();
  if (!h) return {};
  return intersection(a, complement(b, *h));
}

IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) {
  return set_union(difference(a, b), difference(b, a));
}

bool is_subset(const IntervalSet& a, const IntervalSet& b) { return difference(a, b).empty(); }

bool closure_equal(const IntervalSet& a, const IntervalSet& b) { return a.closure() == b.closure(); }

IntervalSet minkowski_dilate(const IntervalSet& a, const Rational& r) {
  if (r < 0) throw Error("dilation radius must be nonnegative");
  std::vector<Interval> out = a.intervals();
  for (auto& iv : out) {
    iv.lo -= r;
    iv.hi += r;
  }
  return IntervalSet::from_intervals(std::move(out));
}

}  // namespace advcalc
