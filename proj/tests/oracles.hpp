#pragma once

// Test-only brute-force references. Nothing here calls into the morphology
// or risk code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "advcalc/grid_set.hpp"
#include "advcalc/interval_set.hpp"
#include "advcalc/norm.hpp"
#include "advcalc/risk.hpp"

namespace oracle {

using advcalc::Index;
using advcalc::Interval;
using advcalc::IntervalSet;
using advcalc::Rational;

// Membership straight from the stored intervals.
inline bool in_set(const IntervalSet& a, const Rational& x) {
  for (const auto& iv : a.intervals()) {
    if (iv.contains(x)) return true;
  }
  return false;
}

// x in A^r iff some a in A has |x - a| <= r. For a finite union of intervals
// the candidates are x itself, x +- r, and the interval endpoints.
inline bool in_dilation(const IntervalSet& a, const Rational& r, const Rational& x) {
  for (const auto& iv : a.intervals()) {
    Rational lo = iv.lo, hi = iv.hi;
    // closest point of the closure
    Rational c = x < lo ? lo : (x > hi ? hi : x);
    Rational d = x > c ? Rational(x - c) : Rational(c - x);
    if (d < r) return true;
    if (d == r && iv.contains(c)) return true;
  }
  return false;
}

// x in A^-r iff [x - r, x + r] lies inside one interval of A.
inline bool in_erosion(const IntervalSet& a, const Rational& r, const Rational& x) {
  for (const auto& iv : a.intervals()) {
    if (iv.contains(x - r) && iv.contains(x + r)) return true;
  }
  return false;
}

// Sample points that probe every endpoint, its +-r shifts and the gaps between.
inline std::vector<Rational> probes(const std::vector<IntervalSet>& sets, const std::vector<Rational>& radii) {
  std::set<Rational> base;
  for (const auto& s : sets) {
    for (const auto& iv : s.intervals()) {
      for (const auto& r : radii) {
        for (int k = -3; k <= 3; ++k) {
          base.insert(iv.lo + k * r);
          base.insert(iv.hi + k * r);
        }
      }
    }
  }
  std::vector<Rational> pts(base.begin(), base.end());
  std::vector<Rational> out = pts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) out.push_back((pts[i] + pts[i + 1]) / 2);
  if (!pts.empty()) {
    out.push_back(pts.front() - 1);
    out.push_back(pts.back() + 1);
  }
  return out;
}

inline std::vector<Index> lattice_ball(const advcalc::Norm& norm, const Rational& cell, const Rational& eps,
                                       std::int64_t reach) {
  std::vector<Index> out;
  const std::size_t d = norm.dimension();
  Index k(d, -reach);
  while (true) {
    std::vector<Rational> v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = cell * Rational(static_cast<long>(k[i]));
    if (norm.key(v) <= norm.radius_key(eps)) out.push_back(k);
    std::size_t i = 0;
    while (i < d && k[i] == reach) k[i++] = -reach;
    if (i == d) break;
    ++k[i];
  }
  return out;
}

// Dilation and erosion by direct enumeration over cell sets.
inline std::set<Index> grid_dilate(const std::set<Index>& a, const std::vector<Index>& ball) {
  std::set<Index> out;
  for (const auto& c : a) {
    for (const auto& v : ball) {
      Index w(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] + v[i];
      out.insert(w);
    }
  }
  return out;
}

inline std::set<Index> grid_erode(const std::set<Index>& a, const std::vector<Index>& ball) {
  std::set<Index> out;
  for (const auto& c : a) {
    bool inside = true;
    for (const auto& v : ball) {
      Index w(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) w[i] = c[i] + v[i];
      if (!a.contains(w)) {
        inside = false;
        break;
      }
    }
    if (inside) out.insert(c);
  }
  return out;
}

inline std::set<Index> cell_set(const advcalc::GridSet& g) {
  auto cells = g.cells();
  return {cells.begin(), cells.end()};
}

// Random closed interval set with up to max_intervals pieces on a 1/12 grid in [-6, 6].
inline IntervalSet random_interval_set(std::mt19937_64& rng, int max_intervals) {
  std::uniform_int_distribution<int> count(0, max_intervals);
  std::uniform_int_distribution<int> pos(-72, 72);
  std::uniform_int_distribution<int> len(0, 30);
  std::vector<std::pair<Rational, Rational>> raw;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    int lo = pos(rng);
    raw.emplace_back(Rational(lo, 12), Rational(lo + len(rng), 12));
  }
  for (auto& [lo, hi] : raw) {
    lo.canonicalize();
    hi.canonicalize();
  }
  return IntervalSet::closed(raw);
}

inline advcalc::GridSet random_grid(std::mt19937_64& rng, const advcalc::Lattice& lattice, std::int64_t w,
                                    std::int64_t h, double density) {
  advcalc::GridSet g(lattice, advcalc::GridBox{{0, 0}, {w, h}});
  std::bernoulli_distribution coin(density);
  for (std::size_t i = 0; i < g.mask().size(); ++i) g.set_flat(i, coin(rng));
  return g;
}

// Random distribution over the given support points, masses from small
// integer weights and eta from a fixed menu of fractions.
inline advcalc::LabeledDistribution random_distribution(std::mt19937_64& rng,
                                                        const std::vector<advcalc::Point>& support) {
  static const Rational kEtas[] = {Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                   Rational(2, 3), Rational(3, 4), Rational(1)};
  std::uniform_int_distribution<int> weight(1, 6), eta(0, 6);
  std::vector<int> w(support.size());
  int total = 0;
  for (auto& x : w) total += x = weight(rng);
  std::vector<advcalc::LabeledDistribution::Atom> atoms;
  for (std::size_t i = 0; i < support.size(); ++i) {
    Rational p(w[i], total);
    p.canonicalize();
    atoms.push_back({support[i], p, kEtas[eta(rng)]});
  }
  return advcalc::LabeledDistribution::make(std::move(atoms));
}

// Adversarial risk on R from pointwise membership: x in (A^C)^r iff x is
// not in A^-r.
inline Rational interval_adversarial_risk(const IntervalSet& a, const advcalc::LabeledDistribution& d,
                                          const Rational& r) {
  Rational risk = 0;
  for (const auto& atom : d.atoms()) {
    const Rational& x = atom.x[0];
    if (in_dilation(a, r, x)) risk += atom.p * (1 - atom.eta);
    if (!in_erosion(a, r, x)) risk += atom.p * atom.eta;
  }
  return risk;
}

// Adversarial risk on an unbounded lattice given the lattice ball offsets.
inline Rational grid_adversarial_risk(const advcalc::GridSet& a, const advcalc::LabeledDistribution& d,
                                      const std::vector<Index>& ball) {
  auto cells = cell_set(a);
  Rational risk = 0;
  for (const auto& atom : d.atoms()) {
    Index k = *a.lattice().index_of(atom.x);
    bool hits = false, misses = false;
    for (const auto& v : ball) {
      Index w(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) w[i] = k[i] + v[i];
      (cells.contains(w) ? hits : misses) = true;
    }
    if (hits) risk += atom.p * (1 - atom.eta);
    if (misses) risk += atom.p * atom.eta;
  }
  return risk;
}

}  // namespace oracle
