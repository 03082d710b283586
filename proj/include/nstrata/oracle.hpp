#pragma once

// Brute-force references for the optimized engines. Exponential on purpose;
// guards are hard errors.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "nstrata/enumeration.hpp"
#include "nstrata/polygon.hpp"
#include "nstrata/strata.hpp"

namespace nstrata::oracle {

class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct CorpusSpec {
  std::int64_t max_rank = 1;
  std::int64_t max_denominator = 1;
  Slope window_lo;
  Slope window_hi;
};

/// Tries every distinct arrangement of the slopes of D (+) F against the
/// definition of a (D, E, F)-permutation.
inline bool brute_permutation_exists(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f) {
  if (e.rank() > 8) throw GuardExceeded("brute_permutation_exists: rank(E) > 8");
  if (d.rank() + f.rank() != e.rank()) throw PolygonError("brute_permutation_exists: rank mismatch");
  std::vector<Slope> values(d.slopes());
  values.insert(values.end(), f.slopes().begin(), f.slopes().end());
  std::sort(values.begin(), values.end());
  auto occurs = [](const ConcavePolygon& p, const Slope& s) {
    return std::find(p.slopes().begin(), p.slopes().end(), s) != p.slopes().end();
  };
  do {
    Rational sp, se;
    bool ok = true;
    for (std::size_t i = 0; i < values.size() && ok; ++i) {
      sp += values[i];
      se += e[i];
      if (sp < se) ok = false;
      if (values[i] < e[i] && !occurs(d, values[i])) ok = false;
      if (values[i] > e[i] && !occurs(f, values[i])) ok = false;
    }
    if (ok && sp == se) return true;
  } while (std::next_permutation(values.begin(), values.end()));
  return false;
}

inline std::vector<Slope> slope_grid(const Slope& lo, const Slope& hi, std::int64_t max_den) {
  std::set<Slope> grid;
  for (std::int64_t q = 1; q <= max_den; ++q)
    for (std::int64_t p = (lo * Rational(q)).ceil(); p <= (hi * Rational(q)).floor(); ++p) grid.insert(Rational(p, q));
  return {grid.begin(), grid.end()};
}

namespace detail {

// Concave with lattice breakpoints: the height at every slope change, and
// at the right endpoint, is an integer.
inline bool has_lattice_breakpoints(const std::vector<Slope>& s) {
  Rational h;
  for (std::size_t i = 0; i < s.size(); ++i) {
    h += s[i];
    const bool change = (i + 1 == s.size()) || s[i + 1] != s[i];
    if (change && !h.is_integer()) return false;
  }
  return true;
}

}  // namespace detail

/// Every concave lattice polygon of the given rank and degree whose slopes
/// lie on the grid of the spec's window and denominators.
inline std::set<std::vector<Slope>> brute_concave_enumeration(const CorpusSpec& spec, std::int64_t rank,
                                                              std::int64_t degree) {
  if (rank > 5) throw GuardExceeded("brute_concave_enumeration: rank > 5");
  if (rank < 1) throw PolygonError("brute_concave_enumeration: rank must be >= 1");
  std::set<std::vector<Slope>> out;
  std::vector<Slope> grid = slope_grid(spec.window_lo, spec.window_hi, spec.max_denominator);
  std::reverse(grid.begin(), grid.end());  // descending
  if (grid.empty()) return out;
  // Indices into the descending grid are non-decreasing along a tuple.
  std::function<void(std::size_t, std::vector<Slope>&, Rational)> rec = [&](std::size_t from, std::vector<Slope>& cur,
                                                                           Rational sum) {
    if (static_cast<std::int64_t>(cur.size()) == rank) {
      if (sum == Rational(degree) && detail::has_lattice_breakpoints(cur)) out.insert(cur);
      return;
    }
    for (std::size_t i = from; i < grid.size(); ++i) {
      cur.push_back(grid[i]);
      rec(i, cur, sum + grid[i]);
      cur.pop_back();
    }
  };
  std::vector<Slope> cur;
  rec(0, cur, Rational());
  return out;
}

/// All concave lattice polygons of the given rank inside the spec.
inline std::vector<ConcavePolygon> corpus_polygons(const CorpusSpec& spec, std::int64_t rank) {
  std::vector<ConcavePolygon> out;
  if (spec.window_hi < spec.window_lo) return out;
  const std::int64_t lo_deg = (spec.window_lo * Rational(rank)).ceil();
  const std::int64_t hi_deg = (spec.window_hi * Rational(rank)).floor();
  for (std::int64_t deg = hi_deg; deg >= lo_deg; --deg) {
    EnumerationBounds b{rank, deg, spec.window_hi, spec.window_lo, std::nullopt, std::nullopt};
    for_each_concave(b, [&](const ConcavePolygon& p) {
      for (const auto& run : p.runs())
        if (run.slope.den() > spec.max_denominator) return;
      out.push_back(p);
    });
  }
  return out;
}

/// Visits every (E, E') of equal rank <= max_rank inside the spec with
/// 0 <= deg(E) - deg(E') <= rank, in a fixed order.
template <class Visit>
void for_each_corpus_query(const CorpusSpec& spec, Visit&& visit) {
  for (std::int64_t r = 1; r <= spec.max_rank; ++r) {
    std::vector<ConcavePolygon> polys = corpus_polygons(spec, r);
    for (const auto& e : polys)
      for (const auto& t : polys) {
        const std::int64_t d = e.degree() - t.degree();
        if (d >= 0 && d <= r) visit(ModificationQuery{e, t});
      }
  }
}

inline std::vector<ModificationQuery> corpus(const CorpusSpec& spec) {
  std::vector<ModificationQuery> out;
  for_each_corpus_query(spec, [&](const ModificationQuery& q) { out.push_back(q); });
  return out;
}

}  // namespace nstrata::oracle
