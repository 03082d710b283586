#pragma once

// Polygon algebra on exact rational slopes.
//
// A TuplarPolygon of rank n is the graph of a continuous piecewise-linear
// function on [0, n] through the origin, linear on every [i-1, i]; it is
// stored as its tuple of n slopes. A ConcavePolygon is the subclass with
// non-increasing slopes and lattice breakpoints, stored as merged runs.
// Harder-Narasimhan polygons of bundles and Newton points of B(GL_n) are
// ConcavePolygons.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nstrata/rational.hpp"

namespace nstrata {

class PolygonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TuplarPolygon {
 public:
  explicit TuplarPolygon(std::vector<Slope> slopes) : slopes_(std::move(slopes)) {
    if (slopes_.empty()) throw PolygonError("tuplar polygon must have rank >= 1");
  }

  /// The line segment from (0, 0) to (rank, degree).
  static TuplarPolygon line_segment(const Rational& degree, std::int64_t rank) {
    if (rank < 1) throw PolygonError("line segment must have rank >= 1");
    return TuplarPolygon(std::vector<Slope>(static_cast<std::size_t>(rank), degree / Rational(rank)));
  }

  static TuplarPolygon constant(const Slope& slope, std::int64_t rank) {
    if (rank < 1) throw PolygonError("constant polygon must have rank >= 1");
    return TuplarPolygon(std::vector<Slope>(static_cast<std::size_t>(rank), slope));
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(slopes_.size()); }
  const std::vector<Slope>& slopes() const { return slopes_; }
  /// Slope on [i, i+1], zero-based.
  const Slope& operator[](std::size_t i) const { return slopes_[i]; }

  Rational degree() const {
    Rational sum;
    for (const auto& s : slopes_) sum += s;
    return sum;
  }

  /// Height of the graph at x = j.
  Rational partial_sum(std::int64_t j) const {
    if (j < 0 || j > rank()) throw PolygonError("partial sum index out of range");
    Rational sum;
    for (std::int64_t i = 0; i < j; ++i) sum += slopes_[static_cast<std::size_t>(i)];
    return sum;
  }

  bool is_descending() const { return std::is_sorted(slopes_.begin(), slopes_.end(), std::greater<>{}); }

  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < slopes_.size(); ++i) {
      if (i) out += ", ";
      out += slopes_[i].to_string();
    }
    return out + ")";
  }

  friend bool operator==(const TuplarPolygon&, const TuplarPolygon&) = default;

 private:
  std::vector<Slope> slopes_;
};

/// A maximal segment of constant slope.
struct Run {
  Slope slope;
  std::int64_t length = 0;

  Rational degree() const { return slope * Rational(length); }
  friend bool operator==(const Run&, const Run&) = default;
};

class ConcavePolygon {
 public:
  /// The empty polygon of rank 0.
  ConcavePolygon() = default;

  /// Checked construction. Adjacent runs of equal slope are merged; slopes
  /// must be strictly decreasing afterwards and every breakpoint must be a
  /// lattice point.
  static ConcavePolygon from_runs(std::vector<Run> runs) {
    std::vector<Run> merged;
    merged.reserve(runs.size());
    for (const auto& run : runs) {
      if (run.length < 1) throw PolygonError("run length must be positive (slope " + run.slope.to_string() + ")");
      if (!merged.empty() && merged.back().slope == run.slope) {
        merged.back().length += run.length;
        continue;
      }
      if (!merged.empty() && merged.back().slope < run.slope)
        throw PolygonError("slopes not descending at run " + run.slope.to_string() + "^" + std::to_string(run.length));
      merged.push_back(run);
    }
    for (const auto& run : merged) {
      if (run.length % run.slope.den() != 0)
        throw PolygonError("breakpoint not a lattice point: run " + run.slope.to_string() + "^" +
                           std::to_string(run.length) + " has length not divisible by " +
                           std::to_string(run.slope.den()));
    }
    return ConcavePolygon(std::move(merged));
  }

  /// Checked conversion from a slope tuple.
  static ConcavePolygon from_slopes(std::span<const Slope> slopes) {
    std::vector<Run> runs;
    for (const auto& s : slopes) runs.push_back({s, 1});
    return from_runs(std::move(runs));
  }
  static ConcavePolygon from_tuple(const TuplarPolygon& p) { return from_slopes(p.slopes()); }

  /// The line segment of the given slope and rank.
  static ConcavePolygon semistable(const Slope& slope, std::int64_t rank) { return from_runs({{slope, rank}}); }

  const std::vector<Run>& runs() const { return runs_; }
  std::int64_t rank() const { return static_cast<std::int64_t>(slopes_.size()); }
  bool empty() const { return runs_.empty(); }
  const std::vector<Slope>& slopes() const { return slopes_; }
  const Slope& operator[](std::size_t i) const { return slopes_[i]; }

  std::int64_t degree() const {
    Rational d;
    for (const auto& run : runs_) d += run.degree();
    return d.num();
  }

  TuplarPolygon tuple() const { return TuplarPolygon(slopes_); }

  bool is_semistable() const { return runs_.size() == 1; }
  const Slope& max_slope() const { return runs_.front().slope; }
  const Slope& min_slope() const { return runs_.back().slope; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < runs_.size(); ++i) {
      if (i) out += ",";
      out += runs_[i].slope.to_string();
      if (runs_[i].length != 1) out += "^" + std::to_string(runs_[i].length);
    }
    return out;
  }

  friend bool operator==(const ConcavePolygon& a, const ConcavePolygon& b) { return a.runs_ == b.runs_; }

 private:
  explicit ConcavePolygon(std::vector<Run> runs) : runs_(std::move(runs)) {
    for (const auto& run : runs_) slopes_.insert(slopes_.end(), static_cast<std::size_t>(run.length), run.slope);
  }

  std::vector<Run> runs_;
  std::vector<Slope> slopes_;
};

/// A dominant cocharacter of GL_n as a non-increasing integer tuple.
class DominantCocharacter {
 public:
  explicit DominantCocharacter(std::vector<std::int64_t> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw PolygonError("cocharacter must have rank >= 1");
    if (!std::is_sorted(entries_.begin(), entries_.end(), std::greater<>{}))
      throw PolygonError("cocharacter entries must be non-increasing");
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(entries_.size()); }
  const std::vector<std::int64_t>& entries() const { return entries_; }
  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto e : entries_) d += e;
    return d;
  }

  /// Entries take at most two consecutive values.
  bool is_minuscule() const { return entries_.front() - entries_.back() <= 1; }

  TuplarPolygon polygon() const {
    std::vector<Slope> s(entries_.begin(), entries_.end());
    return TuplarPolygon(std::move(s));
  }

  friend bool operator==(const DominantCocharacter&, const DominantCocharacter&) = default;

 private:
  std::vector<std::int64_t> entries_;
};

/// The {0,1}-valued minuscule cocharacter (1^degree, 0^(rank-degree)).
struct MinusculeCocharacter {
  std::int64_t rank = 1;
  std::int64_t degree = 0;

  MinusculeCocharacter(std::int64_t n, std::int64_t d) : rank(n), degree(d) {
    if (n < 1) throw PolygonError("minuscule cocharacter must have rank >= 1");
    if (d < 0 || d > n)
      throw PolygonError("minuscule degree " + std::to_string(d) + " outside [0, " + std::to_string(n) + "]");
  }

  DominantCocharacter dominant() const {
    std::vector<std::int64_t> e(static_cast<std::size_t>(rank), 0);
    std::fill_n(e.begin(), degree, 1);
    return DominantCocharacter(std::move(e));
  }
  TuplarPolygon polygon() const { return dominant().polygon(); }

  friend bool operator==(const MinusculeCocharacter&, const MinusculeCocharacter&) = default;
};

// ---------------------------------------------------------------------------
// Operations

inline Rational degree(const TuplarPolygon& p) { return p.degree(); }

namespace detail {
inline void require_same_rank(std::size_t a, std::size_t b, const char* what) {
  if (a != b)
    throw PolygonError(std::string(what) + ": rank mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}
}  // namespace detail

/// Bruhat order: every prefix sum of p is at least that of q, with equal
/// endpoints. Polygons of unequal degree are incomparable (false).
inline bool bruhat_geq(std::span<const Slope> p, std::span<const Slope> q) {
  detail::require_same_rank(p.size(), q.size(), "bruhat_geq");
  Rational sp, sq;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sp += p[i];
    sq += q[i];
    if (sp < sq) return false;
  }
  return sp == sq;
}
inline bool bruhat_geq(const TuplarPolygon& p, const TuplarPolygon& q) { return bruhat_geq(p.slopes(), q.slopes()); }
inline bool bruhat_geq(const ConcavePolygon& p, const ConcavePolygon& q) { return bruhat_geq(p.slopes(), q.slopes()); }

/// Slopewise dominance: p_i >= q_i for every i.
inline bool slopewise_geq(std::span<const Slope> p, std::span<const Slope> q) {
  detail::require_same_rank(p.size(), q.size(), "slopewise_geq");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < q[i]) return false;
  return true;
}
inline bool slopewise_geq(const TuplarPolygon& p, const TuplarPolygon& q) {
  return slopewise_geq(p.slopes(), q.slopes());
}
inline bool slopewise_geq(const ConcavePolygon& p, const ConcavePolygon& q) {
  return slopewise_geq(p.slopes(), q.slopes());
}

/// dual_i = -p_{n+1-i}
inline TuplarPolygon dual(const TuplarPolygon& p) {
  std::vector<Slope> out;
  out.reserve(p.slopes().size());
  for (auto it = p.slopes().rbegin(); it != p.slopes().rend(); ++it) out.push_back(-*it);
  return TuplarPolygon(std::move(out));
}
inline ConcavePolygon dual(const ConcavePolygon& p) {
  std::vector<Run> runs;
  for (auto it = p.runs().rbegin(); it != p.runs().rend(); ++it) runs.push_back({-it->slope, it->length});
  return ConcavePolygon::from_runs(std::move(runs));
}

/// Descending sort of the slope tuple. The result need not have lattice
/// breakpoints; use ConcavePolygon::from_tuple for the checked conversion.
inline TuplarPolygon concave_rearrangement(const TuplarPolygon& p) {
  std::vector<Slope> s = p.slopes();
  std::sort(s.begin(), s.end(), std::greater<>{});
  return TuplarPolygon(std::move(s));
}

/// Concave rearrangement of the concatenation.
inline TuplarPolygon direct_sum(const TuplarPolygon& p, const TuplarPolygon& q) {
  std::vector<Slope> s = p.slopes();
  s.insert(s.end(), q.slopes().begin(), q.slopes().end());
  std::sort(s.begin(), s.end(), std::greater<>{});
  return TuplarPolygon(std::move(s));
}

inline ConcavePolygon direct_sum(const ConcavePolygon& p, const ConcavePolygon& q) {
  std::vector<Run> runs;
  runs.reserve(p.runs().size() + q.runs().size());
  auto a = p.runs().begin(), b = q.runs().begin();
  while (a != p.runs().end() || b != q.runs().end()) {
    if (b == q.runs().end() || (a != p.runs().end() && a->slope >= b->slope))
      runs.push_back(*a++);
    else
      runs.push_back(*b++);
  }
  return ConcavePolygon::from_runs(std::move(runs));
}

inline TuplarPolygon pointwise_add(const TuplarPolygon& p, const TuplarPolygon& q) {
  detail::require_same_rank(p.slopes().size(), q.slopes().size(), "pointwise_add");
  std::vector<Slope> s(p.slopes().size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = p[i] + q[i];
  return TuplarPolygon(std::move(s));
}

/// Adds a constant to every slope. Shifting by an integer preserves the
/// lattice condition.
inline ConcavePolygon shift(const ConcavePolygon& p, std::int64_t amount) {
  std::vector<Run> runs = p.runs();
  for (auto& run : runs) run.slope += Rational(amount);
  return ConcavePolygon::from_runs(std::move(runs));
}

/// The slopes on [x0, x1], re-anchored at the origin. Throws when the cut
/// points fall off the lattice.
inline ConcavePolygon restrict(const ConcavePolygon& p, std::int64_t x0, std::int64_t x1) {
  if (x0 < 0 || x1 > p.rank() || x0 >= x1)
    throw PolygonError("restrict: interval [" + std::to_string(x0) + ", " + std::to_string(x1) +
                       "] out of range for rank " + std::to_string(p.rank()));
  std::vector<Run> runs;
  std::int64_t start = 0;
  for (const auto& run : p.runs()) {
    std::int64_t lo = std::max(start, x0), hi = std::min(start + run.length, x1);
    if (lo < hi) runs.push_back({run.slope, hi - lo});
    start += run.length;
  }
  return ConcavePolygon::from_runs(std::move(runs));
}

/// Interior x-coordinates where the slope changes.
inline std::vector<std::int64_t> breakpoints(const ConcavePolygon& p) {
  std::vector<std::int64_t> out;
  std::int64_t x = 0;
  for (std::size_t i = 0; i + 1 < p.runs().size(); ++i) {
    x += p.runs()[i].length;
    out.push_back(x);
  }
  return out;
}

/// The maximal-slope run and the remaining runs.
inline std::pair<ConcavePolygon, ConcavePolygon> split_top_run(const ConcavePolygon& p) {
  if (p.empty()) throw PolygonError("split_top_run: empty polygon");
  std::vector<Run> rest(p.runs().begin() + 1, p.runs().end());
  return {ConcavePolygon::from_runs({p.runs().front()}), ConcavePolygon::from_runs(std::move(rest))};
}

}  // namespace nstrata

template <>
struct std::hash<nstrata::ConcavePolygon> {
  std::size_t operator()(const nstrata::ConcavePolygon& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (const auto& run : p.runs()) {
      h ^= std::hash<nstrata::Rational>{}(run.slope) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h ^= std::hash<std::int64_t>{}(run.length) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};
