#pragma once

// Bounded generation of concave lattice polygons.
//
// The generator walks runs left to right: pick the slope of the next run
// (strictly below the previous one, denominator at most the remaining
// length), pick its length (a multiple of the denominator), recurse. Each
// branch is cut as soon as the remaining degree leaves the interval spanned
// by the slope bounds and envelopes. Output order is lexicographic on the
// run list, slopes descending first and lengths descending second.

#include <cstdint>
#include <numeric>
#include <optional>
#include <type_traits>
#include <vector>

#include "nstrata/polygon.hpp"

namespace nstrata {

struct EnumerationBounds {
  std::int64_t rank = 1;
  std::int64_t degree = 0;
  Slope max_slope;
  Slope min_slope;
  /// Slopewise cap, when present.
  std::optional<TuplarPolygon> upper_envelope;
  /// Slopewise floor, when present.
  std::optional<TuplarPolygon> lower_envelope;

  void validate() const {
    if (rank < 1) throw PolygonError("enumeration bounds: rank must be >= 1");
    if (max_slope < min_slope) throw PolygonError("enumeration bounds: min_slope > max_slope");
    if (upper_envelope && upper_envelope->rank() != rank)
      throw PolygonError("enumeration bounds: upper envelope rank mismatch");
    if (lower_envelope && lower_envelope->rank() != rank)
      throw PolygonError("enumeration bounds: lower envelope rank mismatch");
  }
};

/// All p/q in [lo, hi] in lowest terms with 1 <= q <= max_den, descending.
inline std::vector<Slope> admissible_slopes(const Slope& lo, const Slope& hi, std::int64_t max_den) {
  std::vector<Slope> out;
  if (hi < lo) return out;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    std::int64_t p_lo = (lo * Rational(q)).ceil();
    std::int64_t p_hi = (hi * Rational(q)).floor();
    for (std::int64_t p = p_lo; p <= p_hi; ++p)
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
  }
  std::sort(out.begin(), out.end(), std::greater<>{});
  return out;
}

namespace detail {

class ConcaveWalker {
 public:
  explicit ConcaveWalker(const EnumerationBounds& b) : bounds_(b) {
    b.validate();
    auto n = static_cast<std::size_t>(b.rank);
    upper_.assign(n, b.max_slope);
    lower_.assign(n, b.min_slope);
    for (std::size_t i = 0; i < n; ++i) {
      if (b.upper_envelope) upper_[i] = min(upper_[i], (*b.upper_envelope)[i]);
      if (b.lower_envelope) lower_[i] = max(lower_[i], (*b.lower_envelope)[i]);
    }
    // Suffix sums of the floors bound the remaining degree from below.
    floor_suffix_.assign(n + 1, Rational());
    for (std::size_t i = n; i-- > 0;) floor_suffix_[i] = floor_suffix_[i + 1] + lower_[i];
  }

  template <class Visit>
  void run(Visit& visit) {
    stopped_ = false;
    runs_.clear();
    descend(0, Rational(bounds_.degree), std::nullopt, visit);
  }

 private:
  // Largest achievable degree on positions [pos, n) with every slope <= cap.
  Rational ceiling_sum(std::size_t pos, const Slope& cap) const {
    Rational s;
    for (std::size_t i = pos; i < upper_.size(); ++i) s += min(cap, upper_[i]);
    return s;
  }

  template <class Visit>
  bool emit(Visit& visit) {
    ConcavePolygon p = ConcavePolygon::from_runs(runs_);
    if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const ConcavePolygon&>, bool>) {
      return visit(p);
    } else {
      visit(p);
      return true;
    }
  }

  template <class Visit>
  void descend(std::size_t pos, const Rational& remaining_degree, const std::optional<Slope>& cap, Visit& visit) {
    const std::size_t n = upper_.size();
    if (pos == n) {
      if (remaining_degree == Rational() && !emit(visit)) stopped_ = true;
      return;
    }
    const auto remaining = static_cast<std::int64_t>(n - pos);
    Slope hi = upper_[pos];
    if (cap && *cap <= hi) hi = *cap;
    for (const Slope& s : admissible_slopes(lower_[pos], hi, remaining)) {
      if (stopped_) return;
      if (cap && s >= *cap) continue;
      // Longest admissible run of slope s starting at pos.
      std::int64_t max_len = 0;
      for (std::int64_t len = 1; len <= remaining; ++len) {
        auto i = pos + static_cast<std::size_t>(len) - 1;
        if (s > upper_[i] || s < lower_[i]) break;
        max_len = len;
      }
      const std::int64_t q = s.den();
      for (std::int64_t len = (max_len / q) * q; len >= q; len -= q) {
        if (stopped_) return;
        const std::size_t next = pos + static_cast<std::size_t>(len);
        Rational rest = remaining_degree - s * Rational(len);
        if (next == n) {
          if (rest != Rational()) continue;
        } else {
          if (rest < floor_suffix_[next]) continue;
          if (rest > ceiling_sum(next, s)) continue;
        }
        runs_.push_back({s, len});
        descend(next, rest, s, visit);
        runs_.pop_back();
      }
    }
  }

  const EnumerationBounds& bounds_;
  std::vector<Slope> upper_, lower_;
  std::vector<Rational> floor_suffix_;
  std::vector<Run> runs_;
  bool stopped_ = false;
};

}  // namespace detail

/// Streams every concave lattice polygon within the bounds to `visit`.
/// If `visit` returns bool, returning false stops the stream.
template <class Visit>
void for_each_concave(const EnumerationBounds& bounds, Visit&& visit) {
  detail::ConcaveWalker walker(bounds);
  walker.run(visit);
}

inline std::vector<ConcavePolygon> enumerate_concave(const EnumerationBounds& bounds) {
  std::vector<ConcavePolygon> out;
  for_each_concave(bounds, [&](const ConcavePolygon& p) { out.push_back(p); });
  return out;
}

/// Every D' of the same rank as the semistable D with D' + 1 >= D >= D'
/// slopewise, i.e. all slopes in [lambda - 1, lambda]. Degrees are visited
/// from deg(D) downward.
template <class Visit>
void for_each_sandwich_candidate(const ConcavePolygon& d, Visit&& visit) {
  if (!d.is_semistable()) throw PolygonError("sandwich candidates require a semistable polygon");
  const Slope lambda = d.max_slope();
  const std::int64_t r = d.rank();
  bool stopped = false;
  for (std::int64_t deg = d.degree(); deg >= d.degree() - r && !stopped; --deg) {
    EnumerationBounds b{r, deg, lambda, lambda - Rational(1), std::nullopt, std::nullopt};
    for_each_concave(b, [&](const ConcavePolygon& p) {
      if constexpr (std::is_same_v<std::invoke_result_t<Visit&, const ConcavePolygon&>, bool>) {
        if (!visit(p)) {
          stopped = true;
          return false;
        }
      } else {
        visit(p);
      }
      return true;
    });
  }
}

inline std::vector<ConcavePolygon> enumerate_sandwich_candidates(const ConcavePolygon& d) {
  std::vector<ConcavePolygon> out;
  for_each_sandwich_candidate(d, [&](const ConcavePolygon& p) { out.push_back(p); });
  return out;
}

}  // namespace nstrata
