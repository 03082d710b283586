#pragma once

// Extension calculus at the level of Harder-Narasimhan polygons.
//
// For bundles D, E, F, a (D, E, F)-permutation is a rearrangement P of the
// slopes of D (+) F with P >= HN(E) in the Bruhat order such that
//   P_i < HN(E)_i only if P_i occurs as a slope of D, and
//   P_i > HN(E)_i only if P_i occurs as a slope of F.
// An extension 0 -> D -> E -> F -> 0 exists iff, writing F = F_1 (+) ... (+) F_m
// by descending slope, there is a chain D = E_0, E_1, ..., E_m = E where each
// step admits an (E_{i-1}, E_i, F_i)-permutation.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "nstrata/enumeration.hpp"
#include "nstrata/polygon.hpp"

namespace nstrata {

/// Which summand a slope of a permutation polygon is attributed to.
enum class SlopeSource { kernel, quotient };

inline const char* to_string(SlopeSource s) { return s == SlopeSource::kernel ? "D" : "F"; }

struct PermutationWitness {
  /// tags[i] names a summand in which polygon[i] occurs as a slope.
  std::vector<SlopeSource> tags;
  TuplarPolygon polygon;
};

struct ExtensionWitness {
  /// E_0 = D, ..., E_m = E
  std::vector<ConcavePolygon> chain;
  /// steps[i] is an (E_i, E_{i+1}, F_{i+1})-permutation.
  std::vector<PermutationWitness> steps;
};

/// D embeds into E (equal rank) iff HN(E) dominates HN(D) slopewise.
inline bool is_subsheaf(const ConcavePolygon& d, const ConcavePolygon& e) {
  if (d.rank() != e.rank()) throw PolygonError("is_subsheaf: rank mismatch");
  return slopewise_geq(e, d);
}

/// Every extension of F by D splits when min slope(D) >= max slope(F).
inline bool every_extension_splits(const ConcavePolygon& d, const ConcavePolygon& f) {
  if (d.empty() || f.empty()) return true;
  return d.min_slope() >= f.max_slope();
}

namespace detail {

inline void require_extension_shape(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f,
                                    const char* what) {
  if (d.rank() + f.rank() != e.rank())
    throw PolygonError(std::string(what) + ": rank(D) + rank(F) != rank(E)");
  if (d.degree() + f.degree() != e.degree())
    throw PolygonError(std::string(what) + ": deg(D) + deg(F) != deg(E)");
}

inline bool occurs_in(const ConcavePolygon& p, const Slope& s) {
  for (const auto& run : p.runs())
    if (run.slope == s) return true;
  return false;
}

// Backtracking over positions with the multiset of unused slopes as state.
// The prefix sum is a function of that state, so failures are memoized on
// the multiset alone.
class PermutationSearch {
 public:
  PermutationSearch(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f) : target_(e.slopes()) {
    ConcavePolygon pool = direct_sum(d, f);
    for (const auto& run : pool.runs()) {
      values_.push_back(run.slope);
      counts_.push_back(run.length);
      in_kernel_.push_back(occurs_in(d, run.slope));
      in_quotient_.push_back(occurs_in(f, run.slope));
    }
    target_prefix_.assign(target_.size() + 1, Rational());
    for (std::size_t i = 0; i < target_.size(); ++i) target_prefix_[i + 1] = target_prefix_[i] + target_[i];
    radix_.assign(counts_.size(), 1);
    for (std::size_t k = 1; k < counts_.size(); ++k) radix_[k] = radix_[k - 1] * static_cast<std::uint64_t>(counts_[k - 1] + 1);
  }

  std::optional<PermutationWitness> run(const ConcavePolygon& d) {
    chosen_.clear();
    if (!descend(0, Rational())) return std::nullopt;
    std::vector<Slope> slopes;
    std::vector<SlopeSource> tags;
    for (std::size_t i = 0; i < chosen_.size(); ++i) {
      const std::size_t k = chosen_[i];
      const Slope& s = values_[k];
      slopes.push_back(s);
      if (s < target_[i])
        tags.push_back(SlopeSource::kernel);
      else if (s > target_[i])
        tags.push_back(SlopeSource::quotient);
      else
        tags.push_back(occurs_in(d, s) ? SlopeSource::kernel : SlopeSource::quotient);
    }
    return PermutationWitness{std::move(tags), TuplarPolygon(std::move(slopes))};
  }

 private:
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < counts_.size(); ++i) k += radix_[i] * static_cast<std::uint64_t>(counts_[i]);
    return k;
  }

  // Placing the unused slopes in descending order maximizes every later
  // prefix sum, so if even that falls short the branch is dead.
  bool greedy_completion_ok(std::size_t pos, Rational prefix) const {
    std::size_t i = pos;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      for (std::int64_t c = 0; c < counts_[k]; ++c) {
        prefix += values_[k];
        ++i;
        if (prefix < target_prefix_[i]) return false;
      }
    }
    return true;
  }

  bool descend(std::size_t pos, const Rational& prefix) {
    if (pos == target_.size()) return true;
    if (dead_.contains(key())) return false;
    for (std::size_t k = 0; k < values_.size(); ++k) {
      if (counts_[k] == 0) continue;
      const Slope& s = values_[k];
      if (s < target_[pos] && !in_kernel_[k]) continue;
      if (s > target_[pos] && !in_quotient_[k]) continue;
      Rational next = prefix + s;
      if (next < target_prefix_[pos + 1]) continue;
      --counts_[k];
      chosen_.push_back(k);
      if (greedy_completion_ok(pos + 1, next) && descend(pos + 1, next)) return true;
      chosen_.pop_back();
      ++counts_[k];
    }
    dead_.insert(key());
    return false;
  }

  std::vector<Slope> target_;
  std::vector<Rational> target_prefix_;
  std::vector<Slope> values_;
  std::vector<std::int64_t> counts_;
  std::vector<bool> in_kernel_, in_quotient_;
  std::vector<std::uint64_t> radix_;
  std::vector<std::size_t> chosen_;
  std::unordered_set<std::uint64_t> dead_;
};

}  // namespace detail

/// Finds a (D, E, F)-permutation of HN(D (+) F), trying the descending
/// arrangement first.
inline std::optional<PermutationWitness> find_permutation(const ConcavePolygon& d, const ConcavePolygon& e,
                                                          const ConcavePolygon& f) {
  detail::require_extension_shape(d, e, f, "find_permutation");
  if (e.empty()) throw PolygonError("find_permutation: rank 0");
  detail::PermutationSearch search(d, e, f);
  return search.run(d);
}

inline bool permutation_exists(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f) {
  return find_permutation(d, e, f).has_value();
}

namespace detail {

class ExtensionSearch {
 public:
  ExtensionSearch(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f) : target_(e) {
    for (const auto& run : f.runs()) pieces_.push_back(ConcavePolygon::from_runs({run}));
    // tails_[i] = F_{i+1} (+) ... (+) F_m (zero-based: pieces i..m-1)
    tails_.assign(pieces_.size() + 1, ConcavePolygon());
    for (std::size_t i = pieces_.size(); i-- > 0;) tails_[i] = direct_sum(pieces_[i], tails_[i + 1]);
    witness_.chain.push_back(d);
  }

  std::optional<ExtensionWitness> run() {
    if (!descend(0)) return std::nullopt;
    return witness_;
  }

 private:
  // witness_.chain.back() is E_step; try to reach the target using pieces[step..].
  bool descend(std::size_t step) {
    const ConcavePolygon current = witness_.chain.back();
    if (step == pieces_.size()) return current == target_;
    // Any chain from here realizes the target as an extension of the tail
    // by the current bundle, which forces a Bruhat bound.
    if (!bruhat_geq(direct_sum(current, tails_[step]), target_)) return false;
    auto& dead = dead_[step];
    if (dead.contains(current)) return false;

    const ConcavePolygon& piece = pieces_[step];
    if (step + 1 == pieces_.size()) {
      if (auto perm = find_permutation(current, target_, piece)) {
        witness_.chain.push_back(target_);
        witness_.steps.push_back(std::move(*perm));
        return true;
      }
      dead.insert(current);
      return false;
    }

    const ConcavePolygon pool = direct_sum(current, piece);
    EnumerationBounds bounds{pool.rank(), pool.degree(), pool.max_slope(), pool.min_slope(), std::nullopt,
                             std::nullopt};
    bool found = false;
    for_each_concave(bounds, [&](const ConcavePolygon& next) {
      if (!bruhat_geq(pool, next)) return true;
      auto perm = find_permutation(current, next, piece);
      if (!perm) return true;
      witness_.chain.push_back(next);
      witness_.steps.push_back(std::move(*perm));
      if (descend(step + 1)) {
        found = true;
        return false;
      }
      witness_.chain.pop_back();
      witness_.steps.pop_back();
      return true;
    });
    if (!found) dead.insert(current);
    return found;
  }

  ConcavePolygon target_;
  std::vector<ConcavePolygon> pieces_;
  std::vector<ConcavePolygon> tails_;
  ExtensionWitness witness_;
  std::map<std::size_t, std::unordered_set<ConcavePolygon>> dead_;
};

}  // namespace detail

/// Searches for a chain certifying that E is an extension of F by D.
inline std::optional<ExtensionWitness> find_extension(const ConcavePolygon& d, const ConcavePolygon& e,
                                                      const ConcavePolygon& f) {
  detail::require_extension_shape(d, e, f, "find_extension");
  if (f.empty()) {
    if (d == e) return ExtensionWitness{{d}, {}};
    return std::nullopt;
  }
  detail::ExtensionSearch search(d, e, f);
  return search.run();
}

inline bool extension_exists(const ConcavePolygon& d, const ConcavePolygon& e, const ConcavePolygon& f) {
  return find_extension(d, e, f).has_value();
}

}  // namespace nstrata
