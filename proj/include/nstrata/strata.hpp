#pragma once

// Decision procedures for nonemptiness of Newton strata in minuscule
// Schubert cells for GL_n.
//
// The stratum Gr^{b'}_{mu, b} with mu minuscule is nonempty iff there is a
// minuscule effective modification E_{b'} -> E_b of degree deg(b) - deg(b')
// (after shifting mu to take values in {0, 1}). Such modifications are
// decided by induction on the number of slopes of E = E_b:
//   * E semistable: E' + 1 >= E >= E' slopewise.
//   * otherwise E = D (+) F with D the run of maximal slope; a modification
//     exists iff some D' (sandwiched below D) and F' (a modification of F)
//     have E' as an extension of F' by D'.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nstrata/certificate.hpp"
#include "nstrata/enumeration.hpp"
#include "nstrata/extensions.hpp"
#include "nstrata/polygon.hpp"

namespace nstrata {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A candidate minuscule effective modification target -> source.
struct ModificationQuery {
  ConcavePolygon source;  // E
  ConcavePolygon target;  // E'

  std::int64_t rank() const { return source.rank(); }
  /// deg(E) - deg(E')
  std::int64_t degree() const { return source.degree() - target.degree(); }

  friend bool operator==(const ModificationQuery&, const ModificationQuery&) = default;
};

struct StratumQuery {
  ConcavePolygon b;
  DominantCocharacter mu;
  ConcavePolygon b_prime;
};

namespace detail {
inline void require_query_ranks(const ModificationQuery& q, const char* what) {
  if (q.source.rank() != q.target.rank()) throw PolygonError(std::string(what) + ": rank mismatch");
  if (q.source.empty()) throw PolygonError(std::string(what) + ": rank 0");
}

inline TuplarPolygon minus_one(const TuplarPolygon& p) {
  std::vector<Slope> s = p.slopes();
  for (auto& x : s) x -= Rational(1);
  return TuplarPolygon(std::move(s));
}
}  // namespace detail

/// E + dual(mu_d) >= E' where mu_d = (1^d, 0^(n-d)).
inline bool minuscule_bruhat_holds(const ModificationQuery& q) {
  detail::require_query_ranks(q, "minuscule_bruhat_holds");
  const std::int64_t d = q.degree();
  if (d < 0 || d > q.rank()) return false;
  TuplarPolygon shifted = pointwise_add(q.source.tuple(), dual(MinusculeCocharacter(q.rank(), d).polygon()));
  return bruhat_geq(shifted, q.target.tuple());
}

/// E' + 1 >= E >= E' slopewise.
inline bool slopewise_sandwich_holds(const ModificationQuery& q) {
  detail::require_query_ranks(q, "slopewise_sandwich_holds");
  for (std::size_t i = 0; i < q.source.slopes().size(); ++i) {
    const Slope& e = q.source[i];
    const Slope& t = q.target[i];
    if (e < t || e > t + Rational(1)) return false;
  }
  return true;
}

/// Both inequalities every minuscule modification satisfies.
inline bool necessity_holds(const ModificationQuery& q) {
  const std::int64_t d = q.degree();
  if (d < 0 || d > q.rank()) return false;
  return slopewise_sandwich_holds(q) && minuscule_bruhat_holds(q);
}

/// Nonemptiness for semistable b and an arbitrary dominant mu:
/// b + dual(mu) >= b' in the Bruhat order.
inline bool basic_stratum_nonempty(const ConcavePolygon& b, const DominantCocharacter& mu,
                                   const ConcavePolygon& b_prime) {
  if (!b.is_semistable()) throw PreconditionError("basic_stratum_nonempty: b is not basic");
  if (b.rank() != mu.rank() || b.rank() != b_prime.rank())
    throw PolygonError("basic_stratum_nonempty: rank mismatch");
  return bruhat_geq(pointwise_add(b.tuple(), dual(mu.polygon())), b_prime.tuple());
}

inline bool semistable_modification_exists(const ModificationQuery& q) {
  detail::require_query_ranks(q, "semistable_modification_exists");
  if (!q.source.is_semistable()) throw PreconditionError("semistable_modification_exists: E is not semistable");
  const std::int64_t d = q.degree();
  if (d < 0 || d > q.rank()) return false;
  return slopewise_sandwich_holds(q);
}

/// Distinct slopes of E pairwise differ by more than 1.
inline bool has_separated_slopes(const ConcavePolygon& e) {
  for (std::size_t i = 0; i + 1 < e.runs().size(); ++i)
    if (e.runs()[i].slope - e.runs()[i + 1].slope <= Rational(1)) return false;
  return true;
}

/// Closed-form decision, valid when the slopes of E are separated by more
/// than 1: the Bruhat inequality, the slopewise sandwich, and every
/// breakpoint of E being a breakpoint of E'.
inline bool explicit_criterion(const ModificationQuery& q) {
  detail::require_query_ranks(q, "explicit_criterion");
  if (!has_separated_slopes(q.source))
    throw PreconditionError("explicit_criterion: slopes of E " + q.source.to_string() + " differ by at most 1");
  const std::int64_t d = q.degree();
  if (d < 0 || d > q.rank()) return false;
  if (!minuscule_bruhat_holds(q) || !slopewise_sandwich_holds(q)) return false;
  auto outer = breakpoints(q.source);
  auto inner = breakpoints(q.target);
  return std::includes(inner.begin(), inner.end(), outer.begin(), outer.end());
}

/// (E, E') -> (E', E - 1). A modification E' -> E of degree d exists iff one
/// (E - 1) -> E' of degree n - d does.
inline ModificationQuery duality_transport(const ModificationQuery& q) {
  detail::require_query_ranks(q, "duality_transport");
  return {q.target, shift(q.source, -1)};
}

struct StandardReduction {
  ModificationQuery query;
  /// mu shifted to {0,1} values; meaningful only when valid.
  std::optional<MinusculeCocharacter> mu;
  /// The amount m with mu = mu_standard + m.
  std::int64_t shift = 0;
  bool valid = false;
};

/// Rewrites a stratum query with mu in {m, m+1} as the equivalent query
/// with mu in {0, 1}: b' becomes b' + m.
inline StandardReduction reduce_to_standard(const StratumQuery& q) {
  StandardReduction r{{q.b, q.b_prime}, std::nullopt, 0, false};
  if (!q.mu.is_minuscule()) return r;
  if (q.b.rank() != q.mu.rank() || q.b_prime.rank() != q.mu.rank()) return r;
  const std::int64_t m = q.mu.entries().back();
  r.shift = m;
  r.mu = MinusculeCocharacter(q.mu.rank(), q.mu.degree() - m * q.mu.rank());
  r.query = {q.b, shift(q.b_prime, m)};
  r.valid = true;
  return r;
}

struct SolverOptions {
  bool memoize = true;
  /// Reject queries failing the necessary inequalities before searching.
  bool necessity_filter = true;
  /// Fault injection for the self-test harness: accept candidate pairs
  /// without checking the extension condition. Produces wrong answers.
  bool skip_extension_check = false;
};

/// The inductive engine. Holds memo tables; safe to share across threads.
class ModificationSolver {
 public:
  explicit ModificationSolver(SolverOptions options = {}) : options_(options) {}

  const SolverOptions& options() const { return options_; }

  /// A certificate when a minuscule effective modification target -> source
  /// exists, nullptr otherwise.
  CertificatePtr find(const ModificationQuery& q) {
    detail::require_query_ranks(q, "minuscule_modification_exists");
    const std::int64_t d = q.degree();
    if (d < 0 || d > q.rank()) return nullptr;
    if (q.source == q.target) return make_identity(q);
    if (q.source.is_semistable()) {
      if (!semistable_modification_exists(q)) return nullptr;
      auto c = std::make_shared<Certificate>();
      c->kind = Certificate::Kind::basic;
      c->source = q.source;
      c->target = q.target;
      c->degree = d;
      c->bruhat_holds = minuscule_bruhat_holds(q);
      c->sandwich_holds = true;
      return c;
    }
    if (options_.necessity_filter && !necessity_holds(q)) return nullptr;

    Key key{q.source, q.target};
    if (options_.memoize) {
      std::lock_guard lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    CertificatePtr result = search(q);
    if (options_.memoize) {
      std::lock_guard lock(mutex_);
      return memo_.try_emplace(std::move(key), result).first->second;
    }
    return result;
  }

  bool exists(const ModificationQuery& q) { return find(q) != nullptr; }

  /// Nonemptiness of Gr^{b'}_{mu, b}; mu must be minuscule.
  CertificatePtr stratum_nonempty(const StratumQuery& q) {
    if (!q.mu.is_minuscule()) throw PreconditionError("stratum_nonempty: cocharacter is not minuscule");
    if (q.b.rank() != q.mu.rank() || q.b_prime.rank() != q.mu.rank())
      throw PolygonError("stratum_nonempty: rank mismatch");
    StandardReduction r = reduce_to_standard(q);
    if (r.query.degree() != r.mu->degree) return nullptr;
    return find(r.query);
  }

  /// Every b' with Gr^{b'}_{mu, b} nonempty, in enumeration order.
  std::vector<std::pair<ConcavePolygon, CertificatePtr>> enumerate_nonempty_strata(const ConcavePolygon& b,
                                                                                   const MinusculeCocharacter& mu) {
    if (b.rank() != mu.rank) throw PolygonError("enumerate_nonempty_strata: rank mismatch");
    std::vector<std::pair<ConcavePolygon, CertificatePtr>> out;
    EnumerationBounds bounds{b.rank(),
                             b.degree() - mu.degree,
                             b.max_slope(),
                             b.min_slope() - Rational(1),
                             b.tuple(),
                             detail::minus_one(b.tuple())};
    for_each_concave(bounds, [&](const ConcavePolygon& candidate) {
      if (auto cert = find({b, candidate})) out.emplace_back(candidate, std::move(cert));
    });
    return out;
  }

  std::size_t memo_size() const {
    std::lock_guard lock(mutex_);
    return memo_.size();
  }

 private:
  using Key = std::pair<ConcavePolygon, ConcavePolygon>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t a = std::hash<ConcavePolygon>{}(k.first);
      return a ^ (std::hash<ConcavePolygon>{}(k.second) + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }
  };

  static CertificatePtr make_identity(const ModificationQuery& q) {
    auto c = std::make_shared<Certificate>();
    c->kind = Certificate::Kind::identity;
    c->source = q.source;
    c->target = q.target;
    c->degree = 0;
    return c;
  }

  CertificatePtr search(const ModificationQuery& q) {
    auto [top, rest] = split_top_run(q.source);
    const ConcavePolygon& target = q.target;
    CertificatePtr found;
    for_each_sandwich_candidate(top, [&](const ConcavePolygon& top_mod) {
      const std::int64_t rest_degree = target.degree() - top_mod.degree();
      const std::int64_t rest_shift = rest.degree() - rest_degree;
      if (rest_shift < 0 || rest_shift > rest.rank()) return true;
      // F' is a modification of F, hence F - 1 <= F' <= F slopewise.
      EnumerationBounds bounds{rest.rank(),   rest_degree,  rest.max_slope(), rest.min_slope() - Rational(1),
                               rest.tuple(), detail::minus_one(rest.tuple())};
      for_each_concave(bounds, [&](const ConcavePolygon& rest_mod) {
        if (!bruhat_geq(direct_sum(top_mod, rest_mod), target)) return true;
        CertificatePtr sub = find({rest, rest_mod});
        if (!sub) return true;
        std::optional<ExtensionWitness> ext;
        if (options_.skip_extension_check)
          ext = ExtensionWitness{{top_mod, target}, {}};
        else
          ext = find_extension(top_mod, target, rest_mod);
        if (!ext) return true;
        auto c = std::make_shared<Certificate>();
        c->kind = Certificate::Kind::inductive;
        c->source = q.source;
        c->target = target;
        c->degree = q.degree();
        c->top = top;
        c->rest = rest;
        c->top_modified = top_mod;
        c->rest_modified = rest_mod;
        c->extension = std::move(*ext);
        c->sub = std::move(sub);
        found = std::move(c);
        return false;
      });
      return found == nullptr;
    });
    return found;
  }

  SolverOptions options_;
  mutable std::mutex mutex_;
  std::unordered_map<Key, CertificatePtr, KeyHash> memo_;
};

/// One-shot wrapper around a fresh solver.
inline CertificatePtr minuscule_modification_exists(const ModificationQuery& q) {
  ModificationSolver solver;
  return solver.find(q);
}

inline CertificatePtr stratum_nonempty(const StratumQuery& q) {
  ModificationSolver solver;
  return solver.stratum_nonempty(q);
}

inline std::vector<std::pair<ConcavePolygon, CertificatePtr>> enumerate_nonempty_strata(
    const ConcavePolygon& b, const MinusculeCocharacter& mu) {
  ModificationSolver solver;
  return solver.enumerate_nonempty_strata(b, mu);
}

}  // namespace nstrata
