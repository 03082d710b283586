#pragma once

// Property checks shared by the self-test command and the test suites.
// Each check walks a finite domain, counts the cases it examined and keeps
// the first counterexample it meets, rendered as literals.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "nstrata/enumeration.hpp"
#include "nstrata/extensions.hpp"
#include "nstrata/oracle.hpp"
#include "nstrata/polygon.hpp"
#include "nstrata/replay.hpp"
#include "nstrata/strata.hpp"

namespace nstrata::properties {

struct Tally {
  Tally() = default;
  explicit Tally(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t checked = 0;
  std::optional<std::string> failure;

  bool ok() const { return !failure; }
  void fail(std::string what) {
    if (!failure) failure = std::move(what);
  }
};

/// Every tuple of the given rank over the grid, in lexicographic order.
inline void for_each_tuple(const std::vector<Slope>& grid, std::int64_t rank,
                           const std::function<void(const std::vector<Slope>&)>& visit) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(rank), 0);
  std::vector<Slope> cur(idx.size(), grid.front());
  while (true) {
    visit(cur);
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] + 1 == grid.size()) {
      idx[k - 1] = 0;
      cur[k - 1] = grid.front();
      --k;
    }
    if (k == 0) return;
    cur[k - 1] = grid[++idx[k - 1]];
  }
}

/// Every non-increasing tuple of the given rank over the grid.
inline std::vector<std::vector<Slope>> descending_tuples(std::vector<Slope> grid, std::int64_t rank) {
  std::sort(grid.begin(), grid.end(), std::greater<>{});
  std::vector<std::vector<Slope>> out;
  std::vector<Slope> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<std::int64_t>(cur.size()) == rank) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < grid.size(); ++i) {
      cur.push_back(grid[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

/// The concave rearrangement is Bruhat-above every tuple it rearranges.
inline Tally rearrangement_maximality(const std::vector<Slope>& grid, std::int64_t max_rank) {
  Tally t{"concave rearrangement is maximal"};
  for (std::int64_t r = 1; r <= max_rank; ++r)
    for_each_tuple(grid, r, [&](const std::vector<Slope>& s) {
      TuplarPolygon p(s);
      ++t.checked;
      if (!bruhat_geq(concave_rearrangement(p), p)) t.fail("P = " + p.to_string());
    });
  return t;
}

/// For concave P >= P' and Q >= Q': P (+) Q >= P' (+) Q'. Ranks satisfy
/// rank(P) + rank(Q) <= max_rank.
inline Tally direct_sum_monotonicity(const std::vector<Slope>& grid, std::int64_t max_rank) {
  Tally t{"direct sum is monotone on concave polygons"};
  // dominated[r] lists the pairs (P, P') of rank r with P >= P'.
  std::vector<std::vector<std::pair<TuplarPolygon, TuplarPolygon>>> dominated(static_cast<std::size_t>(max_rank));
  for (std::int64_t r = 1; r < max_rank; ++r) {
    auto tuples = descending_tuples(grid, r);
    for (const auto& a : tuples)
      for (const auto& b : tuples) {
        TuplarPolygon p(a), q(b);
        if (p.degree() == q.degree() && bruhat_geq(p, q)) dominated[static_cast<std::size_t>(r)].emplace_back(p, q);
      }
  }
  for (std::int64_t m = 1; m < max_rank; ++m)
    for (std::int64_t n = m; m + n <= max_rank; ++n)
      for (const auto& [p, p2] : dominated[static_cast<std::size_t>(m)])
        for (const auto& [q, q2] : dominated[static_cast<std::size_t>(n)]) {
          ++t.checked;
          if (!bruhat_geq(direct_sum(p, q), direct_sum(p2, q2)))
            t.fail("P = " + p.to_string() + ", P' = " + p2.to_string() + ", Q = " + q.to_string() +
                   ", Q' = " + q2.to_string());
        }
  return t;
}

/// (P (+) Q) + (P' (+) Q') >= (P + P') (+) (Q + Q') for arbitrary tuplar
/// polygons with rank(P) + rank(Q) <= max_rank. Permuting P and P' by the
/// same permutation changes neither side, so P and Q range over sorted
/// tuples only; the statement is symmetric in the two summands, so
/// rank(P) <= rank(Q).
inline Tally sum_inequality(const std::vector<Slope>& grid, std::int64_t max_rank) {
  Tally t{"sum of direct sums dominates direct sum of sums"};
  for (std::int64_t m = 1; m < max_rank; ++m)
    for (std::int64_t n = m; m + n <= max_rank; ++n) {
      auto ps = descending_tuples(grid, m);
      auto qs = descending_tuples(grid, n);
      for (const auto& pv : ps)
        for_each_tuple(grid, m, [&](const std::vector<Slope>& p2v) {
          TuplarPolygon p(pv), p2(p2v);
          TuplarPolygon pp = pointwise_add(p, p2);
          for (const auto& qv : qs)
            for_each_tuple(grid, n, [&](const std::vector<Slope>& q2v) {
              TuplarPolygon q(qv), q2(q2v);
              ++t.checked;
              TuplarPolygon lhs = pointwise_add(direct_sum(p, q), direct_sum(p2, q2));
              TuplarPolygon rhs = direct_sum(pp, pointwise_add(q, q2));
              if (!bruhat_geq(lhs, rhs))
                t.fail("P = " + p.to_string() + ", P' = " + p2.to_string() + ", Q = " + q.to_string() +
                       ", Q' = " + q2.to_string());
            });
        });
    }
  return t;
}

/// Monotonicity fails without concavity: P = Q = (1/2, 1/2) dominate the
/// convex P' = Q' = (0, 1), yet (1/2)^4 is not above (1, 1, 0, 0).
inline Tally concavity_counterexample() {
  Tally t{"direct sum monotonicity needs concavity"};
  TuplarPolygon p = TuplarPolygon::line_segment(Rational(1), 2);
  TuplarPolygon p2(std::vector<Slope>{Rational(0), Rational(1)});
  ++t.checked;
  if (!bruhat_geq(p, p2)) t.fail("(1/2, 1/2) should dominate (0, 1)");
  if (!(direct_sum(p, p) == TuplarPolygon::constant(Rational(1, 2), 4))) t.fail("(1/2,1/2) (+) (1/2,1/2) != (1/2)^4");
  if (!(direct_sum(p2, p2) == TuplarPolygon(std::vector<Slope>{Rational(1), Rational(1), Rational(0), Rational(0)})))
    t.fail("(0,1) (+) (0,1) != (1,1,0,0)");
  if (bruhat_geq(direct_sum(p, p), direct_sum(p2, p2))) t.fail("(1/2)^4 >= (1,1,0,0) should fail");
  return t;
}

/// enumerate_concave agrees with the brute-force grid enumeration.
inline Tally enumeration_agreement(const oracle::CorpusSpec& spec, std::int64_t max_rank, std::int64_t max_abs_degree) {
  Tally t{"enumerate_concave matches brute force"};
  for (std::int64_t r = 1; r <= max_rank; ++r)
    for (std::int64_t deg = -max_abs_degree; deg <= max_abs_degree; ++deg) {
      std::set<std::vector<Slope>> fast;
      EnumerationBounds b{r, deg, spec.window_hi, spec.window_lo, std::nullopt, std::nullopt};
      for_each_concave(b, [&](const ConcavePolygon& p) {
        for (const auto& run : p.runs())
          if (run.slope.den() > spec.max_denominator) return;
        fast.insert(p.slopes());
      });
      ++t.checked;
      if (fast != oracle::brute_concave_enumeration(spec, r, deg))
        t.fail("rank " + std::to_string(r) + ", degree " + std::to_string(deg));
    }
  return t;
}

/// Compares permutation_exists with the brute-force oracle on random
/// triples. D and F are drawn from the corpus, E from the concave polygons
/// of the matching rank and degree with slopes between min F and max D.
inline Tally permutation_agreement(const oracle::CorpusSpec& spec, std::int64_t max_rank_e, std::uint64_t samples,
                                   std::uint64_t seed) {
  Tally t{"permutation_exists matches brute force"};
  std::vector<ConcavePolygon> pool;
  for (std::int64_t r = 1; r < max_rank_e; ++r) {
    auto ps = oracle::corpus_polygons(spec, r);
    pool.insert(pool.end(), ps.begin(), ps.end());
  }
  if (pool.empty()) return t;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::map<std::tuple<std::int64_t, std::int64_t, Slope, Slope>, std::vector<ConcavePolygon>> middles;
  std::uint64_t attempts = 0;
  while (t.checked < samples && attempts < 100 * samples) {
    ++attempts;
    const ConcavePolygon& d = pool[pick(rng)];
    const ConcavePolygon& f = pool[pick(rng)];
    const std::int64_t rank = d.rank() + f.rank();
    if (rank > max_rank_e) continue;
    const std::int64_t deg = d.degree() + f.degree();
    Slope lo = min(d.min_slope(), f.min_slope()), hi = max(d.max_slope(), f.max_slope());
    auto key = std::make_tuple(rank, deg, lo, hi);
    auto it = middles.find(key);
    if (it == middles.end()) {
      std::vector<ConcavePolygon> es;
      EnumerationBounds b{rank, deg, hi, lo, std::nullopt, std::nullopt};
      for_each_concave(b, [&](const ConcavePolygon& p) {
        for (const auto& run : p.runs())
          if (run.slope.den() > rank) return;
        es.push_back(p);
      });
      it = middles.emplace(key, std::move(es)).first;
    }
    if (it->second.empty()) continue;
    const ConcavePolygon& e = it->second[std::uniform_int_distribution<std::size_t>(0, it->second.size() - 1)(rng)];
    ++t.checked;
    if (permutation_exists(d, e, f) != oracle::brute_permutation_exists(d, e, f))
      t.fail("D = " + d.to_string() + ", E = " + e.to_string() + ", F = " + f.to_string());
  }
  return t;
}

/// Per-query consistency over a corpus.
struct CorpusReport {
  std::uint64_t queries = 0;
  std::uint64_t positives = 0;
  Tally replay{"every positive decision replays"};
  Tally necessity{"positive decisions satisfy the necessary inequalities"};
  Tally duality{"decision is invariant under duality transport"};
  Tally explicit_agreement{"explicit criterion matches the inductive engine"};
  Tally basic_agreement{"semistable sandwich matches the Bruhat formula"};
  Tally witness_oracle{"extension witnesses pass the brute-force permutation oracle"};

  std::vector<const Tally*> tallies() const {
    return {&replay, &necessity, &duality, &explicit_agreement, &basic_agreement, &witness_oracle};
  }
};

inline std::string query_literal(const ModificationQuery& q) {
  return "E = " + q.source.to_string() + ", E' = " + q.target.to_string();
}

inline void check_query(ModificationSolver& solver, const ModificationQuery& q, CorpusReport& rep) {
  ++rep.queries;
  const std::string where = query_literal(q);
  CertificatePtr cert = solver.find(q);
  const bool decision = cert != nullptr;
  if (decision) {
    ++rep.positives;
    ++rep.replay.checked;
    if (auto err = verify_certificate(*cert)) rep.replay.fail(where + ": " + *err);
    ++rep.necessity.checked;
    if (!necessity_holds(q)) rep.necessity.fail(where);
    if (cert->kind == Certificate::Kind::inductive) {
      for (const Certificate* c = cert.get(); c && c->kind == Certificate::Kind::inductive; c = c->sub.get()) {
        const auto& pieces = c->rest_modified.runs();
        for (std::size_t i = 0; i < pieces.size() && i + 1 < c->extension.chain.size(); ++i) {
          const ConcavePolygon& prev = c->extension.chain[i];
          const ConcavePolygon& next = c->extension.chain[i + 1];
          // Malformed chains are reported by the replay check.
          if (next.rank() > 8 || prev.rank() + pieces[i].length != next.rank()) continue;
          ++rep.witness_oracle.checked;
          if (!oracle::brute_permutation_exists(prev, next, ConcavePolygon::from_runs({pieces[i]})))
            rep.witness_oracle.fail(where + ": step " + std::to_string(i + 1));
        }
      }
    }
  }
  ++rep.duality.checked;
  if (solver.exists(duality_transport(q)) != decision) rep.duality.fail(where);
  if (q.source.is_semistable()) {
    ++rep.basic_agreement.checked;
    if (semistable_modification_exists(q) != minuscule_bruhat_holds(q) && q.degree() >= 0 && q.degree() <= q.rank())
      rep.basic_agreement.fail(where);
  } else if (has_separated_slopes(q.source)) {
    ++rep.explicit_agreement.checked;
    if (explicit_criterion(q) != decision) rep.explicit_agreement.fail(where);
  }
}

inline CorpusReport check_corpus(ModificationSolver& solver, const oracle::CorpusSpec& spec) {
  CorpusReport rep;
  oracle::for_each_corpus_query(spec, [&](const ModificationQuery& q) {
    try {
      check_query(solver, q, rep);
    } catch (const std::exception& e) {
      rep.replay.fail(query_literal(q) + ": exception: " + e.what());
    }
  });
  return rep;
}

}  // namespace nstrata::properties
