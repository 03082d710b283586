#pragma once

// Independent re-verification of certificates. Everything here works on
// plain slope vectors with its own loops; none of the search code or the
// order predicates of polygon.hpp is consulted.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nstrata/certificate.hpp"

namespace nstrata {

namespace replay_detail {

using Slopes = std::vector<Slope>;

inline Slopes expand(const ConcavePolygon& p) {
  Slopes out;
  for (const auto& run : p.runs())
    for (std::int64_t i = 0; i < run.length; ++i) out.push_back(run.slope);
  return out;
}

inline Rational total(const Slopes& s) {
  Rational t;
  for (const auto& x : s) t += x;
  return t;
}

inline bool dominates_prefixwise(const Slopes& upper, const Slopes& lower) {
  if (upper.size() != lower.size()) return false;
  Rational a, b;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    a += upper[i];
    b += lower[i];
    if (a < b) return false;
  }
  return a == b;
}

inline bool contains_value(const Slopes& s, const Slope& v) { return std::find(s.begin(), s.end(), v) != s.end(); }

inline bool is_lattice_concave(const ConcavePolygon& p) {
  for (std::size_t i = 0; i < p.runs().size(); ++i) {
    const Run& r = p.runs()[i];
    if (r.length <= 0 || r.length % r.slope.den() != 0) return false;
    if (i > 0 && !(p.runs()[i - 1].slope > r.slope)) return false;
  }
  return true;
}

inline std::optional<std::string> check_sandwich(const ConcavePolygon& source, const ConcavePolygon& target) {
  Slopes e = expand(source), t = expand(target);
  if (e.size() != t.size()) return "sandwich: rank mismatch";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < t[i]) return "sandwich: E_" + std::to_string(i + 1) + " < E'_" + std::to_string(i + 1);
    if (e[i] > t[i] + Rational(1)) return "sandwich: E_" + std::to_string(i + 1) + " > E'_" + std::to_string(i + 1) + " + 1";
  }
  return std::nullopt;
}

inline std::optional<std::string> check_permutation_step(const ConcavePolygon& kernel, const ConcavePolygon& middle,
                                                         const ConcavePolygon& quotient, const PermutationWitness& w,
                                                         std::size_t step) {
  const std::string where = "extension step " + std::to_string(step + 1) + ": ";
  Slopes d = expand(kernel), e = expand(middle), f = expand(quotient);
  Slopes p = w.polygon.slopes();
  if (p.size() != e.size() || w.tags.size() != e.size()) return where + "witness length mismatch";
  Slopes pool = d;
  pool.insert(pool.end(), f.begin(), f.end());
  Slopes sorted_p = p;
  std::sort(pool.begin(), pool.end());
  std::sort(sorted_p.begin(), sorted_p.end());
  if (pool != sorted_p) return where + "witness is not a rearrangement of D (+) F";
  if (!dominates_prefixwise(p, e)) return where + "witness does not dominate HN(E)";
  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool from_kernel = w.tags[i] == SlopeSource::kernel;
    if (from_kernel && !contains_value(d, p[i])) return where + "slope tagged D does not occur in D";
    if (!from_kernel && !contains_value(f, p[i])) return where + "slope tagged F does not occur in F";
    if (p[i] < e[i] && !from_kernel) return where + "slope below HN(E) not from D at position " + std::to_string(i + 1);
    if (p[i] > e[i] && from_kernel) return where + "slope above HN(E) not from F at position " + std::to_string(i + 1);
  }
  return std::nullopt;
}

}  // namespace replay_detail

/// Replays a certificate; returns a description of the first failed check,
/// or nullopt when every condition re-verifies.
inline std::optional<std::string> verify_certificate(const Certificate& c) {
  using namespace replay_detail;
  if (!is_lattice_concave(c.source) || !is_lattice_concave(c.target)) return "inputs are not concave lattice polygons";
  Slopes e = expand(c.source), t = expand(c.target);
  if (e.empty() || e.size() != t.size()) return "rank mismatch";
  const Rational d = total(e) - total(t);
  if (d != Rational(c.degree)) return "recorded degree does not match deg(E) - deg(E')";
  if (c.degree < 0 || c.degree > static_cast<std::int64_t>(e.size())) return "degree outside [0, n]";

  switch (c.kind) {
    case Certificate::Kind::identity:
      if (e != t) return "identity certificate with E != E'";
      return std::nullopt;

    case Certificate::Kind::basic: {
      if (c.source.runs().size() != 1) return "basic certificate for non-semistable E";
      if (!c.sandwich_holds) return "basic certificate without sandwich";
      return check_sandwich(c.source, c.target);
    }

    case Certificate::Kind::inductive: {
      if (c.source.runs().size() < 2) return "inductive certificate for semistable E";
      // top must be the first run of E, rest the remaining runs.
      if (c.top.runs().size() != 1 || !(c.top.runs()[0] == c.source.runs()[0])) return "top is not the maximal-slope run";
      if (c.rest.runs() != std::vector<Run>(c.source.runs().begin() + 1, c.source.runs().end()))
        return "rest is not the complement of the top run";
      if (!is_lattice_concave(c.top_modified) || !is_lattice_concave(c.rest_modified))
        return "modified pieces are not concave lattice polygons";
      if (auto err = check_sandwich(c.top, c.top_modified)) return "top modification: " + *err;
      if (!c.sub) return "missing sub-certificate";
      if (!(c.sub->source == c.rest) || !(c.sub->target == c.rest_modified)) return "sub-certificate answers another query";
      if (auto err = verify_certificate(*c.sub)) return "sub-certificate: " + *err;

      const ExtensionWitness& w = c.extension;
      const auto& pieces = c.rest_modified.runs();
      if (w.chain.size() != pieces.size() + 1 || w.steps.size() != pieces.size()) return "extension chain has wrong length";
      if (!(w.chain.front() == c.top_modified)) return "extension chain does not start at the modified top";
      if (!(w.chain.back() == c.target)) return "extension chain does not end at E'";
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        const ConcavePolygon& prev = w.chain[i];
        const ConcavePolygon& next = w.chain[i + 1];
        if (!is_lattice_concave(next)) return "chain element is not a concave lattice polygon";
        ConcavePolygon piece = ConcavePolygon::from_runs({pieces[i]});
        if (prev.rank() + piece.rank() != next.rank()) return "chain rank bookkeeping fails";
        if (total(expand(prev)) + total(expand(piece)) != total(expand(next))) return "chain degree bookkeeping fails";
        if (auto err = check_permutation_step(prev, next, piece, w.steps[i], i)) return err;
      }
      return std::nullopt;
    }
  }
  return "unknown certificate kind";
}

}  // namespace nstrata
