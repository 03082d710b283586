// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Arithmetic is exact, so the only tolerances are the time limits
// below.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nstrata/cli.hpp"
#include "nstrata/literal.hpp"
#include "nstrata/oracle.hpp"
#include "nstrata/properties.hpp"
#include "nstrata/replay.hpp"
#include "nstrata/strata.hpp"

using namespace nstrata;

namespace {

constexpr double kLimitWorkedExample = 1.0;
constexpr double kLimitBasic = 60.0;
constexpr double kLimitExplicit = 300.0;
constexpr double kLimitDuality = 120.0;
constexpr double kLimitLemmas = 120.0;
constexpr double kLimitOracle = 300.0;

constexpr std::uint64_t kPermutationSamples = 10000;
constexpr std::uint64_t kPermutationSeed = 20240601;

ConcavePolygon P(const char* s) { return parse_polygon(s); }

// Criterion 9 collects every positive certificate seen by the other suites.
struct ReplayLedger {
  std::uint64_t replayed = 0;
  std::optional<std::string> failure;

  void check(const CertificatePtr& c, const std::string& where) {
    if (!c) return;
    ++replayed;
    if (auto err = verify_certificate(*c); err && !failure) failure = where + ": " + *err;
  }
};

ReplayLedger ledger;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, double limit, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit <= 0 || secs < limit;
  if (!in_time) o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit");
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] criterion %d: %s (%.3f s%s) %s\n", pass ? "PASS" : "FAIL", id, name, secs,
              limit > 0 ? (", limit " + std::to_string(static_cast<int>(limit)) + " s").c_str() : "",
              o.detail.c_str());
  std::fflush(stdout);
}

std::string query_text(const ModificationQuery& q) { return properties::query_literal(q); }

// Runs fn(i) for i in [0, n) on all hardware threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

Outcome gl8_example() {
  std::ostringstream out, err;
  int code = cli::run({"check", "--json", "--witness", "--b", "2/3^3,3/5^5", "--mu", "min:8:4", "--bprime",
                       "1/4^4,0^4"},
                      out, err);
  if (code != 0) return {false, "check exited " + std::to_string(code) + " " + err.str()};
  auto j = nlohmann::json::parse(out.str());
  if (j["decision"] != true || !j.contains("certificate")) return {false, "report lacks a positive certificate"};

  ModificationQuery q{P("2/3^3,3/5^5"), P("1/4^4,0^4")};
  CertificatePtr c = minuscule_modification_exists(q);
  if (!c) return {false, "engine says EMPTY"};
  ledger.check(c, query_text(q));
  if (auto e = verify_certificate(*c)) return {false, "replay: " + *e};
  if (c->kind != Certificate::Kind::inductive) return {false, "expected an inductive certificate"};
  const bool reference_pair = c->top_modified == P("-1/3^3") && c->rest_modified == P("1/2^4,0");
  return {true, "NONEMPTY; a' = " + c->top_modified.to_string() + ", c' = " + c->rest_modified.to_string() +
                    (reference_pair ? " (reference pair)" : " (replay verified)")};
}

Outcome counterexample() {
  ModificationQuery q{P("4/3^3,3/4^4"), P("1^2,1/3^3,0^2")};
  const bool decision = minuscule_modification_exists(q) != nullptr;
  const bool bruhat = minuscule_bruhat_holds(q);
  const bool sandwich = slopewise_sandwich_holds(q);
  std::ostringstream out, err;
  const int code =
      cli::run({"check", "--b", "4/3^3,3/4^4", "--mu", "min:7:4", "--bprime", "1^2,1/3^3,0^2"}, out, err);
  return {!decision && bruhat && sandwich && q.degree() == 4 && code == 1,
          std::string("decision ") + (decision ? "NONEMPTY" : "EMPTY") + ", Bruhat " + (bruhat ? "true" : "false") +
              ", sandwich " + (sandwich ? "true" : "false")};
}

Outcome no_common_breakpoints() {
  ModificationQuery q{P("5/4^4,3/4^4"), P("3/5^5,1/3^3")};
  CertificatePtr c = minuscule_modification_exists(q);
  ledger.check(c, query_text(q));
  auto be = breakpoints(q.source), bt = breakpoints(q.target);
  const bool contained = std::includes(bt.begin(), bt.end(), be.begin(), be.end());
  bool precondition_error = false;
  try {
    (void)explicit_criterion(q);
  } catch (const PreconditionError&) {
    precondition_error = true;
  }
  const Rational gap = q.source.runs()[0].slope - q.source.runs()[1].slope;
  return {c != nullptr && !contained && precondition_error && gap == Rational(1, 2) && !has_separated_slopes(q.source),
          std::string("decision ") + (c ? "NONEMPTY" : "EMPTY") + ", breakpoints contained " +
              (contained ? "yes" : "no") + ", gap " + gap.to_string()};
}

// Semistable b of rank n <= 5 and slope in [-1, 1]; every minuscule mu; every
// b' of the right degree with slopes in [slope(b) - 2, slope(b) + 1].
Outcome basic_formula() {
  std::uint64_t checked = 0, positives = 0;
  std::optional<std::string> failure;
  ModificationSolver solver;
  for (std::int64_t n = 1; n <= 5; ++n)
    for (std::int64_t deg = -n; deg <= n; ++deg) {
      const Rational lambda(deg, n);
      ConcavePolygon b = ConcavePolygon::semistable(lambda, n);
      for (std::int64_t d = 0; d <= n; ++d) {
        MinusculeCocharacter mu(n, d);
        EnumerationBounds bounds{n, deg - d, lambda + Rational(1), lambda - Rational(2), std::nullopt, std::nullopt};
        for_each_concave(bounds, [&](const ConcavePolygon& bp) {
          ++checked;
          ModificationQuery q{b, bp};
          const bool sandwich = semistable_modification_exists(q);
          const bool formula = basic_stratum_nonempty(b, mu.dominant(), bp);
          CertificatePtr c = solver.find(q);
          if (c) ++positives;
          ledger.check(c, query_text(q));
          if ((sandwich != formula || (c != nullptr) != formula) && !failure) failure = query_text(q);
        });
      }
    }
  if (failure) return {false, "disagreement at " + *failure};
  return {positives > 0 && positives < checked,
          std::to_string(checked) + " queries, " + std::to_string(positives) + " nonempty"};
}

// E of rank <= 6 with slopes in [-2, 2], denominators <= 3 and consecutive
// slopes more than 1 apart; E' over all concave polygons with denominators
// <= 3, slopes in [min E - 1, max E] and 0 <= d <= n.
Outcome explicit_vs_inductive() {
  std::vector<ModificationQuery> queries;
  const std::int64_t max_den = 3;
  for (std::int64_t n = 1; n <= 6; ++n) {
    oracle::CorpusSpec spec{n, max_den, Rational(-2), Rational(2)};
    for (const auto& e : oracle::corpus_polygons(spec, n)) {
      if (!has_separated_slopes(e)) continue;
      for (std::int64_t d = 0; d <= n; ++d) {
        EnumerationBounds b{n, e.degree() - d, e.max_slope(), e.min_slope() - Rational(1), std::nullopt, std::nullopt};
        for_each_concave(b, [&](const ConcavePolygon& t) {
          for (const auto& run : t.runs())
            if (run.slope.den() > max_den) return;
          queries.push_back({e, t});
        });
      }
    }
  }
  ModificationSolver solver;
  std::vector<char> mismatch(queries.size(), 0), positive(queries.size(), 0);
  std::vector<CertificatePtr> certs(queries.size());
  parallel_for(queries.size(), [&](std::size_t i) {
    CertificatePtr c = solver.find(queries[i]);
    positive[i] = c != nullptr;
    mismatch[i] = explicit_criterion(queries[i]) != positive[i];
    certs[i] = std::move(c);
  });
  std::uint64_t positives = 0, non_basic = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    ledger.check(certs[i], query_text(queries[i]));
    positives += positive[i];
    non_basic += !queries[i].source.is_semistable();
    if (mismatch[i]) return {false, "disagreement at " + query_text(queries[i])};
  }
  return {positives > 0 && non_basic > 0,
          std::to_string(queries.size()) + " queries (" + std::to_string(non_basic) + " with non-semistable E), " +
              std::to_string(positives) + " nonempty"};
}

// All (E, E') of rank <= 5 with slopes in [-1, 1] and denominators <= 5,
// plus every query of criterion 4.
Outcome duality() {
  auto queries = oracle::corpus(oracle::CorpusSpec{5, 5, Rational(-1), Rational(1)});
  for (std::int64_t n = 1; n <= 5; ++n)
    for (std::int64_t deg = -n; deg <= n; ++deg) {
      const Rational lambda(deg, n);
      ConcavePolygon b = ConcavePolygon::semistable(lambda, n);
      for (std::int64_t d = 0; d <= n; ++d) {
        EnumerationBounds bounds{n, deg - d, lambda + Rational(1), lambda - Rational(2), std::nullopt, std::nullopt};
        for_each_concave(bounds, [&](const ConcavePolygon& bp) { queries.push_back({b, bp}); });
      }
    }
  ModificationSolver solver;
  std::vector<char> bad(queries.size(), 0);
  std::vector<CertificatePtr> certs(queries.size()), dual_certs(queries.size());
  parallel_for(queries.size(), [&](std::size_t i) {
    certs[i] = solver.find(queries[i]);
    dual_certs[i] = solver.find(duality_transport(queries[i]));
    bad[i] = (certs[i] != nullptr) != (dual_certs[i] != nullptr);
  });
  std::uint64_t positives = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    ledger.check(certs[i], query_text(queries[i]));
    ledger.check(dual_certs[i], query_text(duality_transport(queries[i])));
    positives += certs[i] != nullptr;
    if (bad[i]) return {false, "asymmetric at " + query_text(queries[i])};
  }
  return {positives > 0, std::to_string(queries.size()) + " queries, " + std::to_string(positives) + " nonempty"};
}

// Maximality and monotonicity over all slopes in [0, 1] with denominators
// <= 4; the sum inequality over the grid {0, 1/4, 1/3, 1/2, 1}, which has
// every denominator up to 4.
Outcome lemmas() {
  const std::vector<Slope> grid = oracle::slope_grid(Rational(0), Rational(1), 4);
  const std::vector<Slope> sum_grid{Rational(0), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(1)};
  std::vector<properties::Tally> tallies(4);
  std::vector<std::function<properties::Tally()>> jobs{
      [&] { return properties::rearrangement_maximality(grid, 6); },
      [&] { return properties::direct_sum_monotonicity(grid, 6); },
      [&] { return properties::sum_inequality(sum_grid, 6); },
      [&] { return properties::concavity_counterexample(); },
  };
  parallel_for(jobs.size(), [&](std::size_t i) { tallies[i] = jobs[i](); });
  std::string detail;
  bool ok = true;
  for (const auto& t : tallies) {
    detail += (detail.empty() ? "" : "; ") + t.name + " " + std::to_string(t.checked);
    if (t.failure) {
      ok = false;
      detail += " FAILED at " + *t.failure;
    }
  }
  return {ok, detail};
}

Outcome oracle_equivalence() {
  properties::Tally perm;
  properties::Tally enumeration;
  std::thread a([&] {
    perm = properties::permutation_agreement(oracle::CorpusSpec{6, 3, Rational(-1), Rational(1)}, 7,
                                             kPermutationSamples, kPermutationSeed);
  });
  std::thread b([&] {
    enumeration = properties::enumeration_agreement(oracle::CorpusSpec{5, 5, Rational(-2), Rational(2)}, 5, 5);
  });
  a.join();
  b.join();
  std::string detail = std::to_string(perm.checked) + " permutation triples, " + std::to_string(enumeration.checked) +
                       " (rank, degree) enumerations";
  if (perm.failure) detail += "; permutation mismatch at " + *perm.failure;
  if (enumeration.failure) detail += "; enumeration mismatch at " + *enumeration.failure;
  return {perm.ok() && enumeration.ok() && perm.checked == kPermutationSamples, detail};
}

Outcome certificate_soundness() {
  if (ledger.failure) return {false, "replay failed: " + *ledger.failure};
  return {ledger.replayed > 0, std::to_string(ledger.replayed) + " certificates replayed"};
}

}  // namespace

int main() {
  report(1, "GL_8 worked example is nonempty with a verified certificate", kLimitWorkedExample, gl8_example);
  report(2, "necessary inequalities hold but the stratum is empty", kLimitWorkedExample, counterexample);
  report(3, "nonempty without common breakpoints; explicit criterion inapplicable", kLimitWorkedExample,
         no_common_breakpoints);
  report(4, "basic case agrees with the Bruhat formula (rank <= 5)", kLimitBasic, basic_formula);
  report(5, "explicit criterion equals the inductive engine (rank <= 6, gaps > 1)", kLimitExplicit,
         explicit_vs_inductive);
  report(6, "decision is invariant under duality transport (rank <= 5)", kLimitDuality, duality);
  report(7, "polygon lemmas (rank <= 6, denominators <= 4)", kLimitLemmas, lemmas);
  report(8, "optimized engines match brute-force oracles", kLimitOracle, oracle_equivalence);
  report(9, "every positive certificate replays", 0, certificate_soundness);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
