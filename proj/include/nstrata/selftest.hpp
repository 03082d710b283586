#pragma once

// The property corpus behind `nstrata selftest`.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "nstrata/literal.hpp"
#include "nstrata/properties.hpp"

namespace nstrata {

struct SelfTestOptions {
  std::int64_t max_rank = 4;
  std::int64_t max_denominator = 3;
  /// Fault injection; see SolverOptions::skip_extension_check.
  bool skip_extension_check = false;
};

struct SelfTestSummary {
  std::uint64_t queries = 0;
  std::vector<properties::Tally> tallies;

  bool ok() const {
    for (const auto& t : tallies)
      if (!t.ok()) return false;
    return true;
  }
};

namespace selftest_detail {

struct Regression {
  const char* name;
  const char* source;
  const char* target;
  bool expected;
};

// Worked examples with known answers.
inline const std::vector<Regression>& regressions() {
  static const std::vector<Regression> r{
      {"GL_8 worked example", "2/3^3,3/5^5", "1/4^4,0^4", true},
      {"necessary inequalities are not sufficient", "4/3^3,3/4^4", "1^2,1/3^3,0^2", false},
      {"no common breakpoints", "5/4^4,3/4^4", "3/5^5,1/3^3", true},
  };
  return r;
}

}  // namespace selftest_detail

inline SelfTestSummary run_selftest(const SelfTestOptions& opt, std::ostream& log) {
  SelfTestSummary summary;
  const std::int64_t max_rank = std::max<std::int64_t>(opt.max_rank, 1);
  const std::int64_t max_den = std::max<std::int64_t>(opt.max_denominator, 1);

  SolverOptions so;
  so.skip_extension_check = opt.skip_extension_check;
  ModificationSolver solver(so);

  properties::Tally regress{"worked examples"};
  for (const auto& r : selftest_detail::regressions()) {
    ModificationQuery q{parse_polygon(r.source), parse_polygon(r.target)};
    ++regress.checked;
    CertificatePtr c = solver.find(q);
    if ((c != nullptr) != r.expected)
      regress.fail(std::string(r.name) + ": " + properties::query_literal(q) + " expected " +
                   (r.expected ? "NONEMPTY" : "EMPTY"));
    else if (c) {
      if (auto err = verify_certificate(*c)) regress.fail(std::string(r.name) + ": " + *err);
    }
  }
  summary.tallies.push_back(regress);

  const std::vector<Slope> unit_grid = oracle::slope_grid(Rational(0), Rational(1), max_den);
  const std::int64_t lemma_rank = std::min<std::int64_t>(max_rank, 4);
  summary.tallies.push_back(properties::rearrangement_maximality(unit_grid, lemma_rank));
  summary.tallies.push_back(properties::direct_sum_monotonicity(unit_grid, lemma_rank));
  summary.tallies.push_back(
      properties::sum_inequality(oracle::slope_grid(Rational(0), Rational(1), std::min<std::int64_t>(max_den, 2)),
                                 std::min<std::int64_t>(max_rank, 3)));
  summary.tallies.push_back(properties::concavity_counterexample());

  oracle::CorpusSpec enum_spec{std::min<std::int64_t>(max_rank, 5), max_den, Rational(-1), Rational(1)};
  summary.tallies.push_back(properties::enumeration_agreement(enum_spec, enum_spec.max_rank, 3));

  oracle::CorpusSpec spec{max_rank, max_den, Rational(-1), Rational(1)};
  summary.tallies.push_back(properties::permutation_agreement(spec, std::min<std::int64_t>(max_rank + 1, 7), 500, 1));

  properties::CorpusReport rep = properties::check_corpus(solver, spec);
  summary.queries = rep.queries + regress.checked;
  for (const auto* t : rep.tallies()) summary.tallies.push_back(*t);

  for (const auto& t : summary.tallies) {
    log << (t.ok() ? "PASS " : "FAIL ") << t.name << " (" << t.checked << " cases)\n";
    if (t.failure) log << "  counterexample: " << *t.failure << "\n";
  }
  log << "queries: " << summary.queries << " (" << rep.positives << " nonempty)\n";
  log << (summary.ok() ? "selftest passed" : "selftest FAILED") << "\n";
  return summary;
}

}  // namespace nstrata
