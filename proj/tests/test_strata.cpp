#include <gtest/gtest.h>

#include <set>
#include <string>
#include <thread>
#include <vector>

#include "nstrata/literal.hpp"
#include "nstrata/oracle.hpp"
#include "nstrata/replay.hpp"
#include "nstrata/strata.hpp"

using namespace nstrata;

namespace {

ConcavePolygon P(const char* s) { return parse_polygon(s); }
ModificationQuery Q(const char* e, const char* t) { return {P(e), P(t)}; }
DominantCocharacter Mu(std::vector<std::int64_t> e) { return DominantCocharacter(std::move(e)); }

}  // namespace

TEST(BasicStratum, Examples) {
  EXPECT_TRUE(basic_stratum_nonempty(P("2/3^3"), Mu({1, 1, 1}), P("-1/3^3")));
  EXPECT_TRUE(basic_stratum_nonempty(P("3/5^5"), Mu({1, 0, 0, 0, 0}), P("1/2^4,0")));
  EXPECT_TRUE(basic_stratum_nonempty(P("1/2^4"), Mu({0, 0, 0, 0}), P("1/2^4")));
  EXPECT_FALSE(basic_stratum_nonempty(P("1/2^2"), Mu({1, 0}), P("1,-1")));
  EXPECT_THROW(basic_stratum_nonempty(P("1,0"), Mu({1, 0}), P("0^2")), PreconditionError);
}

TEST(BasicStratum, NonMinusculeMu) {
  // b = 0^2, mu = (2, 0): b + dual(mu) = (0, -2) dominates exactly the concave
  // polygons of degree -2 with first slope <= 0.
  EXPECT_TRUE(basic_stratum_nonempty(P("0^2"), Mu({2, 0}), P("0,-2")));
  EXPECT_TRUE(basic_stratum_nonempty(P("0^2"), Mu({2, 0}), P("-1^2")));
  EXPECT_FALSE(basic_stratum_nonempty(P("0^2"), Mu({2, 0}), P("1,-3")));
}

TEST(SemistableModification, Examples) {
  EXPECT_TRUE(semistable_modification_exists(Q("5/4^4", "1/4^4")));
  EXPECT_TRUE(semistable_modification_exists(Q("1/3^3", "1/3^3")));
  // (1)^2 (+) (d) sits below (4/3)^3 only for d >= 1/3; with d <= 4/3 an
  // integer that leaves d = 1.
  for (std::int64_t d = -3; d <= 3; ++d) {
    ConcavePolygon t = direct_sum(P("1^2"), ConcavePolygon::semistable(Rational(d), 1));
    EXPECT_EQ(semistable_modification_exists({P("4/3^3"), t}), d == 1) << d;
  }
  EXPECT_THROW(semistable_modification_exists(Q("1,0", "0^2")), PreconditionError);
}

TEST(Necessity, BothInequalities) {
  ModificationQuery q = Q("4/3^3,3/4^4", "1^2,1/3^3,0^2");
  EXPECT_EQ(q.degree(), 4);
  EXPECT_TRUE(minuscule_bruhat_holds(q));
  EXPECT_TRUE(slopewise_sandwich_holds(q));
  EXPECT_TRUE(necessity_holds(q));
  EXPECT_FALSE(necessity_holds(Q("1^2", "-1^2")));  // d = 4 > 2
}

TEST(Solver, GL8Example) {
  ModificationSolver solver;
  auto cert = solver.find(Q("2/3^3,3/5^5", "1/4^4,0^4"));
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->kind, Certificate::Kind::inductive);
  EXPECT_EQ(cert->top, P("2/3^3"));
  EXPECT_EQ(cert->rest, P("3/5^5"));
  EXPECT_FALSE(verify_certificate(*cert).has_value());
}

// The pair chosen in the worked example also satisfies every condition.
TEST(Solver, GL8ReferencePairSatisfiesConditions) {
  ConcavePolygon a2 = P("-1/3^3"), c2 = P("1/2^4,0");
  EXPECT_TRUE(semistable_modification_exists({P("2/3^3"), a2}));
  EXPECT_TRUE(semistable_modification_exists({P("3/5^5"), c2}));
  EXPECT_TRUE(extension_exists(a2, P("1/4^4,0^4"), c2));
}

TEST(Solver, CounterexampleIsEmpty) {
  EXPECT_FALSE(minuscule_modification_exists(Q("4/3^3,3/4^4", "1^2,1/3^3,0^2")));
}

TEST(Solver, NoCommonBreakpoints) {
  auto cert = minuscule_modification_exists(Q("5/4^4,3/4^4", "3/5^5,1/3^3"));
  ASSERT_TRUE(cert);
  EXPECT_FALSE(verify_certificate(*cert).has_value());
  // The documented pair works as well.
  EXPECT_TRUE(semistable_modification_exists(Q("5/4^4", "1/4^4")));
  EXPECT_TRUE(extension_exists(P("1/4^4"), P("3/5^5,1/3^3"), P("3/4^4")));
}

TEST(Solver, DegreeOutOfRange) {
  ModificationSolver solver;
  EXPECT_TRUE(solver.exists(Q("1,0", "1,0")));
  EXPECT_FALSE(solver.exists(Q("1,0", "1^2")));   // d = -1
  EXPECT_FALSE(solver.exists(Q("1,0", "-1^2")));  // d = 3 > 2
}

TEST(Solver, IdentityCertificate) {
  auto cert = minuscule_modification_exists(Q("1,0", "1,0"));
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->kind, Certificate::Kind::identity);
}

TEST(Solver, RankMismatch) { EXPECT_THROW(minuscule_modification_exists(Q("1,0", "1")), PolygonError); }

TEST(Solver, MemoizationDoesNotChangeAnswers) {
  oracle::CorpusSpec spec{3, 2, Rational(-1), Rational(1)};
  ModificationSolver memo;
  ModificationSolver plain({.memoize = false, .necessity_filter = false});
  int n = 0;
  oracle::for_each_corpus_query(spec, [&](const ModificationQuery& q) {
    ++n;
    EXPECT_EQ(memo.exists(q), plain.exists(q)) << q.source.to_string() << " / " << q.target.to_string();
  });
  EXPECT_GT(n, 100);
  EXPECT_GT(memo.memo_size(), 0u);
}

TEST(Solver, ConcurrentUseAgrees) {
  oracle::CorpusSpec spec{3, 2, Rational(-1), Rational(1)};
  auto queries = oracle::corpus(spec);
  ModificationSolver serial;
  std::vector<char> expect;
  for (const auto& q : queries) expect.push_back(serial.exists(q));
  ModificationSolver shared;
  std::vector<char> got(queries.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = static_cast<std::size_t>(t); i < queries.size(); i += 4) got[i] = shared.exists(queries[i]);
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(got, expect);
}

TEST(Explicit, Examples) {
  EXPECT_THROW(explicit_criterion(Q("2/3^3,3/5^5", "1/4^4,0^4")), PreconditionError);
  EXPECT_THROW(explicit_criterion(Q("5/4^4,3/4^4", "3/5^5,1/3^3")), PreconditionError);
  EXPECT_TRUE(explicit_criterion(Q("1/2^2", "1/2^2")));

  ModificationQuery q = Q("3^2,0^3", "2^2,0^2,-1");
  EXPECT_EQ(q.degree(), 3);
  EXPECT_TRUE(minuscule_bruhat_holds(q));
  EXPECT_TRUE(slopewise_sandwich_holds(q));
  EXPECT_EQ(breakpoints(q.target), (std::vector<std::int64_t>{2, 4}));
  EXPECT_TRUE(explicit_criterion(q));
  EXPECT_EQ(explicit_criterion(q), minuscule_modification_exists(q) != nullptr);

  ConcavePolygon e = P("3^2,0^3");
  int positives = 0, negatives = 0;
  for (std::int64_t deg = e.degree() - 5; deg <= e.degree(); ++deg) {
    EnumerationBounds b{5, deg, Rational(3), Rational(-1), std::nullopt, std::nullopt};
    for (const auto& t : enumerate_concave(b)) {
      const bool x = explicit_criterion({e, t});
      EXPECT_EQ(x, minuscule_modification_exists({e, t}) != nullptr) << t.to_string();
      (x ? positives : negatives)++;
    }
  }
  EXPECT_GT(positives, 10);
  EXPECT_GT(negatives, 10);
}

TEST(Duality, Examples) {
  ModificationQuery id = Q("1,0", "1,0");
  ModificationQuery t = duality_transport(id);
  EXPECT_EQ(t.source, P("1,0"));
  EXPECT_EQ(t.target, P("0,-1"));
  EXPECT_EQ(t.degree(), 2);
  EXPECT_TRUE(minuscule_modification_exists(t));

  EXPECT_TRUE(minuscule_modification_exists(duality_transport(Q("2/3^3,3/5^5", "1/4^4,0^4"))));
  EXPECT_FALSE(minuscule_modification_exists(duality_transport(Q("4/3^3,3/4^4", "1^2,1/3^3,0^2"))));
  // Transport twice is a twist by -1 on both sides.
  ModificationQuery q = Q("2/3^3,3/5^5", "1/4^4,0^4");
  ModificationQuery tt = duality_transport(duality_transport(q));
  EXPECT_EQ(tt.source, shift(q.source, -1));
  EXPECT_EQ(tt.target, shift(q.target, -1));
}

TEST(ReduceToStandard, Examples) {
  ConcavePolygon b = P("1/2^2,0^2");
  ConcavePolygon bp = P("1/4^4");
  auto r0 = reduce_to_standard({b, MinusculeCocharacter(4, 2).dominant(), bp});
  ASSERT_TRUE(r0.valid);
  EXPECT_EQ(r0.shift, 0);
  EXPECT_EQ(r0.query.target, bp);
  EXPECT_EQ(r0.mu->degree, 2);

  auto r1 = reduce_to_standard({b, Mu({2, 2, 1, 1}), bp});
  ASSERT_TRUE(r1.valid);
  EXPECT_EQ(r1.shift, 1);
  EXPECT_EQ(r1.mu->degree, 2);
  EXPECT_EQ(r1.query.target, P("5/4^4"));

  auto rm = reduce_to_standard({b, Mu({0, 0, -1, -1}), bp});
  ASSERT_TRUE(rm.valid);
  EXPECT_EQ(rm.mu->degree, 2);
  EXPECT_EQ(rm.query.target, P("-3/4^4"));

  EXPECT_FALSE(reduce_to_standard({b, Mu({2, 0, 0, 0}), bp}).valid);
}

TEST(StratumNonempty, Examples) {
  ModificationSolver solver;
  EXPECT_TRUE(solver.stratum_nonempty({P("2/3^3,3/5^5"), MinusculeCocharacter(8, 4).dominant(), P("1/4^4,0^4")}));
  // Degree bookkeeping: deg(mu) must equal deg(b) - deg(b').
  EXPECT_FALSE(solver.stratum_nonempty({P("2/3^3,3/5^5"), MinusculeCocharacter(8, 3).dominant(), P("1/4^4,0^4")}));
  auto id = solver.stratum_nonempty({P("1,0"), Mu({0, 0}), P("1,0")});
  ASSERT_TRUE(id);
  EXPECT_EQ(id->kind, Certificate::Kind::identity);
  // A shifted cocharacter with the same standard form.
  EXPECT_TRUE(solver.stratum_nonempty({P("2/3^3,3/5^5"), Mu({2, 2, 2, 2, 1, 1, 1, 1}), P("-3/4^4,-1^4")}));
  EXPECT_THROW(solver.stratum_nonempty({P("1,0"), Mu({2, 0}), P("1,0")}), PreconditionError);
}

TEST(EnumerateStrata, Examples) {
  auto lits = [](const auto& v) {
    std::vector<std::string> out;
    for (const auto& [p, c] : v) out.push_back(p.to_string());
    return out;
  };
  EXPECT_EQ(lits(enumerate_nonempty_strata(P("1^2"), MinusculeCocharacter(2, 1))),
            (std::vector<std::string>{"1,0", "1/2^2"}));
  EXPECT_EQ(lits(enumerate_nonempty_strata(P("0"), MinusculeCocharacter(1, 1))), (std::vector<std::string>{"-1"}));
  auto gl8 = lits(enumerate_nonempty_strata(P("2/3^3,3/5^5"), MinusculeCocharacter(8, 4)));
  EXPECT_NE(std::find(gl8.begin(), gl8.end(), "1/4^4,0^4"), gl8.end());
  EXPECT_EQ(std::set<std::string>(gl8.begin(), gl8.end()).size(), gl8.size());
}

TEST(EnumerateStrata, EveryListedStratumVerifies) {
  for (const auto& [bp, cert] : enumerate_nonempty_strata(P("2/3^3,3/5^5"), MinusculeCocharacter(8, 4))) {
    ASSERT_TRUE(cert);
    EXPECT_EQ(cert->target, bp);
    EXPECT_FALSE(verify_certificate(*cert).has_value()) << bp.to_string();
  }
}

TEST(Replay, RejectsTamperedCertificates) {
  auto cert = minuscule_modification_exists(Q("2/3^3,3/5^5", "1/4^4,0^4"));
  ASSERT_TRUE(cert);

  Certificate wrong_top = *cert;
  wrong_top.top_modified = P("2/3^3");
  EXPECT_TRUE(verify_certificate(wrong_top).has_value());

  Certificate broken_chain = *cert;
  broken_chain.extension.steps.pop_back();
  EXPECT_TRUE(verify_certificate(broken_chain).has_value());

  Certificate wrong_degree = *cert;
  wrong_degree.degree = 3;
  EXPECT_TRUE(verify_certificate(wrong_degree).has_value());

  Certificate flipped = *cert;
  for (auto& t : flipped.extension.steps.front().tags)
    t = t == SlopeSource::kernel ? SlopeSource::quotient : SlopeSource::kernel;
  EXPECT_TRUE(verify_certificate(flipped).has_value());
}

TEST(Mutation, SkippingTheExtensionCheckIsCaught) {
  ModificationSolver broken({.skip_extension_check = true});
  ModificationQuery q = Q("4/3^3,3/4^4", "1^2,1/3^3,0^2");
  auto cert = broken.find(q);
  ASSERT_TRUE(cert);  // wrong answer
  EXPECT_TRUE(verify_certificate(*cert).has_value());
}
