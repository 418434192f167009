#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "cyclic3/verify.hpp"

using namespace cyclic3;

namespace {

std::string number(const ProbeReport& r, const std::string& key) {
  for (const auto& [k, v] : r.numbers) {
    if (k == key) return v;
  }
  return "";
}

// Oracle: S_p(Y) straight from the definition, one label per coprime pair,
// the symbol taken through the label's 3-split factorization.
EisensteinInteger char_sum_by_pairs(i64 p, i64 Y) {
  EisensteinInteger s{1};
  for (i64 n = 2; n <= Y; ++n) {
    std::vector<i64> qs;
    bool ok = true;
    for (const auto& [q, e] : factorize(n)) {
      if (e > 1 || q % 3 != 1) ok = false;
      qs.push_back(q);
    }
    if (!ok) continue;
    for (std::size_t mask = 0; mask < (std::size_t{1} << qs.size()); ++mask) {
      i64 d1 = 1, d2 = 1;
      for (std::size_t i = 0; i < qs.size(); ++i) ((mask >> i) & 1U ? d2 : d1) *= qs[i];
      s += paper_chi(p, FieldLabel{0, d1, d2}).to_eisenstein();
    }
  }
  return s;
}

// Oracle: roots of x^3 - 3Ax - B mod 3^k by exhaustive evaluation.
i64 roots_mod_power_of_three(i64 A, i64 B, int k) {
  const i64 m = ipow(3, k);
  i64 n = 0;
  for (i64 x = 0; x < m; ++x) {
    const i128 v = (static_cast<i128>(x) * x * x - 3 * static_cast<i128>(A) * x - B) % m;
    if (v == 0) ++n;
  }
  return n;
}

}  // namespace

TEST(Oracle, SpecExamples) {
  EXPECT_EQ(polynomial_splitting_oracle(13, DefiningPolynomial{7, 35}), SplittingType::inert());
  EXPECT_EQ(polynomial_root_count(7, 35, 13), 0);
  EXPECT_EQ(polynomial_splitting_oracle(17, FieldLabel{1, 1, 1}), SplittingType::split());
  EXPECT_EQ(polynomial_root_count(3, 9, 17), 3);
  EXPECT_FALSE(polynomial_splitting_oracle(7, parse_label(7)).has_value());
  EXPECT_FALSE(polynomial_splitting_oracle(3, parse_label(7)).has_value());
}

TEST(Oracle, NonGaloisCubicIsAnAnomaly) {
  // x^3 - 3x - 4 has exactly one root mod 7.
  EXPECT_EQ(polynomial_root_count(1, 4, 7), 1);
  EXPECT_THROW(polynomial_splitting_oracle(7, DefiningPolynomial{1, 4}), OracleAnomaly);
}

TEST(Oracle, EquivalenceOnConductorsUpTo200) {
  const ProbeReport r = splitting_oracle_equivalence(200, 500);
  EXPECT_EQ(r.status, ProbeStatus::Pass) << r.text();
  EXPECT_EQ(number(r, "mismatches"), "0");
  EXPECT_GT(std::stol(number(r, "checked")), 1000);
}

TEST(Oracle, FaultInjectionIsCaught) {
  const ProbeReport r = fault_injection_probe();
  EXPECT_EQ(r.status, ProbeStatus::Pass) << r.text();
  EXPECT_EQ(number(r, "inner_status"), "FAIL");
  EXPECT_NE(number(r, "mismatches"), "0");
}

TEST(ChoiceInvariance, KummerPassesOnThousandPairs) {
  const std::vector<LabelPrime> pairs = sample_label_primes(1000);
  ASSERT_EQ(pairs.size(), 1000U);
  const ProbeReport r = choice_invariance_probe(pairs, LambdaMode::Kummer);
  EXPECT_EQ(r.status, ProbeStatus::Pass);
  EXPECT_EQ(number(r, "failures"), "0");
}

TEST(ChoiceInvariance, PaperLiteralAgreesAtInertBasePrimes) {
  std::vector<LabelPrime> inert;
  for (const LabelPrime& lp : sample_label_primes(1000)) {
    if (lp.p % 3 == 2) inert.push_back(lp);
  }
  ASSERT_FALSE(inert.empty());
  const ProbeReport r = choice_invariance_probe(inert, LambdaMode::PaperLiteral);
  EXPECT_EQ(r.status, ProbeStatus::Pass);
  EXPECT_EQ(number(r, "findings"), "0");
}

TEST(ChoiceInvariance, SampleIsDeterministic) {
  const auto a = sample_label_primes(50), b = sample_label_primes(50);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].label, b[i].label);
    EXPECT_EQ(a[i].p, b[i].p);
  }
}

TEST(PaperLiteral, DiscrepanciesForSevenAreFindings) {
  const ProbeReport r = paper_literal_discrepancy(parse_label(7), 100);
  EXPECT_EQ(r.status, ProbeStatus::Finding);
  EXPECT_FALSE(r.rows.empty());
  bool saw43 = false;
  for (const auto& row : r.rows) {
    EXPECT_EQ(std::stol(row[0]) % 3, 1);
    if (row[3] != "gated") {
      EXPECT_EQ(row[3], row[2]) << "oracle sides with Kummer at p=" << row[0];
    }
    if (row[0] == "43") saw43 = true;
  }
  EXPECT_TRUE(saw43);
}

TEST(Ramification, CubeSearchBasics) {
  // Every residue is a cube mod lambda; cubes stay cubes at every level.
  for (i64 a = -4; a <= 4; ++a) {
    for (i64 b = -4; b <= 4; ++b) EXPECT_TRUE(is_cube_mod_lambda_power({a, b}, 1));
  }
  for (const EisensteinInteger z : {EisensteinInteger(2, 3), EisensteinInteger(-1, 3), EisensteinInteger(5, 1)}) {
    EXPECT_TRUE(is_cube_mod_lambda_power(z * z * z, 8));
  }
  EXPECT_TRUE(is_cube_mod_lambda_power(EisensteinInteger(1) + pow(EisensteinInteger::lambda(), 3), 3));
  EXPECT_THROW(is_cube_mod_lambda_power(EisensteinInteger(1), 0), DomainError);
}

TEST(Ramification, LiftingMatchesExhaustiveCount) {
  for (const FieldLabel& l : calibration_corpus(20)) {
    const DefiningPolynomial poly = defining_polynomial(l);
    const std::vector<i64> c = root_counts_mod_3k(poly.A, poly.B, 7);
    for (int k = 1; k <= 7; ++k) EXPECT_EQ(c[static_cast<std::size_t>(k - 1)], roots_mod_power_of_three(poly.A, poly.B, k)) << l;
  }
}

TEST(Ramification, ProbesAgreeOnCalibrationCorpus) {
  const std::vector<FieldLabel> corpus = calibration_corpus(50);
  ASSERT_EQ(corpus.size(), 50U);
  for (const FieldLabel& l : corpus) EXPECT_NE(l.D() % 3, 0);
  const int k = calibrate_cube_level(corpus);
  EXPECT_GE(k, 3);
  EXPECT_LE(k, 8);
  for (const FieldLabel& l : corpus) EXPECT_FALSE(ramification_audit_at_3(l, k).failed()) << l;
  const ProbeReport seven = ramification_audit_at_3(parse_label(7), k);
  EXPECT_EQ(number(seven, "split_probe_i"), number(seven, "split_probe_ii"));
}

TEST(Ramification, SkipWhenThreeDividesD) {
  const ProbeReport r = ramification_audit_at_3(FieldLabel{1, 1, 1}, 4);
  EXPECT_EQ(r.status, ProbeStatus::Pass);
  EXPECT_EQ(number(r, "skipped"), "3 divides D");
}

TEST(IdealCounts, SpecExamples) {
  EXPECT_EQ(ideal_count(parse_label(7), 1), 1);
  EXPECT_EQ(ideal_count(FieldLabel{1, 1, 1}, 17), 3);
  EXPECT_EQ(ideal_count(FieldLabel{1, 1, 1}, 17 * 17), 6);
  EXPECT_EQ(ideal_count(parse_label(7), 7), 1);
}

TEST(IdealCounts, CrossCheckOnTenLabels) {
  for (i64 D : {7, 9, 13, 19, 21, 31, 61, 63, 91, 133}) {
    const ProbeReport r = ideal_count_crosscheck(parse_label(D), 10000);
    EXPECT_EQ(r.status, ProbeStatus::Pass) << D;
    EXPECT_EQ(number(r, "mismatches"), "0");
  }
  EXPECT_THROW(ideal_count_crosscheck(parse_label(7), 200000), DomainError);
}

TEST(IdealCounts, PrimeValuesFromRootCounts) {
  const FieldLabel l = parse_label(19);
  const DefiningPolynomial poly = defining_polynomial(l);
  for (i64 p : primes_up_to(400)) {
    if (!oracle_applicable(poly, p)) continue;
    EXPECT_EQ(ideal_count(l, p), polynomial_root_count(poly.A, poly.B, p)) << p;
  }
}

TEST(CharSum, SpecExamples) {
  EXPECT_EQ(char_sum(13, 10).value, EisensteinInteger(0));
  for (i64 p : {2, 5, 7, 13, 31, 101}) EXPECT_EQ(char_sum(p, 1).value, EisensteinInteger(1));
  EXPECT_THROW(char_sum(3, 10), DomainError);
}

TEST(CharSum, MatchesPairEnumeration) {
  for (i64 p : {2, 5, 7, 13, 31}) {
    for (i64 Y : {10, 100, 500, 1500}) EXPECT_EQ(char_sum(p, Y).value, char_sum_by_pairs(p, Y)) << p << " " << Y;
  }
}

TEST(CharSum, ValuesAreRationalIntegers) {
  // Each prime contributes chi + chi^2, which is 2, -1 or 0.
  for (i64 p : {2, 5, 7, 13, 31}) {
    for (const CharSum& c : char_sums(p, log_grid(100000))) EXPECT_EQ(c.value.b(), 0) << p << " " << c.Y;
  }
}

TEST(CharSum, ConjugatingTheWholeRegistry) {
  for (i64 p : {7, 13}) {
    PrimeRegistry all = default_registry();
    for (i64 q : primes_up_to(1000)) {
      if (q % 3 == 1) all = all.with_conjugate_at(q);
    }
    for (i64 Y : {10, 100, 1000}) {
      EXPECT_EQ(char_sum(p, Y, all).value, char_sum(p, Y).value.conjugate()) << p << " " << Y;
    }
  }
}

TEST(CharSum, ConjugatingOnlyThePrimeAtPChangesTheSum) {
  // chi(pi_q) = 1 and chi(conj pi_q) = 1 differ when q is not a cube mod p,
  // so swapping only P at p is not a conjugation of S_p.
  const PrimeRegistry alt = default_registry().with_conjugate_at(7);
  EXPECT_EQ(char_sum(7, 100).value, EisensteinInteger(0));
  EXPECT_EQ(char_sum(7, 100, alt).value, EisensteinInteger(-3));
  for (i64 Y : {10, 100, 1000}) {
    const CharSum s = char_sum(7, Y, alt);
    EXPECT_EQ(s.value.b(), 0);
  }
}

TEST(CharSum, GridAndExponent) {
  const std::vector<i64> g = log_grid(100000);
  EXPECT_EQ(g.front(), 1);
  EXPECT_EQ(g.back(), 100000);
  EXPECT_EQ(g.size(), 21U);
  for (i64 p : {7, 13, 31}) EXPECT_LE(fitted_exponent(char_sums(p, g)), 1.1);
}

TEST(CharSum, NormalizedDecadeMaximaDecreaseAtTheTop) {
  for (i64 p : {7, 13, 31}) {
    const std::vector<double> m = normalized_decade_maxima(p, 5);
    ASSERT_EQ(m.size(), 5U);
    EXPECT_GE(m[3], m[4]) << p;
    EXPECT_GE(m[2], m[3]) << p;
  }
}

TEST(Genseries, InertBasePrimeClosesTheGap) {
  const ProbeReport r = genseries_compare(5, 2.0, 1'000'000);
  EXPECT_EQ(r.status, ProbeStatus::Pass) << r.text();
  EXPECT_LT(std::stod(number(r, "gap")), 1e-6);
}

TEST(Genseries, SplitBasePrimeIsCauchyAndReported) {
  const ProbeReport r = genseries_compare(13, 2.0, 1'000'000);
  EXPECT_FALSE(r.failed()) << r.text();
  EXPECT_LT(std::stod(number(r, "lhs_step")), 1e-8);
  EXPECT_LT(std::stod(number(r, "rhs_step")), 1e-8);
  const GenseriesSides s = genseries_sides(13, 2.0, 100000);
  EXPECT_LT(std::fabs(s.rhs_imag), 1e-12);
}

TEST(Counts, SlopeAndBand) {
  const CountScaling c = family_count_scaling({1'000'000, 10'000'000, 100'000'000});
  EXPECT_GE(c.slope, 0.45);
  EXPECT_LE(c.slope, 0.55);
  const double first = static_cast<double>(c.counts.front().second) / 1000.0;
  for (const auto& [X, n] : c.counts) {
    EXPECT_NEAR(static_cast<double>(n) / std::sqrt(static_cast<double>(X)), first, 0.25 * first) << X;
  }
  EXPECT_EQ(enumerate_family(2000).size(), 3U);
}

TEST(Report, SummaryLineShape) {
  ProbeReport r;
  r.subject = "demo";
  r.note("a", 1);
  r.note("b", 0.5);
  r.finding();
  EXPECT_EQ(r.summary_line(), "demo FINDING a=1 b=0.5");
  r.fail();
  r.finding();
  EXPECT_TRUE(r.failed());
}
