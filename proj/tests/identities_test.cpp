#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>

#include "twophoton/identities.hpp"

namespace twophoton {
namespace {

const RadialOracle& shared_oracle() {
  static const RadialOracle oracle{RadialGrid{}};
  return oracle;
}

TEST(MakeCheck, PassedMeansMaxResidualWithinTolerance) {
  EXPECT_TRUE(make_check("a", Source::closed_form, {0.1, 0.2}, {1e-10, -5e-10}, 1e-9).passed);
  EXPECT_FALSE(make_check("a", Source::closed_form, {0.1, 0.2}, {1e-10, -2e-9}, 1e-9).passed);
  EXPECT_FALSE(make_check("a", Source::closed_form, {0.1}, {std::numeric_limits<double>::quiet_NaN()}, 1e-9).passed);
}

TEST(MasterIdentity, ClosedFormTwentyPoints) {
  const auto xs = linspace(0.02, 0.36, 20);
  const IdentityCheck c = check_master_identity(xs, closed_form_source());
  EXPECT_EQ(c.residuals.size(), c.x_values.size());
  EXPECT_TRUE(c.passed) << c.max_residual();
  EXPECT_LT(c.max_residual(), 1e-9);
}

TEST(MasterIdentity, AtResonanceOnly) {
  EXPECT_LT(check_master_identity({kResonanceX}, closed_form_source()).max_residual(), 1e-12);
}

TEST(MasterIdentity, OracleTwentyPoints) {
  const IdentityCheck c = check_master_identity(linspace(0.02, 0.36, 20), oracle_source(shared_oracle()));
  EXPECT_EQ(c.source, Source::oracle);
  EXPECT_LT(c.max_residual(), 1e-6);
}

TEST(MasterIdentity, PrintedReadingFails) {
  const IdentityCheck c =
      check_master_identity(linspace(0.02, 0.36, 20), closed_form_source({ClosedFormReading::printed, true}));
  EXPECT_FALSE(c.passed);
}

TEST(ResonancePq, BothSources) {
  EXPECT_TRUE(check_resonance_pq(closed_form_source()).passed);
  EXPECT_TRUE(check_resonance_pq(oracle_source(shared_oracle())).passed);
}

TEST(AcStarkCheck, OracleResidual) {
  const IdentityCheck c = check_ac_stark({0.001, 0.05, 0.10, 0.15}, shared_oracle());
  EXPECT_TRUE(c.passed) << c.max_residual();
}

TEST(TwoColorCheck, NamedPoints) {
  const IdentityCheck c = check_two_color({7.0 / 20.0, kResonanceX, 0.30}, closed_form_source());
  EXPECT_LT(c.max_residual(), 1e-9);
}

TEST(TwoColorCheck, FiftyPoints) {
  EXPECT_TRUE(check_two_color(linspace(0.005, 0.37, 50), closed_form_source()).passed);
  EXPECT_TRUE(check_two_color(linspace(0.02, 0.355, 12), oracle_source(shared_oracle())).passed);
}

TEST(TwoColorCheck, SymmetricPointReducesToResonanceIdentity) {
  const AmplitudeSource src = closed_form_source();
  EXPECT_NEAR(two_color_residual(src, FrequencyX{kResonanceX}),
              2.0 * check_resonance_pq(src).residuals[0], 1e-13);
}

TEST(TwoColorCheck, RejectsOutOfWindow) {
  EXPECT_THROW(check_two_color({0.4}, closed_form_source()), DomainError);
}

TEST(DeltaLinearCheck, TwoHundredPoints) {
  EXPECT_TRUE(check_delta_linear(linspace(0.01, 0.37, 200), closed_form_source()).passed);
}

TEST(OnePhotonCheck, ThreeFrequencies) {
  EXPECT_TRUE(check_one_photon_ratio({0.1, 0.2, 0.3}, shared_oracle()).passed);
}

TEST(NonInvariance, OffResonanceDifferencesAreLarge) {
  for (double d : gauge_differences({0.10, 0.25})) EXPECT_GT(std::abs(d), 1e-2);
}

TEST(ReadingSelection, OraclePrefersDerivedReading) {
  const auto scores = score_readings(shared_oracle(), {0.05, 0.1, kResonanceX, 0.3});
  ASSERT_EQ(scores.size(), 3u);
  EXPECT_EQ(best_reading(scores), ClosedFormReading::derived);
  EXPECT_LT(scores[0].max_relative_deviation, 1e-8);
  EXPECT_GT(scores[1].max_relative_deviation, 1.0);
  EXPECT_GT(scores[2].max_relative_deviation, 1.0);
}

TEST(ConstantsTable, AllEntriesPass) {
  for (const auto& c : constants_table(codata2018())) EXPECT_TRUE(c.passed) << c.name;
}

TEST(Verification, StrictReportIsCompleteAndPasses) {
  const VerificationReport rep = run_verification({});
  std::set<std::string> names;
  for (const auto& c : rep.checks) names.insert(c.name);
  EXPECT_EQ(names, (std::set<std::string>{"master_identity", "resonance_pq", "ac_stark", "two_color", "delta_linear",
                                          "one_photon_ratio"}));
  EXPECT_EQ(rep.constants.size(), 4u);
  EXPECT_TRUE(rep.overall_pass);
  EXPECT_EQ(rep.constants_provenance, "CODATA-2018");
}

TEST(Verification, OracleProfilePasses) {
  VerifyConfig cfg;
  cfg.profile = VerifyProfile::oracle;
  EXPECT_TRUE(run_verification(cfg).overall_pass);
}

TEST(Verification, Deterministic) {
  const VerificationReport a = run_verification({});
  const VerificationReport b = run_verification({});
  ASSERT_EQ(a.checks.size(), b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    EXPECT_EQ(a.checks[i].residuals, b.checks[i].residuals) << a.checks[i].name;
  }
}

TEST(Verification, OverallIsConjunction) {
  VerifyConfig cfg;
  cfg.reading = ClosedFormReading::printed_factor;
  const VerificationReport rep = run_verification(cfg);
  EXPECT_FALSE(rep.overall_pass);
  bool any_failed = false;
  for (const auto& c : rep.checks) any_failed = any_failed || !c.passed;
  EXPECT_TRUE(any_failed);
}

TEST(Verification, TooFewStepsRejected) {
  VerifyConfig cfg;
  cfg.n_steps = 1;
  EXPECT_THROW(run_verification(cfg), DomainError);
}

}  // namespace
}  // namespace twophoton
