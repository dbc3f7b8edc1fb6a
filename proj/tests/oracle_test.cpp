#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "twophoton/closedform.hpp"
#include "twophoton/oracle.hpp"

namespace twophoton {
namespace {

const RadialOracle& shared_oracle() {
  static const RadialOracle oracle{RadialGrid{}};
  return oracle;
}

TEST(RadialGridTest, Validation) {
  EXPECT_THROW(validate(RadialGrid{1000, 80.0, 1e-6}), DomainError);
  EXPECT_THROW(validate(RadialGrid{6000, 50.0, 1e-6}), DomainError);
  EXPECT_THROW(validate(RadialGrid{6000, 80.0, 0.0}), DomainError);
  EXPECT_NO_THROW(validate(RadialGrid{}));
}

TEST(SolveBound, HydrogenLevels) {
  const auto& o = shared_oracle();
  EXPECT_NEAR(o.state_1s().energy, -0.5, 1e-8);
  EXPECT_NEAR(o.state_2s().energy, -0.125, 1e-8);
  EXPECT_NEAR(o.state_2p().energy, -0.125, 1e-8);
}

TEST(SolveBound, HigherLevels) {
  const LogMesh mesh(RadialGrid{});
  for (int n = 3; n <= 4; ++n) {
    for (int l = 0; l < 2; ++l) {
      const BoundState st = solve_bound(mesh, n, l);
      EXPECT_NEAR(st.energy, -0.5 / (n * n), 1e-8) << n << ' ' << l;
      EXPECT_EQ(st.nodes, n - l - 1);
    }
  }
}

TEST(SolveBound, NodesNormAndResidual) {
  const auto& o = shared_oracle();
  EXPECT_EQ(o.state_1s().nodes, 0);
  EXPECT_EQ(o.state_2s().nodes, 1);
  EXPECT_EQ(o.state_2p().nodes, 0);
  for (const BoundState* st : {&o.state_1s(), &o.state_2s(), &o.state_2p()}) {
    EXPECT_NEAR(st->norm, 1.0, 1e-10);
    EXPECT_LT(st->residual, 1e-8);
  }
}

TEST(SolveBound, MatchesAnalyticGroundState) {
  const auto& o = shared_oracle();
  const auto& u = o.state_1s().radial_values;
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = o.mesh().r(i);
    worst = std::max(worst, std::abs(u[i] - 2.0 * r * std::exp(-r)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(SolveBound, RejectsBadQuantumNumbers) {
  EXPECT_THROW(solve_bound(RadialGrid{}, 1, 1), DomainError);
  EXPECT_THROW(solve_bound(RadialGrid{}, 2, -1), DomainError);
}

TEST(Oracle, Orthogonality) { EXPECT_LT(std::abs(shared_oracle().overlap_2s_1s()), 1e-10); }

TEST(Oracle, RSquaredOverlap) {
  EXPECT_NEAR(shared_oracle().r2_overlap(), -512.0 * std::numbers::sqrt2 / 243.0, 1e-6);
  EXPECT_NEAR(shared_oracle().r2_expectation_1s(), 3.0, 1e-6);
}

TEST(Oracle, RSquaredOverlapStableUnderRefinement) {
  const RadialOracle fine(RadialGrid{12000, 80.0, 1e-6});
  EXPECT_LT(std::abs(fine.r2_overlap() - shared_oracle().r2_overlap()), 1e-8);
}

TEST(Oracle, VelocityDrivingOfGroundState) {
  // u' - u/r = -2 r e^{-r} for u = 2 r e^{-r}.
  const auto& o = shared_oracle();
  const auto d = o.velocity_driving(o.state_1s().radial_values);
  double worst = 0.0;
  for (std::size_t i = 10; i + 10 < d.size(); ++i) {
    const double r = o.mesh().r(i);
    worst = std::max(worst, std::abs(d[i] + 2.0 * r * std::exp(-r)));
  }
  EXPECT_LT(worst, 1e-8);
}

TEST(Oracle, CommutatorRelation) { EXPECT_LT(shared_oracle().commutator_residual(), 1e-8); }

TEST(Oracle, GreenSolveResidual) {
  const auto& o = shared_oracle();
  const auto drive = o.times_r(o.state_1s().radial_values);
  const GreenSolve gs = o.green_solve(drive, -0.5 + 0.1, 1);
  EXPECT_LT(gs.residual, 1e-8);
  EXPECT_EQ(gs.l_channel, 1);
  EXPECT_EQ(gs.solution.size(), drive.size());
}

TEST(Oracle, QAgreesWithClosedForm) {
  const auto& o = shared_oracle();
  EXPECT_NEAR(o.q(FrequencyX{kResonanceX}), -7.853655422, 1e-6);
  for (double x : {0.001, 0.05, 0.1, 0.25, 0.3}) {
    const double cf = q_length(FrequencyX{x});
    EXPECT_NEAR(o.q(FrequencyX{x}), cf, 1e-8 * std::abs(cf)) << x;
  }
}

TEST(Oracle, PAgreesWithClosedForm) {
  const auto& o = shared_oracle();
  EXPECT_NEAR(o.p(FrequencyX{kResonanceX}), 0.2761050734, 1e-6);
  for (double x : {0.001, 0.05, 0.1, 0.25, 0.3}) {
    const double cf = p_velocity(FrequencyX{x});
    EXPECT_NEAR(o.p(FrequencyX{x}), cf, 1e-8 * std::abs(cf)) << x;
  }
}

TEST(Oracle, LimitPathAgreesWithGrid) {
  const auto& o = shared_oracle();
  const FrequencyX x{5e-5};
  ASSERT_TRUE(q_length_detailed(x).cancellation_warning);
  EXPECT_NEAR(o.q(x), q_length(x), 1e-6 * std::abs(q_length(x)));
  EXPECT_NEAR(o.p(x), p_velocity(x), 1e-6 * std::abs(p_velocity(x)));
}

TEST(Oracle, BraKetSwapSymmetry) {
  const auto& o = shared_oracle();
  for (double x : {0.05, 0.2}) {
    EXPECT_NEAR(o.q_swapped(FrequencyX{x}), o.q(FrequencyX{x}), 1e-10 * std::abs(o.q(FrequencyX{x})));
  }
}

TEST(Oracle, RefinementChangesLittle) {
  const RadialOracle fine(RadialGrid{12000, 100.0, 1e-6});
  const FrequencyX x{0.1};
  EXPECT_NEAR(fine.q(x), shared_oracle().q(x), 1e-9 * std::abs(fine.q(x)));
  EXPECT_NEAR(fine.p(x), shared_oracle().p(x), 1e-9 * std::abs(fine.p(x)));
}

TEST(Oracle, OutsideWindowRejected) {
  EXPECT_THROW(shared_oracle().q(FrequencyX{0.375}), DomainError);
  EXPECT_THROW(shared_oracle().p(FrequencyX{0.0}), DomainError);
}

TEST(Oracle, NearResonanceDetected) {
  // E_1S + x hits the n = 3 p level at x = 4/9.
  EXPECT_THROW(shared_oracle().ac_stark_sides(4.0 / 9.0), NearResonanceError);
  EXPECT_THROW(shared_oracle().ac_stark_sides(0.375), NearResonanceError);
}

TEST(OnePhotonRatioTest, FollowsEnergyRatio) {
  const auto& o = shared_oracle();
  EXPECT_NEAR(o.one_photon_ratio(0.2).ratio, 1.875, 1e-8);
  EXPECT_NEAR(o.one_photon_ratio(0.1875).ratio, 2.0, 1e-8);
  EXPECT_FALSE(o.one_photon_ratio(0.2).degenerate);
}

TEST(OnePhotonRatioTest, ResonanceIsFlaggedNotThrown) {
  const auto& o = shared_oracle();
  const double gap = o.state_2p().energy - o.state_1s().energy;
  const OnePhotonRatio r = o.one_photon_ratio(gap);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.ratio, 1.0, 1e-8);
  EXPECT_THROW(o.one_photon_ratio(0.0), DomainError);
}

TEST(AcStark, SidesAgree) {
  const auto& o = shared_oracle();
  for (double x : {0.001, 0.05, 0.10, 0.15}) {
    const AcStarkSides s = o.ac_stark_sides(x);
    EXPECT_LT(std::abs(s.velocity_side - s.length_side) / 3.0, 1e-6) << x;
  }
}

TEST(Pseudostates, LowestAreBoundPLevels) {
  const auto states = shared_oracle().pseudostates(4);
  for (int k = 0; k < 3; ++k) {
    const int n = k + 2;
    EXPECT_NEAR(states[k].energy, -0.5 / (n * n), 1e-8);
  }
  // n = 5 reaches the r_max = 80 wall and is pushed up slightly.
  EXPECT_NEAR(states[3].energy, -0.02, 1e-5);
  EXPECT_GT(states[3].energy, -0.02);
}

TEST(Pseudostates, TruncatedSumApproachesGreenSolveMonotonically) {
  const auto& o = shared_oracle();
  const auto states = o.pseudostates(30);
  for (double x : {0.05, 0.1, 0.3}) {
    const double exact = o.q(FrequencyX{x});
    double previous = INFINITY;
    for (std::size_t k = 1; k <= states.size(); ++k) {
      const double err = std::abs(o.q_pseudostate_sum(FrequencyX{x}, {states.data(), k}) - exact);
      EXPECT_LT(err, previous) << "x=" << x << " k=" << k;
      previous = err;
    }
    EXPECT_LT(previous, 2e-2);
  }
}

TEST(Pseudostates, FullSpectrumReproducesGreenSolve) {
  const auto& o = shared_oracle();
  const auto states = o.pseudostates(400);
  const FrequencyX x{0.1};
  EXPECT_NEAR(o.q_pseudostate_sum(x, states), o.q(x), 1e-8);
}

}  // namespace
}  // namespace twophoton
