#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "salvo/angles.hpp"
#include "salvo/engagement.hpp"
#include "salvo/errors.hpp"
#include "salvo/integrator.hpp"

using namespace salvo;

TEST(Angles, WrapIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), -kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), -kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi + 0.25), -kPi + 0.25, 1e-12);
  auto gen = oracle::rng(5);
  for (int k = 0; k < 10000; ++k) {
    const double a = oracle::uniform(gen, -50.0, 50.0);
    const double w = wrap_angle(a);
    ASSERT_GE(w, -kPi);
    ASSERT_LT(w, kPi);
    ASSERT_NEAR(std::sin(w), std::sin(a), 1e-12);
    ASSERT_NEAR(std::cos(w), std::cos(a), 1e-12);
  }
}

TEST(Engagement, LambdaHatBranches) {
  EXPECT_NEAR(wrap_lambda_hat(kPi), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(wrap_lambda_hat(0.0), -kPi);
  EXPECT_NEAR(wrap_lambda_hat(-kPi / 2), kPi / 2, 1e-15);
}

TEST(Engagement, BearingAngles) {
  RelativeState rel{5.0, 0.3, 0.0, 0.0};
  EXPECT_NEAR(bearing_angles(rel, 0.3, 1.0).xi, 0.0, 1e-15);
  EXPECT_NEAR(bearing_angles(rel, 1.0, wrap_lambda_hat(0.3)).phi, 0.0, 1e-15);

  rel.lambda = -0.8851;
  EXPECT_NEAR(bearing_angles(rel, 0.6283, 1.0472).xi, 1.5134, 1e-12);
}

TEST(Engagement, RelativeVelocity) {
  const auto head_on = relative_velocity({kPi, 0.0, 0.0}, 0.7, 1.0);
  EXPECT_NEAR(head_on.V_r, 1.7, 1e-15);
  EXPECT_NEAR(head_on.V_lambda, 0.0, 1e-15);

  const auto same = relative_velocity({0.0, 0.0, 0.0}, 1.0, 1.0);
  EXPECT_EQ(same.V_r, 0.0);
  EXPECT_EQ(same.V_lambda, 0.0);

  const auto crossing = relative_velocity({-kPi / 2, kPi / 2, 0.0}, 0.7, 1.0);
  EXPECT_NEAR(crossing.V_r, 0.0, 1e-15);
  EXPECT_NEAR(crossing.V_lambda, 1.7, 1e-15);
}

TEST(Engagement, RelativeVelocityInvariantUnderFullTurns) {
  auto gen = oracle::rng(9);
  for (int k = 0; k < 1000; ++k) {
    const RelativeState rel{1.0, oracle::uniform(gen, -kPi, kPi), 0.0, 0.0};
    const double gi = oracle::uniform(gen, -kPi, kPi);
    const double gt = oracle::uniform(gen, -kPi, kPi);
    const auto base = relative_velocity(bearing_angles(rel, gi, gt), 0.7, 1.0);
    RelativeState turned = rel;
    turned.lambda += kTwoPi;
    const auto a = relative_velocity(bearing_angles(turned, gi + kTwoPi, gt - kTwoPi), 0.7, 1.0);
    ASSERT_NEAR(a.V_r, base.V_r, 1e-12);
    ASSERT_NEAR(a.V_lambda, base.V_lambda, 1e-12);
  }
}

TEST(Engagement, RelativeDerivatives) {
  EXPECT_EQ(relative_derivatives({3.0, 0.0, -1.0, 0.0}, {0, 0}, {0, 0}).dV_r, 0.0);

  const auto d = relative_derivatives({2.0, 0.0, -1.0, 1.0}, {0, 0}, {0, 0});
  EXPECT_DOUBLE_EQ(d.dV_r, 0.5);
  EXPECT_DOUBLE_EQ(d.dV_lambda, 0.5);

  const RelativeState rel{1.7, 0.2, -0.4, 0.9};
  const LosAccel target{0.03, -0.07};
  const LosAccel cancel{rel.V_lambda * rel.V_lambda / rel.R + target.along, 0.0};
  EXPECT_NEAR(relative_derivatives(rel, cancel, target).dV_r, 0.0, 1e-15);

  EXPECT_THROW(relative_derivatives({0.01, 0, 0, 0}, {0, 0}, {0, 0}, 0.01), SingularGeometry);
}

TEST(Engagement, DecomposeTargetAccel) {
  const auto pure = decompose_target_accel(0.1, 0.0);
  EXPECT_EQ(pure.along, 0.0);
  EXPECT_EQ(pure.normal, 0.1);
  const auto quarter = decompose_target_accel(0.1, kPi / 2);
  EXPECT_NEAR(quarter.along, -0.1, 1e-16);
  EXPECT_NEAR(quarter.normal, 0.0, 1e-16);
  const auto none = decompose_target_accel(0.0, 1.3);
  EXPECT_EQ(none.along, 0.0);
  EXPECT_EQ(none.normal, 0.0);

  auto gen = oracle::rng(1);
  for (int k = 0; k < 1000; ++k) {
    const double a = oracle::uniform(gen, -1, 1);
    const auto c = decompose_target_accel(a, oracle::uniform(gen, -kPi, kPi));
    ASSERT_NEAR(c.along * c.along + c.normal * c.normal, a * a, 1e-15);
  }
}

TEST(Engagement, TargetAccelProfiles) {
  const ManeuverSpec sine = SinusoidManeuver{0.1, 10.0};
  EXPECT_EQ(target_accel_profile(0.0, sine), 0.0);
  EXPECT_NEAR(target_accel_profile(kPi / 20, sine), 0.1, 1e-15);

  const ManeuverSpec exo = ExogenousManeuver{0.3, -2.0};
  for (double t : {0.0, 0.5, 3.0})
    EXPECT_NEAR(target_accel_profile(t, exo), 0.3 * std::exp(-2.0 * t), 1e-15);

  EXPECT_THROW(maneuver_from_name("zigzag"), std::invalid_argument);
  EXPECT_EQ(maneuver_name(maneuver_from_name("exogenous")), "exogenous");
}

TEST(Engagement, AdvanceHeadings) {
  auto zero = [](double) { return 0.0; };
  auto constant = [](double) { return 0.2; };
  auto h1 = advance_headings({0.4, 1.0}, zero, 0.7, constant, 1.0, 0.0, 1.0);
  EXPECT_EQ(h1.gamma_i, 0.4);
  EXPECT_NEAR(h1.gamma_T, 1.2, 1e-15);

  // Over one period of 0.1 sin(10 t) the heading returns to where it started;
  // in between it follows 0.01 (1 - cos 10 t).
  auto sine = [](double t) { return 0.1 * std::sin(10.0 * t); };
  Headings h{0.0, 0.0};
  const int steps = 6283;
  const double period = 2.0 * kPi / 10.0;
  const double dt = period / steps;
  for (int k = 0; k < steps; ++k) {
    h = advance_headings(h, zero, 0.7, sine, 1.0, k * dt, dt);
    if (k == steps / 2 - 1) EXPECT_NEAR(h.gamma_T, 0.01 * (1 - std::cos(10.0 * (k + 1) * dt)), 1e-12);
  }
  EXPECT_NEAR(h.gamma_T, 0.0, 1e-12);
}

TEST(Engagement, ReconstructPosition) {
  const auto p = reconstruct_position({0, 0, 0, 1, 0}, {1.0, 0.0, 0, 0});
  EXPECT_EQ(p.x, -1.0);
  EXPECT_EQ(p.y, 0.0);

  const auto table = reconstruct_position({6.5, 0.5, 1.0472, 1, 0}, {7.1063, -0.8851, 0, 0});
  EXPECT_NEAR(table.x, 2.0002048052809887, 1e-12);
  EXPECT_NEAR(table.y, 6.000122080061832, 1e-12);

  const auto at = reconstruct_position({3.0, -2.0, 0, 1, 0}, {0.0, 1.1, 0, 0});
  EXPECT_EQ(at.x, 3.0);
  EXPECT_EQ(at.y, -2.0);
}

namespace {

// Unguided attackers under a turning target, integrated in the LOS frame:
// y = [R, lambda, V_r, V_lambda, x_T, y_T, gamma_T].
struct FreeFlight {
  double V_T = 1.0;
  ManeuverSpec maneuver = SinusoidManeuver{0.1, 10.0};

  void operator()(double t, std::span<const double> y, std::span<double> d) const {
    const RelativeState rel{y[0], y[1], y[2], y[3]};
    const double A_T = target_accel_profile(t, maneuver);
    const auto target = decompose_target_accel(A_T, target_bearing(rel.lambda, y[6]));
    const auto r = relative_derivatives(rel, {0.0, 0.0}, target);
    const Vec2 vt = target_velocity(y[6], V_T);
    d[0] = rel.V_r;
    d[1] = rel.V_lambda / rel.R;
    d[2] = r.dV_r;
    d[3] = r.dV_lambda;
    d[4] = vt.x;
    d[5] = vt.y;
    d[6] = A_T / V_T;
  }
};

}  // namespace

TEST(Engagement, ZeroControlMatchesStraightFlyingAttacker) {
  // An unaccelerated attacker must keep its speed and fly a straight line;
  // the reconstructed positions must agree with that.
  const double V_i = 0.7, gamma_i = 0.6283;
  const TargetState target{6.5, 0.5, 1.0472, 1.0, 0.0};
  RelativeState rel{7.1063, -0.8851, 0, 0};
  const auto v = relative_velocity(bearing_angles(rel, gamma_i, target.gamma_T), V_i, target.V_T);
  rel.V_r = v.V_r;
  rel.V_lambda = v.V_lambda;
  const Vec2 start = reconstruct_position(target, rel);

  std::vector<double> y{rel.R, rel.lambda, rel.V_r, rel.V_lambda, target.x, target.y, target.gamma_T};
  Rk4Stepper rk(y.size());
  FreeFlight f;
  const double h = 1e-3;
  for (int k = 0; k < 3000; ++k) {
    rk.step(f, k * h, y, h);
    const RelativeState now{y[0], y[1], y[2], y[3]};
    const TargetState tgt{y[4], y[5], y[6], 1.0, 0.0};
    const Vec2 va = implied_attacker_velocity(target_velocity(tgt.gamma_T, tgt.V_T), now);
    ASSERT_NEAR(std::hypot(va.x, va.y), V_i, 1e-9);
    const Vec2 p = reconstruct_position(tgt, now);
    const double t = (k + 1) * h;
    ASSERT_NEAR(p.x, start.x + V_i * std::cos(gamma_i) * t, 1e-9);
    ASSERT_NEAR(p.y, start.y + V_i * std::sin(gamma_i) * t, 1e-9);
  }
}

TEST(Engagement, ZeroInputsGiveLinearRange) {
  // V_lambda = 0, no accelerations: R advances by exactly h V_r per step.
  std::vector<double> y{5.0, 0.3, -0.8, 0.0, 0.0, 0.0, 0.0};
  FreeFlight f;
  f.maneuver = SinusoidManeuver{0.0, 10.0};
  Rk4Stepper rk(y.size());
  rk.step(f, 0.0, y, 0.01);
  EXPECT_EQ(y[0], 5.0 + 0.01 * -0.8);
  EXPECT_EQ(y[3], 0.0);
}
