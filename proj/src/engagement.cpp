#include "salvo/engagement.hpp"

#include <cmath>
#include <stdexcept>

#include "salvo/angles.hpp"
#include "salvo/errors.hpp"

namespace salvo {

double wrap_lambda_hat(double lambda) {
  const double l = wrap_angle(lambda);
  return wrap_angle(l >= kPi ? l - kPi : l + kPi);
}

BearingAngles bearing_angles(const RelativeState& rel, double gamma_i, double gamma_T) {
  BearingAngles b;
  b.lambda_hat = wrap_lambda_hat(rel.lambda);
  b.xi = wrap_angle(gamma_i - rel.lambda);
  b.phi = wrap_angle(gamma_T - b.lambda_hat);
  return b;
}

double target_bearing(double lambda, double gamma_T) {
  return wrap_angle(gamma_T - wrap_lambda_hat(lambda));
}

RelativeVelocity relative_velocity(const BearingAngles& angles, double V_i, double V_T) {
  return {V_T * std::cos(angles.phi) - V_i * std::cos(angles.xi),
          V_T * std::sin(angles.phi) - V_i * std::sin(angles.xi)};
}

RelativeRates relative_derivatives(const RelativeState& rel, LosAccel attacker, LosAccel target,
                                   double r_min) {
  if (!(rel.R > r_min))
    throw SingularGeometry("relative_derivatives: range " + std::to_string(rel.R) +
                           " at or below " + std::to_string(r_min));
  return {rel.V_lambda * rel.V_lambda / rel.R - attacker.along + target.along,
          -rel.V_lambda * rel.V_r / rel.R - attacker.normal + target.normal};
}

LosAccel decompose_target_accel(double A_T, double phi) {
  return {-A_T * std::sin(phi), A_T * std::cos(phi)};
}

namespace {

struct ProfileEval {
  double t;
  double operator()(const SinusoidManeuver& m) const { return m.amplitude * std::sin(m.omega * t); }
  double operator()(const ExogenousManeuver& m) const { return m.A0 * std::exp(m.s * t); }
};

}  // namespace

double target_accel_profile(double t, const ManeuverSpec& profile) {
  return std::visit(ProfileEval{t}, profile);
}

ManeuverSpec maneuver_from_name(const std::string& name) {
  if (name == "sinusoid") return SinusoidManeuver{};
  if (name == "exogenous") return ExogenousManeuver{};
  throw std::invalid_argument("unknown maneuver profile '" + name + "'");
}

std::string maneuver_name(const ManeuverSpec& profile) {
  return std::holds_alternative<SinusoidManeuver>(profile) ? "sinusoid" : "exogenous";
}

Headings advance_headings(const Headings& h0, const AccelHistory& A_M, double V_i,
                          const AccelHistory& A_T, double V_T, double t, double h) {
  auto rk4 = [t, h](double gamma, const AccelHistory& a, double V) {
    const double k1 = a(t) / V;
    const double k2 = a(t + 0.5 * h) / V;
    const double k4 = a(t + h) / V;
    // The rate does not depend on gamma, so k3 == k2.
    return gamma + h / 6.0 * (k1 + 4.0 * k2 + k4);
  };
  return {rk4(h0.gamma_i, A_M, V_i), rk4(h0.gamma_T, A_T, V_T)};
}

Vec2 reconstruct_position(const TargetState& target, const RelativeState& rel) {
  return {target.x - rel.R * std::cos(rel.lambda), target.y - rel.R * std::sin(rel.lambda)};
}

Vec2 target_velocity(double gamma_T, double V_T) {
  return {-V_T * std::cos(gamma_T), -V_T * std::sin(gamma_T)};
}

Vec2 implied_attacker_velocity(const Vec2& target_vel, const RelativeState& rel) {
  const double c = std::cos(rel.lambda);
  const double s = std::sin(rel.lambda);
  // Relative velocity (target minus attacker) in inertial axes.
  const double vx = rel.V_r * c - rel.V_lambda * s;
  const double vy = rel.V_r * s + rel.V_lambda * c;
  return {target_vel.x - vx, target_vel.y - vy};
}

}  // namespace salvo
