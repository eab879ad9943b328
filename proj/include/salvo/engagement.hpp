#pragma once

#include <functional>
#include <string>
#include <variant>

namespace salvo {

/// Planar point or vector in km (or km/s).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Target kinematic state. Speed is constant over a run; only the heading
/// turns, at rate A_T / V_T.
struct TargetState {
  double x = 0.0;        // km
  double y = 0.0;        // km
  double gamma_T = 0.0;  // rad
  double V_T = 1.0;      // km/s
  double A_T = 0.0;      // km/s^2, lateral

  bool operator==(const TargetState&) const = default;
};

/// Attacker state expressed in its line-of-sight frame.
struct RelativeState {
  double R = 0.0;         // km
  double lambda = 0.0;    // rad, inertial LOS angle attacker -> target
  double V_r = 0.0;       // km/s, along the LOS
  double V_lambda = 0.0;  // km/s, normal to the LOS
};

struct AttackerConfig {
  double V = 0.0;        // km/s
  double gamma0 = 0.0;   // rad
  double R0 = 0.0;       // km
  double lambda0 = 0.0;  // rad

  bool operator==(const AttackerConfig&) const = default;
};

struct BearingAngles {
  double xi = 0.0;          // LOS to attacker velocity
  double phi = 0.0;         // reversed LOS to target velocity
  double lambda_hat = 0.0;  // reversed LOS
};

struct RelativeVelocity {
  double V_r = 0.0;
  double V_lambda = 0.0;
};

struct RelativeRates {
  double dV_r = 0.0;
  double dV_lambda = 0.0;
};

struct LosAccel {
  double along = 0.0;   // along the LOS
  double normal = 0.0;  // normal to the LOS
};

/// Antipodal LOS angle. The branch on lambda >= pi is taken after the input
/// has been normalized to [-pi, pi), so in practice it is lambda + pi wrapped.
double wrap_lambda_hat(double lambda);

/// xi = gamma_i - lambda, phi = gamma_T - lambda_hat, both in [-pi, pi).
BearingAngles bearing_angles(const RelativeState& rel, double gamma_i, double gamma_T);

/// phi alone, for callers that do not track the attacker heading.
double target_bearing(double lambda, double gamma_T);

RelativeVelocity relative_velocity(const BearingAngles& angles, double V_i, double V_T);

/// Polar kinematics of the LOS-frame velocities under attacker and target
/// acceleration components. Throws SingularGeometry when R <= r_min.
RelativeRates relative_derivatives(const RelativeState& rel, LosAccel attacker, LosAccel target,
                                   double r_min = 0.0);

/// Target lateral acceleration resolved onto the LOS: (-A_T sin phi, A_T cos phi).
LosAccel decompose_target_accel(double A_T, double phi);

/// A_T(t) = amplitude * sin(omega t).
struct SinusoidManeuver {
  double amplitude = 0.1;
  double omega = 10.0;
  bool operator==(const SinusoidManeuver&) const = default;
};

/// dA_T/dt = s A_T with A_T(0) = A0, i.e. A_T(t) = A0 e^{s t}.
struct ExogenousManeuver {
  double A0 = 0.1;
  double s = -2.0;
  bool operator==(const ExogenousManeuver&) const = default;
};

using ManeuverSpec = std::variant<SinusoidManeuver, ExogenousManeuver>;

double target_accel_profile(double t, const ManeuverSpec& profile);

/// Looks up a maneuver kind by name ("sinusoid" or "exogenous") with default
/// coefficients. Throws std::invalid_argument for anything else.
ManeuverSpec maneuver_from_name(const std::string& name);
std::string maneuver_name(const ManeuverSpec& profile);

struct Headings {
  double gamma_i = 0.0;
  double gamma_T = 0.0;
};

using AccelHistory = std::function<double(double)>;

/// One classical RK4 step of gamma' = A(t) / V for attacker and target
/// headings over [t, t + h]. Exact for constant accelerations.
Headings advance_headings(const Headings& h0, const AccelHistory& A_M, double V_i,
                          const AccelHistory& A_T, double V_T, double t, double h);

/// Attacker position from the target position and its LOS state: the
/// attacker sits at distance R behind the target along direction lambda.
Vec2 reconstruct_position(const TargetState& target, const RelativeState& rel);

/// Inertial velocity of the target consistent with the LOS-frame equations,
/// whose relative velocity is V_T (cos phi, sin phi) - V_i (cos xi, sin xi)
/// with phi measured from the reversed LOS. That places the target velocity
/// along gamma_T + pi.
Vec2 target_velocity(double gamma_T, double V_T);

/// Attacker inertial velocity implied by a target velocity and LOS state.
Vec2 implied_attacker_velocity(const Vec2& target_vel, const RelativeState& rel);

}  // namespace salvo
