#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "salvo/engagement.hpp"
#include "salvo/topology.hpp"

namespace salvo {

struct GuidanceParams {
  double kappa1 = 4.0;     // > 1
  double kappa2 = 4.0;     // > 0
  double c = 0.0;          // km/s, >= 0; terminal closing speed in known-accel mode
  double s = 0.0;          // 1/s, <= 0; target maneuver decay rate
  std::vector<double> R0;  // km, initial ranges normalising the coupling terms

  bool operator==(const GuidanceParams&) const = default;
};

/// Adaptive parameters mu_i. Integrated and logged; the control laws do not
/// read them.
struct AdaptiveState {
  std::vector<double> mu;
};

/// Per-attacker target-acceleration estimates z_i.
struct ObserverState {
  std::vector<double> z;
};

struct PairGeometry {
  double theta = 0.0;  // lambda_j - lambda_i, in [-pi, pi)
  double r = 0.0;      // km, inter-attacker distance
  double alpha = 0.0;  // inertial bearing of the baseline i -> j
};

struct ControlOutput {
  double A_Mr = 0.0;
  double A_Mlambda = 0.0;
};

/// Immutable view of everything one control evaluation reads. Spans are
/// indexed by attacker; all have the graph's size.
struct EngagementSnapshot {
  std::span<const RelativeState> rel;
  std::span<const double> phi;
  std::span<const double> speeds;  // V_i
  double V_T = 1.0;
};

PairGeometry pair_geometry(const Vec2& pos_i, const Vec2& pos_j, double lambda_i, double lambda_j);

/// 1 + sum_j a_ij (R_i R_j sin theta_ij)^2 / (R_i0^2 R_j0^2). Always >= 1.
double coupling_weight(std::size_t i, std::span<const RelativeState> rel, const CommGraph& g,
                       std::span<const double> R0);

/// sum_j a_ij (V_T R_i R_j^2 + V_T R_i^2 R_j + V_i R_i R_j^2 + V_j R_i^2 R_j) / (R_i0^2 R_j0^2),
/// the bracket the transverse law multiplies by V_lambda_i.
double coupling_gain(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                     std::span<const double> R0);

/// Known target acceleration. Closes the loop to
///   dV_r = -kappa2 (V_r + c) - R,
///   dV_lambda = -kappa1 V_lambda coupling_gain / coupling_weight.
/// Throws SingularGeometry if R_i <= r_min.
ControlOutput law_known(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                        const GuidanceParams& p, LosAccel target_accel, double r_min = 0.0);

/// mu' = mu R (V_r + c) / (1 + (V_r + c)^2).
double adaptive_rate(double mu, double R, double V_r, double c);

struct ObserverCoefficients {
  double sigma1 = 0.0;
  double sigma2 = 0.0;
};

/// sigma1 = coupling_weight * cos phi_i, sigma2 = -sin phi_i.
ObserverCoefficients observer_coefficients(std::size_t i, const EngagementSnapshot& snap,
                                           const CommGraph& g, std::span<const double> R0);

/// z' = s z + sigma1 V_lambda + sigma2 V_r.
double observer_rate(double z, double s, double sigma1, double sigma2, double V_lambda, double V_r);

/// Estimated target acceleration z_i in place of the true one. The along-LOS
/// channel uses kappa2 V_r (no c), so R and V_r are driven to zero together.
ControlOutput law_observer(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                           const GuidanceParams& p, double z_i, double r_min = 0.0);

/// S = 1/4 sum_i sum_j a_ij |R_i R_j sin theta_ij|, km^2.
double enclosing_area(std::span<const RelativeState> rel, const CommGraph& g);

}  // namespace salvo
