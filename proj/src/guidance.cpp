#include "salvo/guidance.hpp"

#include <cmath>
#include <string>

#include "salvo/angles.hpp"
#include "salvo/errors.hpp"

namespace salvo {

PairGeometry pair_geometry(const Vec2& pos_i, const Vec2& pos_j, double lambda_i, double lambda_j) {
  const double dx = pos_j.x - pos_i.x;
  const double dy = pos_j.y - pos_i.y;
  return {wrap_angle(lambda_j - lambda_i), std::hypot(dx, dy), std::atan2(dy, dx)};
}

double coupling_weight(std::size_t i, std::span<const RelativeState> rel, const CommGraph& g,
                       std::span<const double> R0) {
  double w = 1.0;
  const RelativeState& a = rel[i];
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double aij = g.weight(i, j);
    if (aij == 0.0) continue;
    const double cross = a.R * rel[j].R * std::sin(rel[j].lambda - a.lambda);
    w += aij * cross * cross / (R0[i] * R0[i] * R0[j] * R0[j]);
  }
  return w;
}

double coupling_gain(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                     std::span<const double> R0) {
  const double Ri = snap.rel[i].R;
  const double Vi = snap.speeds[i];
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double aij = g.weight(i, j);
    if (aij == 0.0) continue;
    const double Rj = snap.rel[j].R;
    const double Vj = snap.speeds[j];
    const double bracket = snap.V_T * Ri * Rj * Rj + snap.V_T * Ri * Ri * Rj + Vi * Ri * Rj * Rj +
                           Vj * Ri * Ri * Rj;
    sum += aij * bracket / (R0[i] * R0[i] * R0[j] * R0[j]);
  }
  return sum;
}

namespace {

void require_range(const RelativeState& rel, double r_min, std::size_t i) {
  if (!(rel.R > r_min))
    throw SingularGeometry("guidance: attacker " + std::to_string(i) + " range " +
                           std::to_string(rel.R) + " at or below " + std::to_string(r_min));
}

double transverse_feedback(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                           const GuidanceParams& p) {
  const double w = coupling_weight(i, snap.rel, g, p.R0);
  return p.kappa1 / w * snap.rel[i].V_lambda * coupling_gain(i, snap, g, p.R0);
}

}  // namespace

ControlOutput law_known(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                        const GuidanceParams& p, LosAccel target_accel, double r_min) {
  const RelativeState& rel = snap.rel[i];
  require_range(rel, r_min, i);
  ControlOutput u;
  u.A_Mlambda = -rel.V_r * rel.V_lambda / rel.R + target_accel.normal +
                transverse_feedback(i, snap, g, p);
  u.A_Mr = rel.V_lambda * rel.V_lambda / rel.R + target_accel.along + p.kappa2 * (rel.V_r + p.c) +
           rel.R;
  return u;
}

double adaptive_rate(double mu, double R, double V_r, double c) {
  const double e = V_r + c;
  return mu * R * e / (1.0 + e * e);
}

ObserverCoefficients observer_coefficients(std::size_t i, const EngagementSnapshot& snap,
                                           const CommGraph& g, std::span<const double> R0) {
  const double phi = snap.phi[i];
  return {coupling_weight(i, snap.rel, g, R0) * std::cos(phi), -std::sin(phi)};
}

double observer_rate(double z, double s, double sigma1, double sigma2, double V_lambda, double V_r) {
  return s * z + sigma1 * V_lambda + sigma2 * V_r;
}

ControlOutput law_observer(std::size_t i, const EngagementSnapshot& snap, const CommGraph& g,
                           const GuidanceParams& p, double z_i, double r_min) {
  const RelativeState& rel = snap.rel[i];
  require_range(rel, r_min, i);
  const double phi = snap.phi[i];
  ControlOutput u;
  u.A_Mlambda = -rel.V_r * rel.V_lambda / rel.R + z_i * std::cos(phi) +
                transverse_feedback(i, snap, g, p);
  u.A_Mr = rel.V_lambda * rel.V_lambda / rel.R - z_i * std::sin(phi) + p.kappa2 * rel.V_r + rel.R;
  return u;
}

double enclosing_area(std::span<const RelativeState> rel, const CommGraph& g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double aij = g.weight(i, j);
      if (aij == 0.0) continue;
      sum += aij * std::abs(rel[i].R * rel[j].R * std::sin(rel[j].lambda - rel[i].lambda));
    }
  return 0.25 * sum;
}

}  // namespace salvo
