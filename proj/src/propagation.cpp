#include "salvo/propagation.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>

#include "salvo/angles.hpp"
#include "salvo/errors.hpp"

namespace salvo {

PairGeometryTable pair_geometry_table(std::span<const Vec2> positions,
                                      std::span<const double> lambdas) {
  const std::size_t n = positions.size();
  PairGeometryTable table(n, std::vector<PairGeometry>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) table[i][j] = pair_geometry(positions[i], positions[j], lambdas[i], lambdas[j]);
  return table;
}

double propagate_range(double R_i, double r_ij, double lambda_i, double alpha_i) {
  // Law of cosines, written as the norm of the target offset seen from j in
  // i's LOS frame so that nearly coincident points keep full precision.
  const double d = lambda_i - alpha_i;
  return std::hypot(R_i - r_ij * std::cos(d), r_ij * std::sin(d));
}

double propagate_los(double lambda_i, double alpha_i, double r_ij, double R_i, double R_j) {
  const double d = lambda_i - alpha_i;
  const double transverse = r_ij * std::sin(d);
  constexpr double kTol = 1e-9;
  if (!(std::abs(transverse) <= R_j * (1.0 + kTol) + kTol * 1e-3))
    throw GeometryError("propagate_los: sine-rule argument " + std::to_string(transverse / R_j) +
                        " outside [-1, 1]");
  if (r_ij == 0.0) return wrap_angle(lambda_i);
  // arcsin(transverse / R_j) is the principal branch; the along-LOS component
  // decides whether the angle at the target exceeds a right angle.
  const double along = R_i - r_ij * std::cos(d);
  return wrap_angle(lambda_i + std::atan2(transverse, along));
}

FloodResult flood(const CommGraph& g, const ObservationSet& obs, const PairGeometryTable& geometry) {
  const std::size_t n = g.size();
  FloodResult result;
  result.set = obs;
  std::deque<std::size_t> queue;
  for (std::size_t o : obs.observers) {
    if (o >= n || !obs.known.contains(o))
      throw std::invalid_argument("flood: observer " + std::to_string(o) +
                                  " has no observation");
    queue.push_back(o);
  }

  while (!queue.empty()) {
    const std::size_t from = queue.front();
    queue.pop_front();
    const Observation& src = result.set.known.at(from);
    for (std::size_t to = 0; to < n; ++to) {
      if (!g.has_edge(from, to) || result.set.known.contains(to)) continue;
      const PairGeometry& base = geometry[from][to];
      Observation dst = src;
      dst.R = propagate_range(src.R, base.r, src.lambda, base.alpha);
      dst.lambda = propagate_los(src.lambda, base.alpha, base.r, src.R, dst.R);
      result.set.known.emplace(to, dst);
      queue.push_back(to);
    }
  }

  for (std::size_t k = 0; k < n; ++k)
    if (!result.set.known.contains(k)) result.uncovered.push_back(k);
  return result;
}

}  // namespace salvo
