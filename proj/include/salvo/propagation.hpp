#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <vector>

#include "salvo/guidance.hpp"
#include "salvo/topology.hpp"

namespace salvo {

/// What one attacker knows about the target.
struct Observation {
  double R = 0.0;
  double lambda = 0.0;
  double V_T = 0.0;
  double gamma_T = 0.0;
};

struct ObservationSet {
  std::set<std::size_t> observers;
  std::map<std::size_t, Observation> known;
};

struct FloodResult {
  ObservationSet set;
  std::vector<std::size_t> uncovered;  // ascending

  bool complete() const noexcept { return uncovered.empty(); }
};

/// n x n table; entry [i][j] describes the baseline from attacker i to j.
using PairGeometryTable = std::vector<std::vector<PairGeometry>>;

PairGeometryTable pair_geometry_table(std::span<const Vec2> positions,
                                      std::span<const double> lambdas);

/// Law-of-cosines range of attacker j, given attacker i's range and LOS and
/// the baseline i -> j (length r_ij, bearing alpha_i).
double propagate_range(double R_i, double r_ij, double lambda_i, double alpha_i);

/// LOS angle of attacker j. The sine-rule argument r_ij sin(lambda_i - alpha_i)
/// / R_j must lie in [-1, 1] (to a relative tolerance) or GeometryError is
/// thrown. The returned angle takes the arcsin branch that matches the
/// triangle, which R_i disambiguates.
double propagate_los(double lambda_i, double alpha_i, double r_ij, double R_i, double R_j);

/// Breadth-first spread of target-relative information from the observers
/// along communication edges (j -> i whenever a_ij > 0). Nodes are visited
/// in a fixed order so the result is deterministic.
FloodResult flood(const CommGraph& g, const ObservationSet& obs, const PairGeometryTable& geometry);

}  // namespace salvo
