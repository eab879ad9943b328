#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "salvo/sim.hpp"

namespace salvo {

/// Fixed acceptance thresholds.
namespace limits {
inline constexpr double kSpread = 0.05;           // s, simultaneity
inline constexpr double kObserverError = 0.10;    // fraction of max |A_T|
inline constexpr double kLyapunovSlack = 1e-6;    // times max(V, 1)
inline constexpr double kAreaFraction = 0.01;     // of S(0)
inline constexpr double kLosRateFraction = 0.05;  // last vs first quarter
}  // namespace limits

struct RunSummary {
  std::vector<double> intercept_times;  // per attacker, NaN if none
  double spread = 0.0;
  double final_S = 0.0;
  std::size_t lyapunov_violations = 0;
  double max_implied_accel = 0.0;
};

struct CriterionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CheckReport {
  std::string scenario;
  RunSummary summary;
  std::vector<CriterionResult> criteria;

  bool passed() const;
};

/// Finite-difference slope violations of V (dV/dt > slack * max(V, 1)) over
/// recorded rows strictly before `t_stop`.
std::size_t lyapunov_violations(const Trace& trace, double (*pick)(const Diagnostics&),
                                double t_stop);

/// max_i |lambda_dot_i| over [t0, t1].
double max_los_rate(const Trace& trace, double t0, double t1);

/// Smallest S(t) / S(0) over rows strictly before `t_stop`.
double min_area_ratio(const Trace& trace, double t_stop);

RunSummary summarize(const Trace& trace);

/// Evaluates every criterion applicable to the trace's mode.
CheckReport evaluate(const std::string& scenario, const Trace& trace);

/// Runs the scenario and evaluates it. NumericalFailure propagates.
CheckReport check(const ScenarioConfig& cfg, ExecPolicy policy = ExecPolicy::serial);

void print_report(const CheckReport& report, std::ostream& out);

}  // namespace salvo
