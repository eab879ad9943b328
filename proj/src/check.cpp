#include "salvo/check.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace salvo {

bool CheckReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

std::size_t lyapunov_violations(const Trace& trace, double (*pick)(const Diagnostics&),
                                double t_stop) {
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < trace.rows.size(); ++k) {
    const auto& a = trace.rows[k];
    const auto& b = trace.rows[k + 1];
    if (b.t > t_stop) break;
    const double va = pick(a.diag);
    const double slope = (pick(b.diag) - va) / (b.t - a.t);
    if (slope > limits::kLyapunovSlack * std::max(va, 1.0)) ++count;
  }
  return count;
}

double max_los_rate(const Trace& trace, double t0, double t1) {
  double m = 0.0;
  for (const auto& row : trace.rows) {
    if (row.t < t0 || row.t > t1) continue;
    for (const auto& a : row.attackers)
      if (a.active) m = std::max(m, std::abs(a.los_rate));
  }
  return m;
}

double min_area_ratio(const Trace& trace, double t_stop) {
  if (trace.rows.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double S0 = trace.rows.front().diag.S;
  double ratio = 1.0;
  for (const auto& row : trace.rows) {
    if (row.t > t_stop) break;
    ratio = std::min(ratio, row.diag.S / S0);
  }
  return ratio;
}

namespace {

double pick_v1(const Diagnostics& d) { return d.V1; }
double pick_v2(const Diagnostics& d) { return d.V2; }
double pick_v3(const Diagnostics& d) { return d.V3; }

// Upper edge of the pre-intercept window: the last recorded time strictly
// before the first intercept, or the end of the run.
double pre_intercept_limit(const Trace& trace) {
  if (trace.events.empty()) return trace.rows.back().t;
  const double t_hit = trace.first_intercept_or_end();
  double limit = trace.rows.front().t;
  for (const auto& row : trace.rows)
    if (row.t < t_hit) limit = row.t;
  return limit;
}

}  // namespace

RunSummary summarize(const Trace& trace) {
  RunSummary s;
  s.intercept_times.assign(trace.attackers, std::numeric_limits<double>::quiet_NaN());
  for (const auto& e : trace.events) s.intercept_times[e.attacker] = e.time;
  s.spread = simultaneity_metrics(trace).spread;
  s.final_S = trace.rows.empty() ? 0.0 : trace.rows.back().diag.S;
  const double limit = trace.rows.empty() ? 0.0 : pre_intercept_limit(trace);
  if (trace.mode == GuidanceMode::known_accel)
    s.lyapunov_violations =
        lyapunov_violations(trace, pick_v1, limit) + lyapunov_violations(trace, pick_v2, limit);
  else
    s.lyapunov_violations = lyapunov_violations(trace, pick_v3, limit);
  for (const auto& row : trace.rows)
    for (const auto& a : row.attackers)
      if (a.active) s.max_implied_accel = std::max(s.max_implied_accel, a.accel_mag);
  return s;
}

CheckReport evaluate(const std::string& scenario, const Trace& trace) {
  CheckReport r;
  r.scenario = scenario;
  r.summary = summarize(trace);
  if (trace.rows.empty()) {
    r.criteria.push_back({"trace", false, "empty trace"});
    return r;
  }
  const auto metrics = simultaneity_metrics(trace);
  const double t_run = trace.rows.back().t;

  {
    std::size_t hits = trace.events.size();
    r.criteria.push_back(
        {"intercept", metrics.all_intercepted,
         fmt::format("{}/{} attackers reached R <= eps by t = {:.3f} s; largest remaining R = {:.6g} km",
                     hits, trace.attackers, t_run, metrics.miss)});
  }

  if (trace.mode == GuidanceMode::known_accel) {
    const bool ok = metrics.all_intercepted && metrics.spread <= limits::kSpread;
    r.criteria.push_back(
        {"simultaneity", ok,
         metrics.all_intercepted
             ? fmt::format("spread {:.6g} s (limit {} s)", metrics.spread, limits::kSpread)
             : fmt::format("not all attackers intercepted (spread among {} hits: {:.6g} s)",
                           trace.events.size(), metrics.spread)});
  } else {
    double max_at = 0.0;
    for (const auto& row : trace.rows) max_at = std::max(max_at, std::abs(row.target.A_T));
    double worst = trace.events.empty() ? std::numeric_limits<double>::infinity() : 0.0;
    for (const auto& e : trace.events) worst = std::max(worst, e.estimate_error);
    const bool ok = metrics.all_intercepted && worst < limits::kObserverError * max_at;
    r.criteria.push_back(
        {"observer_error", ok,
         fmt::format("max |A_T - z_i| at intercept {:.6g} vs limit {:.6g}{}", worst,
                     limits::kObserverError * max_at,
                     metrics.all_intercepted ? "" : " (not all attackers intercepted)")});
  }

  const double limit = pre_intercept_limit(trace);
  if (trace.mode == GuidanceMode::known_accel) {
    for (auto [label, pick] : {std::pair{"lyapunov_V1", pick_v1}, std::pair{"lyapunov_V2", pick_v2}}) {
      const auto v = lyapunov_violations(trace, pick, limit);
      r.criteria.push_back({label, v == 0, fmt::format("{} increasing steps before t = {:.3f} s", v, limit)});
    }
  } else {
    const auto v = lyapunov_violations(trace, pick_v3, limit);
    r.criteria.push_back(
        {"lyapunov_V3", v == 0, fmt::format("{} increasing steps before t = {:.3f} s", v, limit)});
  }

  {
    const double ratio = min_area_ratio(trace, limit);
    r.criteria.push_back({"area_collapse", ratio < limits::kAreaFraction,
                          fmt::format("min S/S0 = {:.6g} (limit {})", ratio, limits::kAreaFraction)});
  }

  {
    const double t0 = trace.rows.front().t;
    const double q = (limit - t0) / 4.0;
    const double first = max_los_rate(trace, t0, t0 + q);
    const double last = max_los_rate(trace, limit - q, limit);
    r.criteria.push_back(
        {"los_quieting", last < limits::kLosRateFraction * first,
         fmt::format("max |lambda_dot| last quarter {:.6g} rad/s vs first quarter {:.6g} rad/s (limit {}x)",
                     last, first, limits::kLosRateFraction)});
  }
  return r;
}

CheckReport check(const ScenarioConfig& cfg, ExecPolicy policy) {
  return evaluate(cfg.name, run(cfg, policy));
}

void print_report(const CheckReport& report, std::ostream& out) {
  out << "scenario " << (report.scenario.empty() ? "<unnamed>" : report.scenario) << '\n';
  const auto& s = report.summary;
  out << "  intercept times:";
  for (std::size_t i = 0; i < s.intercept_times.size(); ++i)
    out << fmt::format(" [{}] {}", i + 1,
                       std::isnan(s.intercept_times[i]) ? std::string("none")
                                                        : fmt::format("{:.4f} s", s.intercept_times[i]));
  out << '\n'
      << fmt::format("  spread {:.6g} s, final S {:.6g} km^2, lyapunov violations {}, max |A_M| {:.6g} km/s^2\n",
                     s.spread, s.final_S, s.lyapunov_violations, s.max_implied_accel);
  for (const auto& c : report.criteria)
    out << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name << ": " << c.detail << '\n';
  out << (report.passed() ? "  result: PASS\n" : "  result: FAIL\n");
}

}  // namespace salvo
