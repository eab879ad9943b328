#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "salvo/engagement.hpp"
#include "salvo/guidance.hpp"
#include "salvo/integrator.hpp"
#include "salvo/kernels.hpp"
#include "salvo/topology.hpp"

namespace salvo {

enum class InfoMode { omniscient, distributed };

struct InfoConfig {
  InfoMode mode = InfoMode::omniscient;
  std::vector<std::size_t> observers;  // distributed mode only

  bool operator==(const InfoConfig&) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::vector<AttackerConfig> attackers;
  TargetState target;  // A_T is ignored; the maneuver supplies it
  ManeuverSpec maneuver = SinusoidManeuver{};
  std::vector<std::vector<double>> graph;  // a_ij
  GuidanceParams params;                   // params.R0 mirrors attackers[i].R0
  double mu0 = 1.0;
  double z0 = 0.0;
  GuidanceMode mode = GuidanceMode::known_accel;
  InfoConfig info;
  double h = 1e-3;
  double t_end = 20.0;
  double intercept_eps = 0.01;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Every violated invariant, empty when the config is runnable.
std::vector<std::string> validate(const ScenarioConfig& cfg);
/// Throws ValidationError carrying the full list from validate().
void validate_or_throw(const ScenarioConfig& cfg);

struct SimState {
  double t = 0.0;
  std::vector<RelativeState> rel;
  std::vector<double> mu;
  std::vector<double> z;
  TargetState target;  // A_T holds the true value at t
  std::vector<std::uint8_t> active;

  std::size_t size() const noexcept { return rel.size(); }
};

/// Initial LOS-frame velocities follow from the configured headings.
SimState initial_state(const ScenarioConfig& cfg);

struct Diagnostics {
  double S = 0.0;
  double V1 = 0.0;
  double V2 = 0.0;
  double V3 = std::numeric_limits<double>::quiet_NaN();  // observer mode only
  double W = std::numeric_limits<double>::quiet_NaN();   // observer mode only
};

double lyapunov_v1(const SimState& s, const CommGraph& g, std::span<const double> R0);
double lyapunov_v2(const SimState& s, const CommGraph& g, double c);
/// The observer-error part of V3; needs the true A_T (in s.target.A_T).
double lyapunov_w(const SimState& s);
double lyapunov_v3(const SimState& s, const CommGraph& g, std::span<const double> R0);

struct AttackerSample {
  RelativeState rel;
  double mu = 0.0;
  double z = 0.0;
  ControlOutput control;
  double accel_mag = 0.0;  // sqrt(A_Mr^2 + A_Mlambda^2)
  Vec2 pos;
  double los_rate = 0.0;   // V_lambda / R
  bool active = true;
};

struct TraceRow {
  double t = 0.0;
  std::vector<AttackerSample> attackers;
  TargetState target;
  Diagnostics diag;
};

struct InterceptEvent {
  std::size_t attacker = 0;
  double time = 0.0;          // linearly interpolated inside the step
  double terminal_V_r = 0.0;
  double estimate_error = 0.0;  // |A_T - z_i| at the end of the intercept step
};

struct Trace {
  std::size_t attackers = 0;
  double h = 0.0;
  GuidanceMode mode = GuidanceMode::known_accel;
  std::vector<TraceRow> rows;
  std::vector<InterceptEvent> events;  // in order of occurrence

  bool empty() const noexcept { return rows.empty(); }
  /// Time of the first intercept, or the last recorded time if none.
  double first_intercept_or_end() const;
};

/// Fixed-step closed-loop simulator. Geometry, controls and all coupled rates
/// are re-evaluated at every RK4 stage.
class Simulator {
 public:
  explicit Simulator(ScenarioConfig cfg, ExecPolicy policy = ExecPolicy::serial);

  const ScenarioConfig& config() const noexcept { return cfg_; }
  const CommGraph& graph() const noexcept { return graph_; }

  /// Advances `s` by one step of size cfg.h. Attackers whose range falls to
  /// intercept_eps are frozen and dropped from their neighbours' sums.
  /// New intercepts are appended to `events` when given.
  /// Throws NumericalFailure on a non-finite state or a stage that overshoots R = 0.
  SimState step(const SimState& s, std::vector<InterceptEvent>* events = nullptr);

  /// Samples, controls and diagnostics at `s`.
  TraceRow sample(const SimState& s);

  /// Closed-loop rates at `s` (one stage evaluation), mostly for checks.
  std::vector<AttackerRates> rates(const SimState& s);

  Diagnostics diagnostics(const SimState& s) const;

 private:
  std::size_t state_size() const noexcept { return 6 * n_ + 3; }
  void pack(const SimState& s, std::span<double> y) const;
  void unpack(std::span<const double> y, SimState& s) const;
  void evaluate(double t, std::span<const double> y, std::span<double> dydt);
  void refresh_effective_graph(const std::vector<std::uint8_t>& active);

  ScenarioConfig cfg_;
  ExecPolicy policy_;
  std::size_t n_;
  CommGraph graph_;
  CommGraph effective_;
  std::vector<std::uint8_t> effective_for_;
  std::vector<double> speeds_;
  Rk4Stepper stepper_;

  // Stage scratch.
  SimState stage_;
  std::vector<RelativeState> perceived_;
  std::vector<double> phi_;
  std::vector<AttackerRates> rates_;
  std::vector<Vec2> positions_;
};

std::size_t planned_steps(double t_end, double h);

/// Steps from 0 to t_end, or until every attacker has intercepted.
Trace run(const ScenarioConfig& cfg, ExecPolicy policy = ExecPolicy::serial);

/// Independent runs, OpenMP-parallel over scenarios when policy == parallel.
/// A failing scenario rethrows after the whole batch completes.
std::vector<Trace> run_batch(const std::vector<ScenarioConfig>& cfgs,
                             ExecPolicy policy = ExecPolicy::parallel);

struct SimultaneityMetrics {
  double spread = 0.0;  // s, latest minus earliest intercept
  double miss = 0.0;    // km, largest final range among attackers that never got in
  bool all_intercepted = false;
  bool flagged = true;  // no intercepts at all, or some attacker never got in
};

SimultaneityMetrics simultaneity_metrics(const Trace& trace);

}  // namespace salvo
