#include "salvo/sim.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>

#include "salvo/angles.hpp"
#include "salvo/errors.hpp"
#include "salvo/propagation.hpp"

namespace salvo {

namespace {

std::string idx(std::size_t i) { return std::to_string(i); }

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& cfg) {
  std::vector<std::string> problems;
  const std::size_t n = cfg.attackers.size();
  if (n < 2) problems.push_back("attackers: need at least 2, got " + idx(n));

  const auto graph_problems = CommGraph::validate(cfg.graph);
  problems.insert(problems.end(), graph_problems.begin(), graph_problems.end());
  if (cfg.graph.size() != n)
    problems.push_back("graph: " + idx(cfg.graph.size()) + " nodes for " + idx(n) + " attackers");
  std::optional<CommGraph> graph;
  if (graph_problems.empty()) {
    graph.emplace(cfg.graph);
    if (!has_spanning_tree(*graph))
      problems.push_back("graph: no directed spanning tree (the spanning-tree assumption: some "
                         "attacker must reach every other along communication edges)");
  }

  const auto& t = cfg.target;
  if (!(t.V_T > 0.0) || !std::isfinite(t.V_T)) problems.push_back("target.V_T must be positive");
  if (!std::isfinite(t.x) || !std::isfinite(t.y) || !std::isfinite(t.gamma_T))
    problems.push_back("target: position and heading must be finite");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = cfg.attackers[i];
    const std::string who = "attackers[" + idx(i) + "]";
    if (!(a.V > 0.0)) problems.push_back(who + ".V must be positive");
    if (!(a.V < t.V_T)) problems.push_back(who + ".V must be below target.V_T");
    if (!(a.R0 > 0.0)) problems.push_back(who + ".R0 must be positive");
    else if (!(a.R0 > cfg.intercept_eps))
      problems.push_back(who + ".R0 must exceed intercept_eps");
    if (!std::isfinite(a.gamma0) || !std::isfinite(a.lambda0))
      problems.push_back(who + ": angles must be finite");
  }

  const auto& p = cfg.params;
  if (!(p.kappa1 > 1.0)) problems.push_back("params.kappa1 must exceed 1");
  if (!(p.kappa2 > 0.0)) problems.push_back("params.kappa2 must be positive");
  if (!(p.c >= 0.0)) problems.push_back("params.c must be non-negative");
  if (!(p.s <= 0.0)) problems.push_back("params.s must be non-positive");
  if (p.R0.size() != n) {
    problems.push_back("params.R0: " + idx(p.R0.size()) + " entries for " + idx(n) + " attackers");
  } else {
    for (std::size_t i = 0; i < n; ++i)
      if (p.R0[i] != cfg.attackers[i].R0)
        problems.push_back("params.R0[" + idx(i) + "] differs from attackers[" + idx(i) + "].R0");
  }
  if (!std::isfinite(cfg.mu0)) problems.push_back("mu0 must be finite");
  if (!std::isfinite(cfg.z0)) problems.push_back("z0 must be finite");

  if (const auto* exo = std::get_if<ExogenousManeuver>(&cfg.maneuver)) {
    if (!(exo->s <= 0.0)) problems.push_back("maneuver.s must be non-positive");
    if (!std::isfinite(exo->A0)) problems.push_back("maneuver.A0 must be finite");
    if (cfg.mode == GuidanceMode::observer && exo->s != p.s)
      problems.push_back("observer mode: maneuver.s must equal params.s");
  } else {
    const auto& sin = std::get<SinusoidManeuver>(cfg.maneuver);
    if (!std::isfinite(sin.amplitude) || !std::isfinite(sin.omega))
      problems.push_back("maneuver: amplitude and omega must be finite");
    if (cfg.mode == GuidanceMode::observer)
      problems.push_back("observer mode requires an exogenous maneuver");
  }

  if (!(cfg.h > 0.0)) problems.push_back("h must be positive");
  if (!(cfg.t_end > 0.0)) problems.push_back("t_end must be positive");
  if (cfg.h > 0.0 && cfg.t_end > 0.0 && cfg.h > cfg.t_end) problems.push_back("h exceeds t_end");
  if (!(cfg.intercept_eps > 0.0)) problems.push_back("intercept_eps must be positive");

  if (cfg.info.mode == InfoMode::distributed) {
    if (cfg.info.observers.empty())
      problems.push_back("info.observers: at least one attacker must observe the target");
    bool indices_ok = true;
    for (std::size_t o : cfg.info.observers)
      if (o >= n) {
        problems.push_back("info.observers: index " + idx(o) + " out of range");
        indices_ok = false;
      }
    if (graph && indices_ok && !cfg.info.observers.empty() && graph->size() == n) {
      std::vector<bool> covered(n, false);
      for (std::size_t o : cfg.info.observers) {
        const auto r = reachable_from(*graph, o);
        for (std::size_t k = 0; k < n; ++k) covered[k] = covered[k] || r[k];
      }
      for (std::size_t k = 0; k < n; ++k)
        if (!covered[k])
          problems.push_back("info.observers: attacker " + idx(k) + " unreachable from every observer");
    }
  }
  return problems;
}

void validate_or_throw(const ScenarioConfig& cfg) {
  if (auto problems = validate(cfg); !problems.empty()) throw ValidationError(std::move(problems));
}

SimState initial_state(const ScenarioConfig& cfg) {
  const std::size_t n = cfg.attackers.size();
  SimState s;
  s.t = 0.0;
  s.rel.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = cfg.attackers[i];
    RelativeState& r = s.rel[i];
    r.R = a.R0;
    r.lambda = wrap_angle(a.lambda0);
    const auto v = relative_velocity(bearing_angles(r, a.gamma0, cfg.target.gamma_T), a.V,
                                     cfg.target.V_T);
    r.V_r = v.V_r;
    r.V_lambda = v.V_lambda;
  }
  s.mu.assign(n, cfg.mu0);
  s.z.assign(n, cfg.z0);
  s.target = cfg.target;
  s.target.A_T = target_accel_profile(0.0, cfg.maneuver);
  s.active.assign(n, 1);
  return s;
}

double lyapunov_v1(const SimState& s, const CommGraph& g, std::span<const double> R0) {
  double coupled = 0.0;
  double own = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& a = s.rel[i];
    own += a.V_lambda * a.V_lambda;
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double aij = g.weight(i, j);
      if (aij == 0.0) continue;
      const double cross = a.R * s.rel[j].R * std::sin(s.rel[j].lambda - a.lambda);
      coupled += aij * a.V_lambda * a.V_lambda * cross * cross / (R0[i] * R0[i] * R0[j] * R0[j]);
    }
  }
  return 0.5 * coupled + 0.5 * own;
}

double lyapunov_v2(const SimState& s, const CommGraph& g, double c) {
  double consensus = 0.0;
  double adaptive = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      const double aij = g.weight(i, j);
      if (aij == 0.0) continue;
      const double dR = s.rel[i].R - s.rel[j].R;
      const double dV = s.rel[i].V_r - s.rel[j].V_r;
      consensus += aij * (dR * dR + dV * dV);
    }
    const double e = s.rel[i].V_r + c;
    const double mu2 = s.mu[i] * s.mu[i];
    adaptive += mu2 * e * e + mu2;
  }
  return 0.5 * consensus + 0.5 * adaptive;
}

double lyapunov_w(const SimState& s) {
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double err = s.target.A_T - s.z[i];
    sum += s.rel[i].R * s.rel[i].R + s.rel[i].V_r * s.rel[i].V_r + err * err;
  }
  return 0.5 * sum;
}

double lyapunov_v3(const SimState& s, const CommGraph& g, std::span<const double> R0) {
  return lyapunov_v1(s, g, R0) + lyapunov_w(s);
}

double Trace::first_intercept_or_end() const {
  double t = rows.empty() ? 0.0 : rows.back().t;
  for (const auto& e : events) t = std::min(t, e.time);
  return t;
}

Simulator::Simulator(ScenarioConfig cfg, ExecPolicy policy)
    : cfg_((validate_or_throw(cfg), std::move(cfg))),
      policy_(policy),
      n_(cfg_.attackers.size()),
      graph_(cfg_.graph),
      effective_(graph_),
      effective_for_(n_, 1),
      stepper_(6 * n_ + 3),
      perceived_(n_),
      phi_(n_),
      rates_(n_),
      positions_(n_) {
  speeds_.reserve(n_);
  for (const auto& a : cfg_.attackers) speeds_.push_back(a.V);
  stage_ = initial_state(cfg_);
}

void Simulator::refresh_effective_graph(const std::vector<std::uint8_t>& active) {
  if (active == effective_for_) return;
  effective_for_ = active;
  std::vector<bool> keep(active.begin(), active.end());
  effective_ = graph_.without_sources(keep);
}

void Simulator::pack(const SimState& s, std::span<double> y) const {
  for (std::size_t i = 0; i < n_; ++i) {
    y[i] = s.rel[i].R;
    y[n_ + i] = s.rel[i].lambda;
    y[2 * n_ + i] = s.rel[i].V_r;
    y[3 * n_ + i] = s.rel[i].V_lambda;
    y[4 * n_ + i] = s.mu[i];
    y[5 * n_ + i] = s.z[i];
  }
  y[6 * n_] = s.target.x;
  y[6 * n_ + 1] = s.target.y;
  y[6 * n_ + 2] = s.target.gamma_T;
}

void Simulator::unpack(std::span<const double> y, SimState& s) const {
  s.rel.resize(n_);
  s.mu.resize(n_);
  s.z.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    s.rel[i] = {y[i], y[n_ + i], y[2 * n_ + i], y[3 * n_ + i]};
    s.mu[i] = y[4 * n_ + i];
    s.z[i] = y[5 * n_ + i];
  }
  s.target.x = y[6 * n_];
  s.target.y = y[6 * n_ + 1];
  s.target.gamma_T = y[6 * n_ + 2];
}

void Simulator::evaluate(double t, std::span<const double> y, std::span<double> dydt) {
  unpack(y, stage_);
  const double A_T = target_accel_profile(t, cfg_.maneuver);
  const double V_T = cfg_.target.V_T;
  const double gamma_T = stage_.target.gamma_T;

  if (cfg_.info.mode == InfoMode::distributed) {
    std::vector<double> lambdas(n_);
    for (std::size_t k = 0; k < n_; ++k) {
      positions_[k] = reconstruct_position(stage_.target, stage_.rel[k]);
      lambdas[k] = stage_.rel[k].lambda;
    }
    ObservationSet obs;
    for (std::size_t o : cfg_.info.observers) {
      obs.observers.insert(o);
      obs.known[o] = {stage_.rel[o].R, stage_.rel[o].lambda, V_T, gamma_T};
    }
    const FloodResult flooded = flood(graph_, obs, pair_geometry_table(positions_, lambdas));
    for (std::size_t k = 0; k < n_; ++k) {
      const Observation& seen = flooded.set.known.at(k);
      perceived_[k] = {seen.R, seen.lambda, stage_.rel[k].V_r, stage_.rel[k].V_lambda};
    }
  } else {
    std::copy(stage_.rel.begin(), stage_.rel.end(), perceived_.begin());
  }

  RateInputs in;
  in.mode = cfg_.mode;
  in.graph = &effective_;
  in.params = &cfg_.params;
  in.speeds = speeds_;
  in.V_T = V_T;
  in.A_T = A_T;
  in.gamma_T = gamma_T;
  in.truth = stage_.rel;
  in.perceived = perceived_;
  in.mu = stage_.mu;
  in.z = stage_.z;
  in.active = effective_for_;
  attacker_rates(in, policy_, phi_, rates_);

  for (std::size_t i = 0; i < n_; ++i) {
    const AttackerRates& r = rates_[i];
    dydt[i] = r.dR;
    dydt[n_ + i] = r.dlambda;
    dydt[2 * n_ + i] = r.dV_r;
    dydt[3 * n_ + i] = r.dV_lambda;
    dydt[4 * n_ + i] = r.dmu;
    dydt[5 * n_ + i] = r.dz;
  }
  const Vec2 vt = target_velocity(gamma_T, V_T);
  dydt[6 * n_] = vt.x;
  dydt[6 * n_ + 1] = vt.y;
  dydt[6 * n_ + 2] = A_T / V_T;
}

SimState Simulator::step(const SimState& s, std::vector<InterceptEvent>* events) {
  refresh_effective_graph(s.active);
  std::vector<double> y(state_size());
  pack(s, y);
  const double h = cfg_.h;
  try {
    stepper_.step([this](double t, std::span<const double> yy, std::span<double> d) { evaluate(t, yy, d); },
                  s.t, y, h);
  } catch (const SingularGeometry& e) {
    // A stage overshooting the target means the step is far too coarse for
    // the dynamics; the intercept test normally stops attackers well before.
    throw NumericalFailure(s.t + h, e.what());
  }
  if (!all_finite(y)) throw NumericalFailure(s.t + h, "non-finite state");

  SimState next = s;
  unpack(y, next);
  next.t = s.t + h;
  next.target.A_T = target_accel_profile(next.t, cfg_.maneuver);
  // Frozen attackers have zero rates; keep them bit-for-bit.
  for (std::size_t i = 0; i < n_; ++i) {
    if (!s.active[i]) {
      next.rel[i] = s.rel[i];
      next.mu[i] = s.mu[i];
      next.z[i] = s.z[i];
      continue;
    }
    const double before = s.rel[i].R;
    const double after = next.rel[i].R;
    if (after <= cfg_.intercept_eps) {
      next.active[i] = 0;
      if (events) {
        const double frac = before > after ? (before - cfg_.intercept_eps) / (before - after) : 1.0;
        events->push_back({i, s.t + std::clamp(frac, 0.0, 1.0) * h, next.rel[i].V_r,
                           std::abs(next.target.A_T - next.z[i])});
      }
    }
  }
  return next;
}

std::vector<AttackerRates> Simulator::rates(const SimState& s) {
  refresh_effective_graph(s.active);
  std::vector<double> y(state_size());
  std::vector<double> d(state_size());
  pack(s, y);
  evaluate(s.t, y, d);
  return rates_;
}

Diagnostics Simulator::diagnostics(const SimState& s) const {
  Diagnostics d;
  d.S = enclosing_area(s.rel, graph_);
  d.V1 = lyapunov_v1(s, graph_, cfg_.params.R0);
  d.V2 = lyapunov_v2(s, graph_, cfg_.params.c);
  if (cfg_.mode == GuidanceMode::observer) {
    d.W = lyapunov_w(s);
    d.V3 = d.V1 + d.W;
  }
  return d;
}

TraceRow Simulator::sample(const SimState& s) {
  const auto r = rates(s);
  TraceRow row;
  row.t = s.t;
  row.target = s.target;
  row.diag = diagnostics(s);
  row.attackers.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    AttackerSample& a = row.attackers[i];
    a.rel = s.rel[i];
    a.mu = s.mu[i];
    a.z = s.z[i];
    a.control = r[i].control;
    a.accel_mag = std::hypot(a.control.A_Mr, a.control.A_Mlambda);
    a.pos = reconstruct_position(s.target, s.rel[i]);
    a.los_rate = s.rel[i].V_lambda / s.rel[i].R;
    a.active = s.active[i] != 0;
  }
  return row;
}

std::size_t planned_steps(double t_end, double h) {
  const double ratio = t_end / h;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) <= 1e-9 * std::max(1.0, ratio))
    return static_cast<std::size_t>(rounded);
  return static_cast<std::size_t>(std::floor(ratio));
}

Trace run(const ScenarioConfig& cfg, ExecPolicy policy) {
  Simulator sim(cfg, policy);
  Trace trace;
  trace.attackers = cfg.attackers.size();
  trace.h = cfg.h;
  trace.mode = cfg.mode;
  const std::size_t steps = planned_steps(cfg.t_end, cfg.h);
  trace.rows.reserve(steps + 1);

  SimState s = initial_state(cfg);
  trace.rows.push_back(sim.sample(s));
  for (std::size_t k = 0; k < steps; ++k) {
    s = sim.step(s, &trace.events);
    s.t = static_cast<double>(k + 1) * cfg.h;
    trace.rows.push_back(sim.sample(s));
    if (std::none_of(s.active.begin(), s.active.end(), [](std::uint8_t a) { return a != 0; })) break;
  }
  return trace;
}

std::vector<Trace> run_batch(const std::vector<ScenarioConfig>& cfgs, ExecPolicy policy) {
  const auto n = static_cast<std::int64_t>(cfgs.size());
  std::vector<Trace> out(cfgs.size());
  std::vector<std::exception_ptr> errors(cfgs.size());
#pragma omp parallel for schedule(dynamic) if (policy == ExecPolicy::parallel)
  for (std::int64_t k = 0; k < n; ++k) {
    try {
      out[k] = run(cfgs[k], ExecPolicy::serial);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

SimultaneityMetrics simultaneity_metrics(const Trace& trace) {
  SimultaneityMetrics m;
  if (trace.rows.empty()) return m;
  std::vector<bool> hit(trace.attackers, false);
  double first = 0.0, last = 0.0;
  for (std::size_t k = 0; k < trace.events.size(); ++k) {
    const auto& e = trace.events[k];
    hit[e.attacker] = true;
    first = k == 0 ? e.time : std::min(first, e.time);
    last = k == 0 ? e.time : std::max(last, e.time);
  }
  m.spread = trace.events.empty() ? 0.0 : last - first;
  m.all_intercepted = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  m.flagged = !m.all_intercepted;
  if (!m.all_intercepted) {
    const auto& final_row = trace.rows.back();
    for (std::size_t i = 0; i < trace.attackers; ++i)
      if (!hit[i]) m.miss = std::max(m.miss, final_row.attackers[i].rel.R);
  }
  return m;
}

}  // namespace salvo
