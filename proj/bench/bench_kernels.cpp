// Serial reference vs OpenMP kernel, per stage evaluation and per batch of runs.

#include <random>

#include <benchmark/benchmark.h>

#include "salvo/angles.hpp"
#include "salvo/kernels.hpp"
#include "salvo/scenario.hpp"
#include "salvo/sim.hpp"

namespace {

struct Swarm {
  std::vector<salvo::RelativeState> rel;
  std::vector<double> speeds, mu, z;
  std::vector<std::uint8_t> active;
  salvo::GuidanceParams params;
  salvo::CommGraph graph;
  std::vector<double> phi;
  std::vector<salvo::AttackerRates> out;

  explicit Swarm(std::size_t n) : graph(salvo::CommGraph::ring(n)), phi(n), out(n) {
    std::mt19937_64 gen(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    // Dense enough that the per-attacker sums dominate.
    auto w = graph.weights();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && u(gen) < 0.25) w[i][j] = 1.0;
    graph = salvo::CommGraph(w);
    for (std::size_t i = 0; i < n; ++i) {
      rel.push_back({1.0 + 10.0 * u(gen), salvo::kPi * (2.0 * u(gen) - 1.0), -u(gen), u(gen) - 0.5});
      speeds.push_back(0.7);
      mu.push_back(1.0);
      z.push_back(0.0);
      active.push_back(1);
      params.R0.push_back(rel.back().R);
    }
  }

  salvo::RateInputs inputs() const {
    salvo::RateInputs in;
    in.mode = salvo::GuidanceMode::observer;
    in.graph = &graph;
    in.params = &params;
    in.speeds = speeds;
    in.A_T = 0.05;
    in.truth = rel;
    in.perceived = rel;
    in.mu = mu;
    in.z = z;
    in.active = active;
    return in;
  }
};

void BM_Rates(benchmark::State& state, salvo::ExecPolicy policy) {
  Swarm s(static_cast<std::size_t>(state.range(0)));
  const auto in = s.inputs();
  for (auto _ : state) {
    salvo::attacker_rates(in, policy, s.phi, s.out);
    benchmark::DoNotOptimize(s.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Batch(benchmark::State& state, salvo::ExecPolicy policy) {
  std::vector<salvo::ScenarioConfig> cfgs;
  for (int k = 0; k < state.range(0); ++k) {
    auto cfg = *salvo::preset(k % 2 ? "example2" : "example1");
    cfg.t_end = 2.0;
    cfg.target.x += 0.01 * k;
    cfgs.push_back(cfg);
  }
  for (auto _ : state) benchmark::DoNotOptimize(salvo::run_batch(cfgs, policy));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Rates, serial, salvo::ExecPolicy::serial)->Arg(4)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Rates, parallel, salvo::ExecPolicy::parallel)->Arg(4)->Arg(64)->Arg(512);
BENCHMARK_CAPTURE(BM_Batch, serial, salvo::ExecPolicy::serial)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Batch, parallel, salvo::ExecPolicy::parallel)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
