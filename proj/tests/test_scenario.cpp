#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "salvo/angles.hpp"
#include "salvo/errors.hpp"
#include "salvo/scenario.hpp"
#include "salvo/trace_io.hpp"

using namespace salvo;

namespace {

bool mentions(const ValidationError& e, const std::string& needle) {
  for (const auto& p : e.problems())
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

std::vector<std::string> problems_of(const ScenarioConfig& cfg) {
  try {
    validate_or_throw(cfg);
  } catch (const ValidationError& e) {
    return e.problems();
  }
  return {};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST(Scenario, PresetsCarryTheTableValues) {
  const auto names = preset_names();
  EXPECT_EQ(names.size(), 4u);
  for (const auto& n : names) {
    const auto p = preset(n);
    ASSERT_TRUE(p.has_value()) << n;
    EXPECT_TRUE(validate(*p).empty()) << n;
  }
  EXPECT_FALSE(preset("example3").has_value());

  const auto e1 = *preset("example1");
  EXPECT_EQ(e1.attackers.size(), 4u);
  EXPECT_EQ(e1.attackers[2].lambda0, -1.3135);
  EXPECT_EQ(e1.attackers[3].R0, 10.1242);
  EXPECT_EQ(e1.attackers[1].gamma0, -1.0472);
  EXPECT_EQ(e1.target.gamma_T, 1.0472);
  EXPECT_EQ(e1.params.kappa1, 4.0);
  EXPECT_EQ(e1.t_end, 20.0);
  EXPECT_EQ(e1.mode, GuidanceMode::known_accel);
  EXPECT_EQ(std::get<SinusoidManeuver>(e1.maneuver), (SinusoidManeuver{0.1, 10.0}));

  const auto e2 = *preset("example2");
  EXPECT_EQ(e2.target.gamma_T, -1.0472);
  EXPECT_EQ(e2.params.kappa2, 5.0);
  EXPECT_EQ(e2.params.s, -2.0);
  EXPECT_EQ(e2.t_end, 25.0);
  EXPECT_EQ(e2.mode, GuidanceMode::observer);
  EXPECT_EQ(std::get<ExogenousManeuver>(e2.maneuver), (ExogenousManeuver{0.1, -2.0}));

  // First preset attacker, placed against the target.
  const Vec2 p = reconstruct_position(e1.target, {e1.attackers[0].R0, e1.attackers[0].lambda0, 0, 0});
  EXPECT_NEAR(p.x, 2.0002048052809887, 1e-12);
  EXPECT_NEAR(p.y, 6.000122080061832, 1e-12);
}

TEST(Scenario, RejectsWeakTransverseGain) {
  auto cfg = *preset("example1");
  cfg.params.kappa1 = 0.5;
  const auto problems = problems_of(cfg);
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_NE(problems[0].find("kappa1"), std::string::npos);
}

TEST(Scenario, RejectsGraphWithoutSpanningTree) {
  auto cfg = *preset("example1");
  cfg.graph = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
  try {
    validate_or_throw(cfg);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_TRUE(mentions(e, "spanning-tree assumption"));
  }
}

TEST(Scenario, ReportsEveryProblemAtOnce) {
  auto cfg = *preset("example2");
  cfg.params.kappa2 = -1.0;
  cfg.attackers[1].V = 1.2;
  cfg.params.s = -1.0;
  cfg.h = 0.0;
  const auto problems = problems_of(cfg);
  EXPECT_EQ(problems.size(), 4u);
}

TEST(Scenario, RejectsBadDistributedObservers) {
  auto cfg = *preset("example1");
  cfg.info = {InfoMode::distributed, {}};
  EXPECT_EQ(problems_of(cfg).size(), 1u);
  cfg.info.observers = {9};
  EXPECT_EQ(problems_of(cfg).size(), 1u);
  cfg.info.observers = {0};
  cfg.graph = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}};
  EXPECT_TRUE(problems_of(cfg).empty());
  cfg.info.observers = {2};
  EXPECT_EQ(problems_of(cfg).size(), 2u);  // 0 and 1 are upstream of 2
}

TEST(Scenario, ObserverModeNeedsExogenousManeuver) {
  auto cfg = *preset("example2");
  cfg.maneuver = SinusoidManeuver{};
  EXPECT_EQ(problems_of(cfg).size(), 1u);
}

TEST(Scenario, JsonRoundTrip) {
  for (const auto& name : preset_names()) {
    const auto cfg = *preset(name);
    EXPECT_EQ(from_json(to_json(cfg)), cfg) << name;
  }
  auto gen = oracle::rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto cfg = *preset(trial % 2 ? "example1" : "example2");
    for (auto& a : cfg.attackers) {
      a.V = oracle::uniform(gen, 0.1, 0.99);
      a.gamma0 = oracle::uniform(gen, -kPi, kPi);
      a.lambda0 = oracle::uniform(gen, -kPi, kPi);
      a.R0 = oracle::uniform(gen, 1.0, 20.0);
    }
    cfg.params.R0.clear();
    for (const auto& a : cfg.attackers) cfg.params.R0.push_back(a.R0);
    cfg.params.kappa1 = oracle::uniform(gen, 1.001, 10.0);
    cfg.mu0 = oracle::uniform(gen, -2, 2);
    cfg.h = oracle::uniform(gen, 1e-4, 1e-2);
    cfg.graph[0][2] = oracle::uniform(gen, 0.0, 2.0);
    ASSERT_EQ(from_json(to_json(cfg)), cfg);
  }
}

TEST(Scenario, ParseErrors) {
  EXPECT_THROW(from_json("{ not json"), ParseError);
  EXPECT_THROW(from_json("[1, 2]"), ParseError);
  auto text = to_json(*preset("example1"));
  EXPECT_THROW(from_json(std::string(text).replace(text.find("\"sinusoid\""), 10, "\"zigzag\"")),
               ParseError);
  EXPECT_THROW(from_json(std::string(text).replace(text.find("\"kappa2\""), 8, "\"kappa9\"")),
               ParseError);
  EXPECT_THROW(from_json(std::string(text).replace(text.find("\"known_accel\""), 13, "\"psychic\"")),
               ParseError);
  EXPECT_THROW(load_scenario("/nonexistent/salvo.json"), ParseError);
  EXPECT_THROW(resolve_scenario("no-such-preset"), ParseError);
}

TEST(Scenario, InvalidValuesInJsonAreValidationErrors) {
  auto text = to_json(*preset("example1"));
  const auto at = text.find("\"kappa1\": 4.0");
  ASSERT_NE(at, std::string::npos);
  EXPECT_THROW(from_json(text.replace(at, 13, "\"kappa1\": 0.5")), ValidationError);
}

TEST(Scenario, SaveAndLoad) {
  const auto path = std::filesystem::temp_directory_path() / "salvo_test_example2.json";
  save_scenario(*preset("example2"), path);
  EXPECT_EQ(load_scenario(path), *preset("example2"));
  EXPECT_EQ(resolve_scenario(path.string()), *preset("example2"));
  std::filesystem::remove(path);
}

TEST(Scenario, Overrides) {
  const auto cfg = apply_overrides(*preset("example1"), {0.002, 3.0, 0.05});
  EXPECT_EQ(cfg.h, 0.002);
  EXPECT_EQ(cfg.t_end, 3.0);
  EXPECT_EQ(cfg.intercept_eps, 0.05);
  EXPECT_EQ(apply_overrides(*preset("example1"), {}), *preset("example1"));
  EXPECT_THROW(apply_overrides(*preset("example1"), {-1.0, {}, {}}), ValidationError);
}

TEST(TraceIo, HeaderAndRowCount) {
  auto cfg = *preset("example1");
  cfg.t_end = 0.05;
  const auto trace = run(cfg);
  std::ostringstream out;
  write_trace(trace, out);
  const std::string text = out.str();
  EXPECT_EQ(count_lines(text), 52u);
  const std::string header = text.substr(0, text.find('\n'));
  EXPECT_EQ(header, trace_header(4));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 4 * 11 + 9);
  EXPECT_EQ(header.rfind("t,R_1,lambda_1,Vr_1,Vlam_1,AMr_1,AMlam_1,mu_1,z_1,AM_mag_1,x_1,y_1,R_2", 0), 0u);
  EXPECT_NE(header.find(",x_T,y_T,gamma_T,A_T,S,V1,V2,V3,W"), std::string::npos);
}

TEST(TraceIo, FullRunRowCount) {
  std::ostringstream out;
  write_trace(run(*preset("example1")), out);
  EXPECT_EQ(count_lines(out.str()), 20002u);  // header + t = 0 .. 20 at 1 ms
}

TEST(TraceIo, SingleStepTrace) {
  auto cfg = *preset("example2");
  cfg.t_end = cfg.h;
  const auto trace = run(cfg);
  ASSERT_EQ(trace.rows.size(), 2u);
  std::ostringstream out;
  write_trace(trace, out);
  EXPECT_EQ(count_lines(out.str()), 3u);
  EXPECT_NE(out.str().find("\n0.001,"), std::string::npos);
}

TEST(TraceIo, EmptyTraceRejected) {
  Trace empty;
  std::ostringstream out;
  EXPECT_THROW(write_trace(empty, out), std::invalid_argument);
  EXPECT_THROW(emit_trace(empty, std::filesystem::temp_directory_path() / "x.csv"),
               std::invalid_argument);
}

TEST(TraceIo, EventsFile) {
  Trace t;
  t.attackers = 2;
  t.events = {{1, 24.75, -0.04, 0.0}};
  std::ostringstream out;
  write_events(t, out);
  EXPECT_EQ(out.str(), "attacker,time,V_r\n2,24.75,-0.040000000000000001\n");
}
