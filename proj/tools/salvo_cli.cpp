// Command-line front end: run scenarios, check them against the acceptance
// thresholds, and manage scenario files.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "salvo/check.hpp"
#include "salvo/errors.hpp"
#include "salvo/scenario.hpp"
#include "salvo/sim.hpp"
#include "salvo/trace_io.hpp"

namespace {

enum ExitCode : int { kOk = 0, kCriterionFailed = 1, kNumericalFailure = 2, kBadInput = 3 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative area-reduction guidance simulator"};
  app.require_subcommand(1);
  // --h is the step-size override, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  salvo::Overrides overrides;
  bool parallel = false;
  auto add_overrides = [&](CLI::App* sub) {
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--h", overrides.h, "Integration step (s)");
    sub->add_option("--t-end", overrides.t_end, "Simulated horizon (s)");
    sub->add_option("--intercept-eps", overrides.intercept_eps, "Intercept radius (km)");
    sub->add_flag("--parallel", parallel, "Evaluate attackers with the OpenMP kernel");
  };

  std::string run_target;
  std::filesystem::path out_dir = ".";
  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and write trace.csv and events.csv");
  run_cmd->add_option("config", run_target, "Preset name or config file")->required();
  run_cmd->add_option("--out", out_dir, "Output directory");
  add_overrides(run_cmd);

  std::vector<std::string> check_targets;
  auto* check_cmd = app.add_subcommand("check", "Run scenarios and evaluate the acceptance criteria");
  check_cmd->add_option("config", check_targets, "Preset names or config files")->required();
  add_overrides(check_cmd);

  auto* list_cmd = app.add_subcommand("preset-list", "List built-in scenarios");

  std::string emit_name;
  std::filesystem::path emit_path;
  auto* emit_cmd = app.add_subcommand("emit-config", "Write a preset to an editable config file");
  emit_cmd->add_option("preset", emit_name, "Preset name")->required();
  emit_cmd->add_option("path", emit_path, "Destination file")->required();

  CLI11_PARSE(app, argc, argv);
  const auto policy = parallel ? salvo::ExecPolicy::parallel : salvo::ExecPolicy::serial;

  try {
    if (*list_cmd) {
      for (const auto& name : salvo::preset_names()) std::cout << name << '\n';
      return kOk;
    }

    if (*emit_cmd) {
      auto cfg = salvo::preset(emit_name);
      if (!cfg) {
        std::cerr << "unknown preset '" << emit_name << "'\n";
        return kBadInput;
      }
      salvo::save_scenario(*cfg, emit_path);
      return kOk;
    }

    if (*run_cmd) {
      const auto cfg = salvo::apply_overrides(salvo::resolve_scenario(run_target), overrides);
      const auto trace = salvo::run(cfg, policy);
      std::filesystem::create_directories(out_dir);
      salvo::emit_trace(trace, out_dir / "trace.csv");
      salvo::emit_events(trace, out_dir / "events.csv");
      const auto m = salvo::simultaneity_metrics(trace);
      std::cout << trace.rows.size() << " rows, " << trace.events.size() << "/" << trace.attackers
                << " intercepts, spread " << m.spread << " s\n";
      return kOk;
    }

    if (*check_cmd) {
      std::vector<salvo::ScenarioConfig> cfgs;
      for (const auto& t : check_targets)
        cfgs.push_back(salvo::apply_overrides(salvo::resolve_scenario(t), overrides));
      // Scenarios are independent; the batch runner spreads them over threads.
      const auto traces = salvo::run_batch(cfgs, policy);
      bool ok = true;
      for (std::size_t k = 0; k < cfgs.size(); ++k) {
        const auto report = salvo::evaluate(cfgs[k].name.empty() ? check_targets[k] : cfgs[k].name,
                                            traces[k]);
        salvo::print_report(report, std::cout);
        ok = ok && report.passed();
      }
      return ok ? kOk : kCriterionFailed;
    }
  } catch (const salvo::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const salvo::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kBadInput;
  } catch (const salvo::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadInput;
  }
  return kOk;
}
