// Copyright 2026 The csc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csc/errors.hpp"
#include "csc/harness.hpp"
#include "csc/presets.hpp"

namespace csc {
namespace {

void print_config_error(const ConfigError& e, std::ostream& err) {
  err << "error: " << e.what() << "\n";
  if (!e.fields().empty()) {
    err << "offending fields:";
    for (const auto& f : e.fields()) err << " " << f;
    err << "\n";
  }
}

ExperimentConfig resolve(const std::string& preset_name, const std::string& config_path) {
  return preset_name.empty() ? load_config(config_path) : preset(preset_name);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Self-organizing spectrum and association games: experiment runner", "csc"};
  app.require_subcommand(1);
  app.fallthrough();
  int verbosity = 0;
  app.add_flag("-v,--verbose", verbosity, "More diagnostics on stderr");

  // run
  auto* run = app.add_subcommand("run", "Run a preset or a config file");
  std::string run_preset, run_config, run_out;
  std::optional<std::uint64_t> run_seed;
  std::optional<int> run_reps;
  int jobs = 1;
  bool keep_traces = false;
  auto* p_opt = run->add_option("--preset", run_preset, "Preset name (see `list`)");
  auto* c_opt = run->add_option("--config", run_config, "Config file (JSON)")
                    ->check(CLI::ExistingFile);
  p_opt->excludes(c_opt);
  run->add_option("--seed", run_seed, "Base seed (replaces any seed list)");
  run->add_option("--replications", run_reps, "Number of seeds")->check(CLI::PositiveNumber);
  run->add_option("--out", run_out,
                  std::string("Output directory (default: $") + kOutputDirEnv +
                      ", then the config's, then results/<name>)");
  run->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--keep-traces", keep_traces, "Write per-iteration traces to runs.jsonl");

  // validate
  auto* val = app.add_subcommand("validate", "Check a config file or preset");
  std::string val_path, val_preset;
  auto* vp = val->add_option("config", val_path, "Config file (JSON)");
  auto* vpre = val->add_option("--preset", val_preset, "Preset name");
  vp->excludes(vpre);

  // list
  app.add_subcommand("list", "List the shipped presets");

  // report
  auto* rep = app.add_subcommand("report", "Print an analysis table from a results directory");
  std::string rep_dir, rep_metric;
  rep->add_option("results", rep_dir, "Results directory or summary.json")->required();
  std::string metrics_help = "One of:";
  for (auto m : kReportMetrics) metrics_help += " " + std::string(m);
  rep->add_option("--metric", rep_metric, metrics_help)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (run->parsed()) {
      if (run_preset.empty() == run_config.empty()) {
        err << "error: run needs exactly one of --preset or --config\n" << run->help();
        return kExitUsage;
      }
      ExperimentConfig config = resolve(run_preset, run_config);
      if (run_seed) {
        config.base_seed = *run_seed;
        config.seed_list.clear();
      }
      if (run_reps) {
        config.replications = *run_reps;
        config.seed_list.clear();
      }
      if (!run_out.empty()) {
        config.output_dir = run_out;
      } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
        config.output_dir = std::string(env) + "/" + config.name;
      } else if (config.output_dir.empty()) {
        config.output_dir = "results/" + config.name;
      }
      validate(config);
      if (verbosity > 0)
        err << "running " << config.name << " (" << config.seeds().size() << " seeds, "
            << jobs << " jobs, config " << config_digest(config) << ")\n";
      RunOptions options;
      options.jobs = jobs;
      options.keep_traces = keep_traces;
      const ExperimentResult result = run_and_persist(config, options);
      err << "wrote " << config.output_dir << "\n";
      if (!result.summary.failures.empty()) {
        err << "error: " << result.summary.failures.size() << " run(s) failed\n";
        for (const auto& f : result.summary.failures)
          err << "  " << f.config << " seed " << f.seed << ": " << f.message << "\n";
        return kExitFailure;
      }
      return kExitOk;
    }
    if (val->parsed()) {
      if (val_path.empty() == val_preset.empty()) {
        err << "error: validate needs a config file or --preset\n" << val->help();
        return kExitUsage;
      }
      const ExperimentConfig config = resolve(val_preset, val_path);
      out << "ok " << config.name << " " << config_digest(config) << "\n";
      return kExitOk;
    }
    if (app.got_subcommand("list")) {
      for (const auto& p : list_presets())
        out << p.name << "\t" << p.alias << "\t" << p.description << "\n";
      return kExitOk;
    }
    if (rep->parsed()) {
      out << format_report(load_summary(rep_dir), rep_metric);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    print_config_error(e, err);
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace csc
