/*
 * Copyright 2026 The Viewprune Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "viewprune/cli.h"

int main(int argc, char** argv) {
  CLI::App app{"viewprune - view management for lifelong visual SLAM maps"};
  app.require_subcommand(1);

  viewprune::SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand(
      "simulate", "Run a multi-run lifelong mapping experiment and write metrics");
  simulate->add_option("--env", sim_opts.env_file, "environment file")->required();
  simulate->add_option("--sim", sim_opts.sim_file, "simulation config file")->required();
  simulate->add_option("--prune", sim_opts.prune_file, "prune config file")->required();
  simulate->add_option("--runs", sim_opts.n_runs, "number of runs (>= 2)")->required();
  simulate->add_option("--seed", sim_opts.seed, "master random seed")->default_val(0);
  simulate->add_option("--out", sim_opts.out_dir, "output directory")->required();
  simulate->add_flag("--no-prune", sim_opts.no_prune, "skip pruning at run ends");

  viewprune::PruneOptions prune_opts;
  std::uint32_t max_obs_flag = 0;
  auto* prune = app.add_subcommand("prune", "Apply the deletion pass to a saved map");
  prune->add_option("--map", prune_opts.map_file, "input map file")->required();
  prune->add_option("--config", prune_opts.config_file, "prune config file")->required();
  auto* max_obs_opt = prune->add_option(
      "--max-obs", max_obs_flag, "override max_obs (default: per-component max in the file)");
  prune->add_option("--out", prune_opts.out_file, "output map file");
  prune->add_flag("--dry-run", prune_opts.dry_run, "print the report without writing");

  viewprune::SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write one CSV row per cell");
  sweep->add_option("--spec", sweep_opts.spec_file, "sweep spec file")->required();
  sweep->add_option("--env", sweep_opts.env_file, "environment file")->required();
  sweep->add_option("--sim", sweep_opts.sim_file, "simulation config file")->required();
  sweep->add_option("--seed", sweep_opts.seed, "master random seed")->default_val(0);
  sweep->add_option("--out", sweep_opts.out_csv, "output CSV file")->required();
  sweep->add_option("--jobs", sweep_opts.jobs, "worker threads (default: hardware concurrency)");

  viewprune::ReportOptions report_opts;
  std::string report_out;
  auto* report = app.add_subcommand(
      "report", "Re-emit metrics CSVs as long-format (source,run,metric,value) rows");
  report->add_option("inputs", report_opts.inputs, "metrics CSV files")->required();
  auto* report_out_opt = report->add_option("-o,--out", report_out, "output file (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return viewprune::cmd_simulate(sim_opts, std::cout, std::cerr);
  }
  if (prune->parsed()) {
    if (max_obs_opt->count() > 0) {
      prune_opts.max_obs = max_obs_flag;
    }
    return viewprune::cmd_prune(prune_opts, std::cout, std::cerr);
  }
  if (sweep->parsed()) {
    return viewprune::cmd_sweep(sweep_opts, std::cout, std::cerr);
  }
  if (report->parsed()) {
    if (report_out_opt->count() > 0) {
      report_opts.out_file = report_out;
    }
    return viewprune::cmd_report(report_opts, std::cout, std::cerr);
  }
  return 1;
}
