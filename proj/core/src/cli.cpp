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

#include "viewprune/cli.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "viewprune/config_io.h"
#include "viewprune/csv.h"
#include "viewprune/metrics.h"
#include "viewprune/persistence.h"
#include "viewprune/pruner.h"
#include "viewprune/simulator.h"

namespace viewprune {

namespace {

std::string opt_cell(const std::optional<double>& value) {
  return value ? csv_number(*value) : std::string();
}

/// Removes files already written by a failed command.
class OutputSet {
 public:
  void add(const std::filesystem::path& p) { files_.push_back(p); }
  void discard_all() {
    std::error_code ec;
    for (const auto& p : files_) {
      std::filesystem::remove(p, ec);
    }
  }

 private:
  std::vector<std::filesystem::path> files_;
};

void write_metrics_csv(std::ostream& out, const std::vector<MetricsReport>& reports) {
  write_csv_row(out, {"run", "views_at_end", "reloc_distance", "avg_dist_between_cross_obs",
                      "fraction_cross_observed"});
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const MetricsReport& r = reports[i];
    write_csv_row(out, {std::to_string(i + 1), std::to_string(r.views_at_run_end),
                        opt_cell(r.reloc_distance), opt_cell(r.avg_dist_between_cross_obs),
                        opt_cell(r.fraction_cross_observed)});
  }
}

void write_summary_csv(std::ostream& out, const ExperimentSummary& s) {
  write_csv_row(out, {"growth_rate", "mean_reloc_distance", "mean_avg_dist_between_cross_obs",
                      "mean_fraction_cross_observed"});
  write_csv_row(out, {csv_number(s.growth_rate), opt_cell(s.mean_reloc_distance),
                      opt_cell(s.mean_avg_dist_between_cross_obs),
                      opt_cell(s.mean_fraction_cross_observed)});
}

bool passes_selection(const SelectionThresholds& select, const ExperimentSummary& s) {
  auto within_max = [](const std::optional<double>& value, const std::optional<double>& max) {
    return !max || (value && *value <= *max);
  };
  auto within_min = [](const std::optional<double>& value, const std::optional<double>& min) {
    return !min || (value && *value >= *min);
  };
  return within_max(s.growth_rate, select.growth_rate_max) &&
         within_min(s.growth_rate, select.growth_rate_min) &&
         within_max(s.mean_avg_dist_between_cross_obs, select.dist_between_cross_obs_max) &&
         within_min(s.mean_fraction_cross_observed, select.fraction_cross_observed_min) &&
         within_max(s.mean_reloc_distance, select.reloc_distance_max);
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
  OutputSet outputs;
  try {
    const Environment env = load_environment(options.env_file);
    const SimConfig sim = load_sim_config(options.sim_file);
    const PruneConfig prune = load_prune_config(options.prune_file);
    if (options.n_runs < 2) {
      err << "simulate: need at least 2 runs (growth rate is undefined for 1)\n";
      return 1;
    }

    const ExperimentResult result = lifelong_experiment(
        env, options.n_runs, sim, options.no_prune ? nullptr : &prune, options.seed);

    std::filesystem::create_directories(options.out_dir);
    const auto metrics_path = options.out_dir / "metrics.csv";
    const auto summary_path = options.out_dir / "summary.csv";
    const auto map_path = options.out_dir / "map.txt";
    {
      std::ofstream f(metrics_path, std::ios::binary);
      outputs.add(metrics_path);
      write_metrics_csv(f, result.run_reports);
      if (!f) {
        throw std::runtime_error("writing " + metrics_path.string() + " failed");
      }
    }
    {
      std::ofstream f(summary_path, std::ios::binary);
      outputs.add(summary_path);
      write_summary_csv(f, result.summary);
      if (!f) {
        throw std::runtime_error("writing " + summary_path.string() + " failed");
      }
    }
    outputs.add(map_path);
    save_map(result.final_map, map_path);

    // Outputs must re-parse with our own readers before we report success.
    for (const auto& p : {metrics_path, summary_path}) {
      std::ifstream f(p, std::ios::binary);
      read_csv(f);
    }
    load_map(map_path);

    out << "simulate: " << options.n_runs << " runs, final views "
        << result.view_counts.back() << ", growth rate " << csv_number(result.summary.growth_rate)
        << "\n";
    return 0;
  } catch (const std::exception& e) {
    outputs.discard_all();
    err << "simulate: " << e.what() << "\n";
    return 1;
  }
}

int cmd_prune(const PruneOptions& options, std::ostream& out, std::ostream& err) {
  OutputSet outputs;
  try {
    MapGraph map = load_map(options.map_file);
    const PruneConfig config = load_prune_config(options.config_file);

    std::size_t total_deleted = 0;
    for (const auto& [cid, comp] : map.components()) {
      if (comp.views.empty()) {
        continue;
      }
      RunObservationContext ctx;
      if (options.max_obs) {
        ctx.max_obs = *options.max_obs;
      } else {
        for (const auto& [vid, view] : comp.views) {
          ctx.max_obs = std::max(ctx.max_obs, view.stats.n_obs_cur);
        }
      }
      const PruneReport report = find_views_for_deletion(comp, config, ctx);

      if (comp.views.size() <= config.min_views) {
        out << "component " << cid << ": views=" << comp.views.size()
            << " <= min_views=" << config.min_views << ", no pruning\n";
        continue;
      }
      out << "component " << cid << ": views=" << comp.views.size() << " max_obs=" << ctx.max_obs
          << " delete=" << report.delete_set.size() << "\n";
      for (const auto& [vid, view] : comp.views) {
        out << "  view " << vid;
        if (auto it = report.scores.find(vid); it != report.scores.end()) {
          out << " score=" << csv_number(it->second);
        } else {
          out << " score=-";
        }
        if (report.delete_set.contains(vid)) {
          out << " delete\n";
        } else if (report.rescued_by_nn.contains(vid)) {
          out << " keep_nn_rescue\n";
        } else if (report.protected_new.contains(vid)) {
          out << " keep_new\n";
        } else {
          out << " keep_score\n";
        }
      }
      total_deleted += report.delete_set.size();
      if (!options.dry_run) {
        map.delete_views(cid, report.delete_set);
      }
    }

    if (options.dry_run) {
      out << "dry run: would delete " << total_deleted << " views\n";
      return 0;
    }
    if (options.out_file.empty()) {
      err << "prune: no output file given (use --out or --dry-run)\n";
      return 1;
    }
    outputs.add(options.out_file);
    if (total_deleted == 0) {
      // Nothing changed: preserve the input byte-for-byte.
      std::filesystem::copy_file(options.map_file, options.out_file,
                                 std::filesystem::copy_options::overwrite_existing);
    } else {
      save_map(map, options.out_file);
    }
    load_map(options.out_file);
    out << "pruned " << total_deleted << " views -> " << options.out_file.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    outputs.discard_all();
    err << "prune: " << e.what() << "\n";
    return 1;
  }
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  OutputSet outputs;
  try {
    const SweepSpec spec = load_sweep_spec(options.spec_file);
    const Environment env = load_environment(options.env_file);
    const SimConfig sim = load_sim_config(options.sim_file);

    const std::size_t cells = spec.cell_count();
    std::vector<ExperimentSummary> summaries(cells);
    std::vector<std::exception_ptr> failures(cells);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cells) {
          return;
        }
        try {
          const PruneConfig config = spec.config_for_cell(i);
          // Cell seeds shift by index, so a one-cell sweep reproduces
          // cmd_simulate with the same seed.
          summaries[i] = lifelong_experiment(env, spec.runs_per_cell, sim, &config,
                                             options.seed + i)
                             .summary;
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    };
    unsigned jobs = options.jobs != 0 ? options.jobs : std::thread::hardware_concurrency();
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
    for (const auto& failure : failures) {
      if (failure) {
        std::rethrow_exception(failure);
      }
    }

    outputs.add(options.out_csv);
    {
      std::ofstream f(options.out_csv, std::ios::binary);
      if (!f) {
        throw std::runtime_error("cannot open " + options.out_csv.string() + " for writing");
      }
      if (spec.mode == SweepSpec::Mode::kWeights) {
        write_csv_row(f, {"w1", "w3", "avg_dist_between_cross_obs", "fraction_cross_observed",
                          "growth_rate", "selected"});
        for (std::size_t i = 0; i < cells; ++i) {
          const PruneConfig config = spec.config_for_cell(i);
          const ExperimentSummary& s = summaries[i];
          write_csv_row(f, {csv_number(config.weights.w1), csv_number(config.weights.w3),
                            opt_cell(s.mean_avg_dist_between_cross_obs),
                            opt_cell(s.mean_fraction_cross_observed), csv_number(s.growth_rate),
                            passes_selection(spec.select, s) ? "1" : "0"});
        }
      } else {
        write_csv_row(f, {"nn_threshold", "voxel_x", "voxel_y", "voxel_theta", "reloc_distance",
                          "growth_rate", "selected"});
        for (std::size_t i = 0; i < cells; ++i) {
          const PruneConfig config = spec.config_for_cell(i);
          const ExperimentSummary& s = summaries[i];
          write_csv_row(f, {std::to_string(config.nn_threshold), csv_number(config.voxel.sx),
                            csv_number(config.voxel.sy), csv_number(config.voxel.stheta),
                            opt_cell(s.mean_reloc_distance), csv_number(s.growth_rate),
                            passes_selection(spec.select, s) ? "1" : "0"});
        }
      }
      if (!f) {
        throw std::runtime_error("writing " + options.out_csv.string() + " failed");
      }
    }
    {
      std::ifstream f(options.out_csv, std::ios::binary);
      read_csv(f);
    }
    out << "sweep: " << cells << " cells -> " << options.out_csv.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    outputs.discard_all();
    err << "sweep: " << e.what() << "\n";
    return 1;
  }
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  OutputSet outputs;
  try {
    if (options.inputs.empty()) {
      err << "report: no input CSV files\n";
      return 1;
    }
    std::ostringstream body;
    write_csv_row(body, {"source", "run", "metric", "value"});
    for (const auto& input : options.inputs) {
      std::ifstream f(input, std::ios::binary);
      if (!f) {
        throw std::runtime_error("cannot open " + input.string());
      }
      CsvTable table;
      try {
        table = read_csv(f);
      } catch (const CsvError& e) {
        throw std::runtime_error(input.string() + ": " + e.what());
      }
      if (table.rows.empty()) {
        throw std::runtime_error(input.string() + ": no data rows");
      }
      std::size_t run_col;
      try {
        run_col = table.column("run");
      } catch (const CsvError&) {
        throw std::runtime_error(input.string() + ": missing 'run' column");
      }
      for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
          if (c == run_col || row[c].empty()) {
            continue;
          }
          write_csv_row(body, {input.string(), row[run_col], table.header[c], row[c]});
        }
      }
    }
    if (options.out_file) {
      outputs.add(*options.out_file);
      std::ofstream f(*options.out_file, std::ios::binary);
      f << body.str();
      if (!f) {
        throw std::runtime_error("writing " + options.out_file->string() + " failed");
      }
      std::ifstream check(*options.out_file, std::ios::binary);
      read_csv(check);
    } else {
      out << body.str();
    }
    return 0;
  } catch (const std::exception& e) {
    outputs.discard_all();
    err << "report: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace viewprune
