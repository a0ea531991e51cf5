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

#include "viewprune/config_io.h"

#include <fstream>
#include <functional>

#include "viewprune/keyed_records.h"

namespace viewprune {

namespace {

[[noreturn]] void fail(const std::string& file, std::size_t line, const std::string& msg) {
  throw ConfigError(file, line, msg);
}

void expect_version(RecordReader& reader, const char* tag, const std::string& file) {
  auto rec = reader.next();
  if (!rec || rec->keyword != tag || !rec->positional.empty() || !rec->kv.empty()) {
    fail(file, rec ? rec->line_no : 0, std::string("expected '") + tag + "' version header");
  }
}

double positional_double(const Record& rec, const std::string& file) {
  if (rec.positional.size() != 1 || !rec.kv.empty()) {
    fail(file, rec.line_no, "'" + rec.keyword + "' takes exactly one value");
  }
  return parse_double(rec.positional[0], rec.line_no);
}

std::uint32_t positional_u32(const Record& rec, const std::string& file) {
  if (rec.positional.size() != 1 || !rec.kv.empty()) {
    fail(file, rec.line_no, "'" + rec.keyword + "' takes exactly one value");
  }
  return parse_u32(rec.positional[0], rec.line_no);
}

ScoreWeights parse_weights(const Record& rec) {
  rec.check_keys({"w1", "w2", "w3"});
  ScoreWeights w;
  w.w1 = parse_double(rec.get("w1"), rec.line_no);
  w.w2 = parse_double(rec.get("w2"), rec.line_no);
  w.w3 = parse_double(rec.get("w3"), rec.line_no);
  return w;
}

VoxelSize parse_voxel(const Record& rec) {
  rec.check_keys({"x", "y", "th"});
  VoxelSize v;
  v.sx = parse_double(rec.get("x"), rec.line_no);
  v.sy = parse_double(rec.get("y"), rec.line_no);
  v.stheta = parse_double(rec.get("th"), rec.line_no);
  return v;
}

ScoreThreshold parse_threshold(const Record& rec) {
  rec.check_keys({"abs", "rel"});
  if (rec.has("abs") == rec.has("rel")) {
    throw RecordError(rec.line_no, "score_threshold needs exactly one of abs= or rel=");
  }
  if (rec.has("abs")) {
    return ScoreThreshold::absolute(parse_double(rec.get("abs"), rec.line_no));
  }
  return ScoreThreshold::relative_to_max(parse_double(rec.get("rel"), rec.line_no));
}

template <typename Fn>
auto load_file(const std::filesystem::path& path, Fn reader) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(path.string(), 0, "cannot open file");
  }
  return reader(in, path.string());
}

}  // namespace

Environment read_environment(std::istream& in, const std::string& file) {
  Environment env;
  bool have_dock = false;
  try {
    RecordReader reader(in);
    expect_version(reader, "envfile-v1", file);
    while (auto rec = reader.next()) {
      if (rec->keyword == "name") {
        if (rec->positional.size() != 1) {
          fail(file, rec->line_no, "'name' takes exactly one token");
        }
        env.name = rec->positional[0];
      } else if (rec->keyword == "rect") {
        rec->check_keys({"x0", "y0", "x1", "y1"});
        Rect r;
        r.x0 = parse_double(rec->get("x0"), rec->line_no);
        r.y0 = parse_double(rec->get("y0"), rec->line_no);
        r.x1 = parse_double(rec->get("x1"), rec->line_no);
        r.y1 = parse_double(rec->get("y1"), rec->line_no);
        env.region.push_back(r);
      } else if (rec->keyword == "dock") {
        rec->check_keys({"x", "y", "th"});
        env.dock = Pose2D(parse_double(rec->get("x"), rec->line_no),
                          parse_double(rec->get("y"), rec->line_no),
                          parse_double(rec->get("th"), rec->line_no));
        have_dock = true;
      } else if (rec->keyword == "lighting") {
        if (rec->positional.empty()) {
          fail(file, rec->line_no, "'lighting' needs at least one state");
        }
        env.lighting_states = rec->positional;
      } else if (rec->keyword == "schedule") {
        rec->check_keys({"hold"});
        env.lighting_hold = parse_u32(rec->get("hold"), rec->line_no);
      } else if (rec->keyword == "seed") {
        if (rec->positional.size() != 1) {
          fail(file, rec->line_no, "'seed' takes exactly one value");
        }
        env.seed = parse_u64(rec->positional[0], rec->line_no);
      } else {
        fail(file, rec->line_no, "unknown record '" + rec->keyword + "'");
      }
    }
    env.validate();
  } catch (const RecordError& e) {
    fail(file, e.line, e.what());
  } catch (const std::invalid_argument& e) {
    fail(file, 0, e.what());
  }
  return env;
}

SimConfig read_sim_config(std::istream& in, const std::string& file) {
  SimConfig sim;
  try {
    RecordReader reader(in);
    expect_version(reader, "simfile-v1", file);
    while (auto rec = reader.next()) {
      const std::string& kw = rec->keyword;
      if (kw == "frames_per_run") {
        sim.frames_per_run = positional_u32(*rec, file);
      } else if (kw == "step_distance") {
        sim.step_distance = positional_double(*rec, file);
      } else if (kw == "observation_radius") {
        sim.observation_radius = positional_double(*rec, file);
      } else if (kw == "observation_fov") {
        sim.observation_fov = positional_double(*rec, file);
      } else if (kw == "p_observe_matched") {
        sim.p_observe_matched = positional_double(*rec, file);
      } else if (kw == "p_observe_mismatched") {
        sim.p_observe_mismatched = positional_double(*rec, file);
      } else if (kw == "create_gap_distance") {
        sim.create_gap_distance = positional_double(*rec, file);
      } else if (kw == "reloc_min_views") {
        sim.reloc_min_views = positional_u32(*rec, file);
      } else {
        fail(file, rec->line_no, "unknown record '" + kw + "'");
      }
    }
    sim.validate();
  } catch (const RecordError& e) {
    fail(file, e.line, e.what());
  } catch (const std::invalid_argument& e) {
    fail(file, 0, e.what());
  }
  return sim;
}

PruneConfig read_prune_config(std::istream& in, const std::string& file) {
  PruneConfig config;
  bool have_weights = false;
  bool have_threshold = false;
  try {
    RecordReader reader(in);
    expect_version(reader, "prunefile-v1", file);
    while (auto rec = reader.next()) {
      const std::string& kw = rec->keyword;
      if (kw == "min_views") {
        config.min_views = positional_u32(*rec, file);
      } else if (kw == "nn_threshold") {
        config.nn_threshold = positional_u32(*rec, file);
      } else if (kw == "nn_enabled") {
        config.nn_enabled = positional_u32(*rec, file) != 0;
      } else if (kw == "voxel") {
        config.voxel = parse_voxel(*rec);
      } else if (kw == "score_threshold") {
        config.threshold = parse_threshold(*rec);
        have_threshold = true;
      } else if (kw == "weights") {
        config.weights = parse_weights(*rec);
        have_weights = true;
      } else if (kw == "max_views_cap") {
        config.max_views_cap = positional_u32(*rec, file);
      } else {
        fail(file, rec->line_no, "unknown record '" + kw + "'");
      }
    }
    if (!have_weights) {
      fail(file, 0, "missing 'weights' record");
    }
    if (!have_threshold) {
      fail(file, 0, "missing 'score_threshold' record");
    }
    config.validate();
  } catch (const RecordError& e) {
    fail(file, e.line, e.what());
  } catch (const std::invalid_argument& e) {
    fail(file, 0, e.what());
  }
  return config;
}

std::size_t SweepSpec::cell_count() const {
  if (mode == Mode::kWeights) {
    return w1_values.size() * w3_values.size();
  }
  return nn_thresholds.size() * voxels.size();
}

PruneConfig SweepSpec::config_for_cell(std::size_t index) const {
  PruneConfig config;
  config.min_views = min_views;
  config.threshold = threshold;
  if (mode == Mode::kWeights) {
    // First axis (w1) outermost, matching the row order of the weights table.
    config.weights = ScoreWeights{w1_values[index / w3_values.size()], w2,
                                  w3_values[index % w3_values.size()]};
    config.nn_enabled = false;
  } else {
    config.weights = fixed_weights;
    config.nn_threshold = nn_thresholds[index / voxels.size()];
    config.voxel = voxels[index % voxels.size()];
    config.nn_enabled = true;
  }
  return config;
}

void SweepSpec::validate() const {
  if (runs_per_cell < 2) {
    throw std::invalid_argument("sweep: runs_per_cell must be >= 2 (growth rate needs 2 runs)");
  }
  if (mode == Mode::kWeights) {
    if (w1_values.empty() || w3_values.empty()) {
      throw std::invalid_argument("sweep: weights mode needs non-empty w1_values and w3_values");
    }
  } else {
    if (nn_thresholds.empty() || voxels.empty()) {
      throw std::invalid_argument("sweep: nn mode needs non-empty nn_thresholds and voxel records");
    }
    fixed_weights.validate();
  }
  for (std::size_t i = 0; i < cell_count(); ++i) {
    config_for_cell(i).validate();
  }
}

SweepSpec read_sweep_spec(std::istream& in, const std::string& file) {
  SweepSpec spec;
  bool have_mode = false;
  bool have_threshold = false;
  try {
    RecordReader reader(in);
    expect_version(reader, "sweepfile-v1", file);
    while (auto rec = reader.next()) {
      const std::string& kw = rec->keyword;
      if (kw == "mode") {
        if (rec->positional.size() != 1 ||
            (rec->positional[0] != "weights" && rec->positional[0] != "nn")) {
          fail(file, rec->line_no, "'mode' must be weights or nn");
        }
        spec.mode = rec->positional[0] == "weights" ? SweepSpec::Mode::kWeights
                                                    : SweepSpec::Mode::kNn;
        have_mode = true;
      } else if (kw == "runs_per_cell") {
        spec.runs_per_cell = positional_u32(*rec, file);
      } else if (kw == "min_views") {
        spec.min_views = positional_u32(*rec, file);
      } else if (kw == "score_threshold") {
        spec.threshold = parse_threshold(*rec);
        have_threshold = true;
      } else if (kw == "w1_values") {
        for (const auto& tok : rec->positional) {
          spec.w1_values.push_back(parse_double(tok, rec->line_no));
        }
      } else if (kw == "w3_values") {
        for (const auto& tok : rec->positional) {
          spec.w3_values.push_back(parse_double(tok, rec->line_no));
        }
      } else if (kw == "w2") {
        spec.w2 = positional_double(*rec, file);
      } else if (kw == "nn_thresholds") {
        for (const auto& tok : rec->positional) {
          spec.nn_thresholds.push_back(parse_u32(tok, rec->line_no));
        }
      } else if (kw == "voxel") {
        spec.voxels.push_back(parse_voxel(*rec));
      } else if (kw == "weights") {
        spec.fixed_weights = parse_weights(*rec);
      } else if (kw == "select") {
        rec->check_keys({"growth_rate_max", "growth_rate_min", "dist_between_cross_obs_max",
                         "fraction_cross_observed_min", "reloc_distance_max"});
        if (auto v = rec->get_optional("growth_rate_max")) {
          spec.select.growth_rate_max = parse_double(*v, rec->line_no);
        }
        if (auto v = rec->get_optional("growth_rate_min")) {
          spec.select.growth_rate_min = parse_double(*v, rec->line_no);
        }
        if (auto v = rec->get_optional("dist_between_cross_obs_max")) {
          spec.select.dist_between_cross_obs_max = parse_double(*v, rec->line_no);
        }
        if (auto v = rec->get_optional("fraction_cross_observed_min")) {
          spec.select.fraction_cross_observed_min = parse_double(*v, rec->line_no);
        }
        if (auto v = rec->get_optional("reloc_distance_max")) {
          spec.select.reloc_distance_max = parse_double(*v, rec->line_no);
        }
      } else {
        fail(file, rec->line_no, "unknown record '" + kw + "'");
      }
    }
    if (!have_mode) {
      fail(file, 0, "missing 'mode' record");
    }
    if (!have_threshold) {
      fail(file, 0, "missing 'score_threshold' record");
    }
    spec.validate();
  } catch (const RecordError& e) {
    fail(file, e.line, e.what());
  } catch (const std::invalid_argument& e) {
    fail(file, 0, e.what());
  }
  return spec;
}

Environment load_environment(const std::filesystem::path& path) {
  return load_file(path, read_environment);
}

SimConfig load_sim_config(const std::filesystem::path& path) {
  return load_file(path, read_sim_config);
}

PruneConfig load_prune_config(const std::filesystem::path& path) {
  return load_file(path, read_prune_config);
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  return load_file(path, read_sweep_spec);
}

}  // namespace viewprune
