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

#include "viewprune/metrics.h"

#include <stdexcept>

namespace viewprune {

double growth_rate(const std::vector<std::size_t>& view_counts) {
  const std::size_t n = view_counts.size();
  if (n < 2) {
    throw std::invalid_argument("growth_rate: need view counts for at least 2 runs");
  }
  return (static_cast<double>(view_counts[n - 1]) - static_cast<double>(view_counts[1])) /
         static_cast<double>(n - 1);
}

std::pair<std::optional<double>, double> cross_observation_stats(const RunTrace& trace) {
  if (trace.run_index < 2) {
    throw std::invalid_argument("cross_observation_stats: undefined for the first run");
  }
  std::size_t cross_frames = 0;
  double gap_sum = 0.0;
  double previous = 0.0;  // run start
  for (const FrameEvent& ev : trace.frames) {
    if (!ev.cross_observation) {
      continue;
    }
    ++cross_frames;
    gap_sum += ev.travel - previous;
    previous = ev.travel;
  }
  std::optional<double> avg;
  if (cross_frames > 0) {
    avg = gap_sum / static_cast<double>(cross_frames);
  }
  const double fraction =
      trace.frames.empty() ? 0.0
                           : static_cast<double>(cross_frames) / static_cast<double>(trace.frames.size());
  return {avg, fraction};
}

std::optional<double> relocalization_distance(const RunTrace& trace) {
  if (!trace.reloc_event) {
    return std::nullopt;
  }
  return trace.reloc_event->travel;
}

MetricsReport run_metrics(const RunTrace& trace, std::size_t views_at_run_end) {
  MetricsReport report;
  report.views_at_run_end = views_at_run_end;
  report.reloc_distance = relocalization_distance(trace);
  if (trace.run_index >= 2) {
    auto [avg, fraction] = cross_observation_stats(trace);
    report.avg_dist_between_cross_obs = avg;
    report.fraction_cross_observed = fraction;
  }
  return report;
}

namespace {

class Mean {
 public:
  void add(const std::optional<double>& value) {
    if (value) {
      sum_ += *value;
      ++count_;
    }
  }
  std::optional<double> get() const {
    if (count_ == 0) {
      return std::nullopt;
    }
    return sum_ / static_cast<double>(count_);
  }

 private:
  double sum_ = 0.0;
  std::size_t count_ = 0;
};

}  // namespace

ExperimentSummary aggregate(const std::vector<MetricsReport>& reports,
                            const std::vector<std::size_t>& view_counts) {
  ExperimentSummary summary;
  summary.growth_rate = growth_rate(view_counts);
  Mean reloc, avg_dist, fraction;
  for (const MetricsReport& r : reports) {
    reloc.add(r.reloc_distance);
    avg_dist.add(r.avg_dist_between_cross_obs);
    fraction.add(r.fraction_cross_observed);
  }
  summary.mean_reloc_distance = reloc.get();
  summary.mean_avg_dist_between_cross_obs = avg_dist.get();
  summary.mean_fraction_cross_observed = fraction.get();
  return summary;
}

}  // namespace viewprune
