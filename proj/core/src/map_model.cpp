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

#include "viewprune/map_model.h"

#include <stdexcept>
#include <utility>

namespace viewprune {

RunHandle MapGraph::begin_run() {
  ++run_index_;
  for (auto& [cid, comp] : components_) {
    ++comp.run_count;
    for (auto& [vid, view] : comp.views) {
      ++view.stats.n_runs;
      view.stats.n_obs_cur = 0;
    }
  }
  const ComponentId active = next_component_id_++;
  Component comp;
  comp.id = active;
  comp.run_count = 1;
  components_.emplace(active, std::move(comp));
  return RunHandle{run_index_, active};
}

View& MapGraph::create_view(ComponentId component, const Pose2D& pose,
                            std::string appearance_key, std::uint32_t frame_index) {
  if (run_index_ == 0) {
    throw std::logic_error("create_view: no active run (call begin_run first)");
  }
  Component& comp = this->component(component);
  const ViewId id = next_view_id_++;
  View view;
  view.id = id;
  view.pose = pose;
  view.appearance_key = std::move(appearance_key);
  view.stats.created_run = run_index_;
  view.stats.created_at = frame_index;
  auto [it, inserted] = comp.views.emplace(id, std::move(view));
  view_lookup_.emplace(id, component);
  return it->second;
}

ViewStats MapGraph::record_observation(ViewId view_id) {
  auto it = view_lookup_.find(view_id);
  if (it == view_lookup_.end()) {
    throw std::invalid_argument("record_observation: unknown view id " + std::to_string(view_id));
  }
  View& view = components_.at(it->second).views.at(view_id);
  ++view.stats.n_obs_cur;
  if (view.stats.n_obs_cur == 1) {
    ++view.stats.n_obs_runs;
  }
  return view.stats;
}

ComponentId MapGraph::merge_components(ComponentId active, ComponentId target,
                                       const Transform2D& active_to_target,
                                       const std::set<ViewId>& reloc_views) {
  if (active == target) {
    throw std::invalid_argument("merge_components: active and target are the same component");
  }
  Component& src = component(active);
  Component& dst = component(target);

  for (auto& [vid, view] : src.views) {
    view.pose = active_to_target.apply(view.pose);
    view_lookup_[vid] = target;
    dst.views.emplace(vid, std::move(view));
  }
  components_.erase(active);

  for (ViewId vid : reloc_views) {
    auto it = dst.views.find(vid);
    if (it == dst.views.end()) {
      throw std::invalid_argument("merge_components: relocalization view " + std::to_string(vid) +
                                  " not in merged component");
    }
    if (it->second.stats.n_obs_runs == 0) {
      throw std::invalid_argument("merge_components: relocalization view " + std::to_string(vid) +
                                  " was never observed");
    }
    it->second.stats.used_for_reloc = true;
  }
  return target;
}

std::size_t MapGraph::delete_views(ComponentId component, const std::set<ViewId>& ids) {
  Component& comp = this->component(component);
  for (ViewId vid : ids) {
    if (!comp.views.contains(vid)) {
      throw std::invalid_argument("delete_views: view " + std::to_string(vid) +
                                  " not in component " + std::to_string(component));
    }
  }
  for (ViewId vid : ids) {
    comp.views.erase(vid);
    view_lookup_.erase(vid);
  }
  return ids.size();
}

Component& MapGraph::component(ComponentId id) {
  auto it = components_.find(id);
  if (it == components_.end()) {
    throw std::invalid_argument("unknown component id " + std::to_string(id));
  }
  return it->second;
}

const Component& MapGraph::component(ComponentId id) const {
  auto it = components_.find(id);
  if (it == components_.end()) {
    throw std::invalid_argument("unknown component id " + std::to_string(id));
  }
  return it->second;
}

const View* MapGraph::find_view(ViewId id) const {
  auto it = view_lookup_.find(id);
  if (it == view_lookup_.end()) {
    return nullptr;
  }
  return &components_.at(it->second).views.at(id);
}

std::size_t MapGraph::total_views() const {
  std::size_t n = 0;
  for (const auto& [cid, comp] : components_) {
    n += comp.views.size();
  }
  return n;
}

Component& MapGraph::add_component(ComponentId id, std::uint32_t run_count) {
  auto [it, inserted] = components_.emplace(id, Component{id, run_count, {}});
  if (!inserted) {
    throw std::invalid_argument("add_component: duplicate component id " + std::to_string(id));
  }
  if (id >= next_component_id_) {
    next_component_id_ = id + 1;
  }
  return it->second;
}

View& MapGraph::insert_view(ComponentId component, View view) {
  Component& comp = this->component(component);
  if (view_lookup_.contains(view.id)) {
    throw std::invalid_argument("insert_view: duplicate view id " + std::to_string(view.id));
  }
  const ViewId id = view.id;
  auto [it, inserted] = comp.views.emplace(id, std::move(view));
  view_lookup_.emplace(id, component);
  if (id >= next_view_id_) {
    next_view_id_ = id + 1;
  }
  return it->second;
}

}  // namespace viewprune
