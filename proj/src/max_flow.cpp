/*
Copyright 2026 The hrlq Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "hrlq/max_flow.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <queue>

namespace hrlq {

MaxFlow::MaxFlow(int num_nodes)
    : out_(num_nodes), level_(num_nodes), next_(num_nodes) {}

int MaxFlow::add_arc(int from, int to, int64_t capacity) {
  assert(capacity >= 0);
  const int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, capacity});
  arcs_.push_back({from, 0});
  capacity_.push_back(capacity);
  out_[from].push_back(id);
  out_[to].push_back(id + 1);
  return id / 2;
}

void MaxFlow::set_capacity(int arc, int64_t capacity) {
  const int64_t current = flow(arc);
  assert(capacity >= current);
  capacity_[arc] = capacity;
  arcs_[2 * arc].residual = capacity - current;
}

int64_t MaxFlow::flow(int arc) const { return arcs_[2 * arc + 1].residual; }

bool MaxFlow::build_levels(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop();
    for (int id : out_[u]) {
      const Arc& a = arcs_[id];
      if (a.residual > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[u] + 1;
        queue.push(a.to);
      }
    }
  }
  return level_[sink] >= 0;
}

int64_t MaxFlow::push(int node, int sink, int64_t limit) {
  if (node == sink) return limit;
  for (size_t& i = next_[node]; i < out_[node].size(); ++i) {
    const int id = out_[node][i];
    Arc& a = arcs_[id];
    if (a.residual <= 0 || level_[a.to] != level_[node] + 1) continue;
    const int64_t pushed = push(a.to, sink, std::min(limit, a.residual));
    if (pushed > 0) {
      a.residual -= pushed;
      arcs_[id ^ 1].residual += pushed;
      return pushed;
    }
  }
  return 0;
}

int64_t MaxFlow::run(int source, int sink) {
  int64_t total = 0;
  while (build_levels(source, sink)) {
    std::fill(next_.begin(), next_.end(), 0);
    while (int64_t f = push(source, sink, std::numeric_limits<int64_t>::max())) {
      total += f;
    }
  }
  return total;
}

}  // namespace hrlq
