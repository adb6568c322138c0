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

#ifndef HRLQ_MAX_FLOW_HPP_
#define HRLQ_MAX_FLOW_HPP_

#include <cstdint>
#include <vector>

namespace hrlq {

// Dinic's algorithm on integral capacities. Calling run() again after raising
// capacities continues from the current flow; since augmenting paths never
// pass through the sink, flow on arcs into the sink never decreases.
class MaxFlow {
 public:
  explicit MaxFlow(int num_nodes);

  // Returns the arc id.
  int add_arc(int from, int to, int64_t capacity);
  void set_capacity(int arc, int64_t capacity);
  int64_t flow(int arc) const;

  // Augments until no s-t path remains; returns the flow added by this call.
  int64_t run(int source, int sink);

 private:
  struct Arc {
    int to;
    int64_t residual;
  };

  bool build_levels(int source, int sink);
  int64_t push(int node, int sink, int64_t limit);

  std::vector<Arc> arcs_;  // arc 2k and its reverse 2k+1
  std::vector<int64_t> capacity_;
  std::vector<std::vector<int>> out_;
  std::vector<int> level_;
  std::vector<size_t> next_;
};

}  // namespace hrlq

#endif  // HRLQ_MAX_FLOW_HPP_
