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

#include "hrlq/hr_solver.hpp"

#include <algorithm>
#include <deque>
#include <queue>

namespace hrlq {

namespace {

// (rank in hospital list, resident); the top is the worst current assignee.
using RankedResident = std::pair<int32_t, ResidentIndex>;
using WorstFirst = std::priority_queue<RankedResident>;

Matching resident_proposing(const HrInstance& instance) {
  const auto& g = instance.graph();
  const int nr = g.num_residents();
  Matching m(nr);
  std::vector<WorstFirst> held(g.num_hospitals());
  std::vector<size_t> next(nr, 0);
  std::deque<ResidentIndex> free;
  for (ResidentIndex r = 0; r < nr; ++r) free.push_back(r);

  while (!free.empty()) {
    const ResidentIndex r = free.front();
    free.pop_front();
    const auto list = g.resident_list(r);
    const auto ranks = g.mirror_ranks(r);
    while (next[r] < list.size()) {
      const size_t k = next[r]++;
      const HospitalIndex h = list[k];
      const int cap = instance.capacity(h);
      if (cap == 0) continue;
      auto& pool = held[h];
      if (static_cast<int>(pool.size()) < cap) {
        pool.emplace(ranks[k], r);
        m.assign(r, h);
        break;
      }
      if (pool.top().first > ranks[k]) {
        const ResidentIndex evicted = pool.top().second;
        pool.pop();
        m.unassign(evicted);
        free.push_back(evicted);
        pool.emplace(ranks[k], r);
        m.assign(r, h);
        break;
      }
    }
  }
  return m;
}

Matching hospital_proposing(const HrInstance& instance) {
  const auto& g = instance.graph();
  const int nh = g.num_hospitals();
  Matching m(g.num_residents());
  std::vector<int> fill(nh, 0);
  std::vector<size_t> next(nh, 0);
  std::deque<HospitalIndex> open;
  for (HospitalIndex h = 0; h < nh; ++h) {
    if (instance.capacity(h) > 0) open.push_back(h);
  }

  while (!open.empty()) {
    const HospitalIndex h = open.front();
    open.pop_front();
    const auto list = g.hospital_list(h);
    while (fill[h] < instance.capacity(h) && next[h] < list.size()) {
      const ResidentIndex r = list[next[h]++];
      const HospitalIndex current = m.hospital_of(r);
      if (current != kUnmatched && g.resident_vote(r, h, current) <= 0) continue;
      if (current != kUnmatched) {
        if (fill[current]-- == instance.capacity(current)) open.push_back(current);
      }
      m.assign(r, h);
      ++fill[h];
    }
  }
  return m;
}

}  // namespace

Matching gale_shapley(const HrInstance& instance, ProposingSide side) {
  return side == ProposingSide::kResidents ? resident_proposing(instance)
                                           : hospital_proposing(instance);
}

std::vector<BlockingPair> find_blocking_pairs(const HrInstance& instance,
                                              const Matching& m) {
  const auto& g = instance.graph();
  validate_matching(g, instance.capacities(), m);
  const int nh = g.num_hospitals();
  std::vector<int> fill(nh, 0);
  // Worst rank currently held by each hospital.
  std::vector<int> worst(nh, -1);
  for (ResidentIndex r = 0; r < g.num_residents(); ++r) {
    const HospitalIndex h = m.hospital_of(r);
    if (h == kUnmatched) continue;
    ++fill[h];
    worst[h] = std::max(worst[h], *g.hospital_rank(h, r));
  }
  std::vector<BlockingPair> out;
  for (ResidentIndex r = 0; r < g.num_residents(); ++r) {
    const auto list = g.resident_list(r);
    const auto ranks = g.mirror_ranks(r);
    const HospitalIndex current = m.hospital_of(r);
    for (size_t k = 0; k < list.size(); ++k) {
      const HospitalIndex h = list[k];
      if (h == current) break;
      if (fill[h] < instance.capacity(h) || ranks[k] < worst[h]) {
        out.emplace_back(r, h);
      }
    }
  }
  return out;
}

bool is_stable(const HrInstance& instance, const Matching& m) {
  return find_blocking_pairs(instance, m).empty();
}

std::optional<Matching> check_stable_feasible(const HrlqInstance& instance) {
  Matching m = gale_shapley(relax_lower_quotas(instance));
  if (count_deficient(instance, m) > 0) return std::nullopt;
  return m;
}

}  // namespace hrlq
