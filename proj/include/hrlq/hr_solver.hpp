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

#ifndef HRLQ_HR_SOLVER_HPP_
#define HRLQ_HR_SOLVER_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "hrlq/instance.hpp"

namespace hrlq {

enum class ProposingSide { kResidents, kHospitals };

// Deferred acceptance. Free proposers are served from a FIFO queue seeded in
// declaration order; zero-capacity hospitals are never proposed to.
Matching gale_shapley(const HrInstance& instance,
                      ProposingSide side = ProposingSide::kResidents);

using BlockingPair = std::pair<ResidentIndex, HospitalIndex>;

// All (r,h) not in m such that r is unmatched or prefers h to M(r), and h is
// undersubscribed or prefers r to some member of M(h). Ordered by resident,
// then by r's preference. Throws InstanceError if m is not a matching.
std::vector<BlockingPair> find_blocking_pairs(const HrInstance& instance,
                                              const Matching& m);

bool is_stable(const HrInstance& instance, const Matching& m);

// Stable matching of G+ when it meets every lower quota. By the Rural
// Hospitals Theorem one stable matching decides the question for all.
std::optional<Matching> check_stable_feasible(const HrlqInstance& instance);

}  // namespace hrlq

#endif  // HRLQ_HR_SOLVER_HPP_
