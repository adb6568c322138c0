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

// Level-copy reductions from HRLQ to HR.
//
// Every source hospital h gets `levels` copies h^0..h^{L-1}. Copies below the
// pivot level P keep capacity q+(h); copies at P and above get q-(h). Each
// copy h^s with s <= L-2 owns a set of dummy residents D^s_h, one per unit of
// capacity, whose first choice is h^s and whose second choice is h^{s+1}.
// The exception is the last full-capacity level P-1: only its final q-(h)
// dummies continue to h^P, the others list h^{P-1} alone. A copy's list is the
// level-(s-1) dummies that list it, then h's own list, then D^s_h.
//
// True residents rank all copies, highest level first, each block in their
// original order. A resident matched to level s has been "promoted" s times.
//
//   kind          levels L              pivot P
//   max-popular   2 + sum q-            2
//   popular-max   |R| + sum q-          |R|
//
// Synthetic ids: copies are "<h>#<s>", dummies "<h>!<s>!<i>" (i from 1).

#ifndef HRLQ_REDUCTION_HPP_
#define HRLQ_REDUCTION_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hrlq/hr_solver.hpp"
#include "hrlq/instance.hpp"

namespace hrlq {

enum class ReductionKind { kMaxPopular, kPopularMax };

struct CopyInfo {
  HospitalIndex source;
  int level;
};

struct DummyInfo {
  HospitalIndex source;
  int level;
  int index;  // 1-based within D^level_source
};

class ReducedInstance {
 public:
  const HrInstance& hr() const { return hr_; }
  ReductionKind kind() const { return kind_; }
  int levels() const { return levels_; }
  int pivot() const { return pivot_; }
  int num_true_residents() const { return num_true_residents_; }
  int num_source_hospitals() const { return num_source_hospitals_; }
  int source_lower_quota(HospitalIndex h) const { return source_lower_[h]; }
  int source_upper_quota(HospitalIndex h) const { return source_upper_[h]; }

  HospitalIndex copy(HospitalIndex h, int level) const { return h * levels_ + level; }
  const CopyInfo& copy_of(HospitalIndex reduced) const { return copies_[reduced]; }

  bool is_dummy(ResidentIndex reduced) const { return reduced >= num_true_residents_; }
  // Only valid for dummies.
  const DummyInfo& dummy_of(ResidentIndex reduced) const {
    return dummies_[reduced - num_true_residents_];
  }
  // First reduced index of D^level_h and its size.
  ResidentIndex dummy_begin(HospitalIndex h, int level) const;
  int dummy_count(HospitalIndex h, int level) const;
  int total_dummies(HospitalIndex h) const;
  int total_capacity(HospitalIndex h) const;

 private:
  friend ReducedInstance build_reduction(const HrlqInstance&, ReductionKind);

  HrInstance hr_;
  ReductionKind kind_ = ReductionKind::kMaxPopular;
  int levels_ = 0;
  int pivot_ = 0;
  int num_true_residents_ = 0;
  int num_source_hospitals_ = 0;
  std::vector<int> source_lower_;
  std::vector<int> source_upper_;
  std::vector<CopyInfo> copies_;
  std::vector<DummyInfo> dummies_;
  // dummy_start_[h * levels + s] = reduced index of d^s_{h,1}
  std::vector<ResidentIndex> dummy_start_;
  std::vector<int> dummy_size_;
};

ReducedInstance build_reduction(const HrlqInstance& instance, ReductionKind kind);
// G': maximum-cardinality matching popular among feasible matchings.
ReducedInstance build_g_prime(const HrlqInstance& instance);
// G'': matching popular among maximum-cardinality feasible matchings.
ReducedInstance build_g_double_prime(const HrlqInstance& instance);

// Collapses copies onto their source hospital and drops dummies.
// Throws InstanceError if m_reduced is not a matching of red.hr().
Matching map_back(const ReducedInstance& red, const Matching& m_reduced);

struct LevelStructure {
  std::vector<int> resident_level;                 // R_i membership
  std::vector<std::vector<int>> hospital_levels;   // sorted active levels
};

// Level of each true resident (0 when unmatched) and the levels at which each
// source hospital holds a true resident. Hospitals with no true resident get
// the conventional level: L-1 with a lower quota, otherwise 1 (max-popular)
// or |R|-1 (popular-max).
LevelStructure classify_levels(const ReducedInstance& red, const Matching& m_reduced);

struct ClauseResult {
  std::string clause;
  bool passed = true;
  std::string witness;  // first violation found
};

struct InvariantReport {
  std::vector<ClauseResult> clauses;
  bool all_passed() const;
  std::string to_string() const;
};

// Structural properties every stable matching of the reduction satisfies:
//   1   at most q+(h) true residents across the copies of h
//   2   only level-(L-1) copies undersubscribed
//   3a  an active h^s (s>0) keeps a level-(s-1) dummy on h^{s-1}
//   3b  below s-1, copies are full of their own-level dummies
//   3c  above s+1, copies are full of the previous level's dummies
//   4   at most two consecutive active levels
//   5   a level-s resident has no neighbour active at level >= s+2
InvariantReport check_reduced_invariants(const ReducedInstance& red,
                                         const Matching& m_reduced);

// Properties of the level division of map(M') (undersubscribed, deficient
// and over-lower-quota hospitals sit at the expected levels; level-edge rules).
InvariantReport check_level_invariants(const HrlqInstance& instance,
                                       const ReducedInstance& red,
                                       const Matching& m_reduced);

struct Solution {
  std::optional<Matching> matching;  // absent iff no feasible matching exists
  FeasibilityReport feasibility;
};

// Runs deferred acceptance on the reduction and maps the result back. The
// reduced stable matching is returned through `reduced_out` when given.
Solution solve_reduced(const HrlqInstance& instance, ReductionKind kind,
                       ProposingSide side = ProposingSide::kResidents,
                       Matching* reduced_out = nullptr);

Solution solve_max_popular(const HrlqInstance& instance);
Solution solve_popular_max(const HrlqInstance& instance);

}  // namespace hrlq

#endif  // HRLQ_REDUCTION_HPP_
