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

// Head-to-head voting between two matchings and the brute-force oracles
// built on it.
//
// A hospital h casts q+(h) votes, one per position. Positions common to both
// matchings are indifferent; the remaining ones are compared through a
// pairing ("corr") of M(h)\N(h) against N(h)\M(h), with empty positions
// padded by bottom, which h ranks below every resident.

#ifndef HRLQ_POPULARITY_HPP_
#define HRLQ_POPULARITY_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hrlq/instance.hpp"

namespace hrlq {

inline constexpr ResidentIndex kBottom = -1;

// One compared position: a resident of the first matching's difference set
// (or kBottom) against one of the second's (or kBottom). Bottom-bottom
// positions are never listed.
struct CorrPair {
  ResidentIndex first = kBottom;
  ResidentIndex second = kBottom;
  bool operator==(const CorrPair&) const = default;
};
using HospitalPairing = std::vector<CorrPair>;

enum class Side { kFirst, kSecond };

class CorrPolicy {
 public:
  enum class Kind { kPreferenceOrder, kAdversarial, kExplicit };

  // Both difference sets sorted by h's preference, bottoms last, paired by
  // position.
  static CorrPolicy preference_order() { return CorrPolicy(Kind::kPreferenceOrder); }
  // Each hospital picks the pairing that gives `target` the fewest net votes.
  static CorrPolicy adversarial(Side target) {
    CorrPolicy p(Kind::kAdversarial);
    p.target_ = target;
    return p;
  }
  // One pairing per hospital, indexed by hospital. Checked against the
  // compared matchings when used.
  static CorrPolicy explicit_pairing(std::vector<HospitalPairing> table) {
    CorrPolicy p(Kind::kExplicit);
    p.table_ = std::move(table);
    return p;
  }

  Kind kind() const { return kind_; }
  Side target() const { return target_; }
  const std::vector<HospitalPairing>& table() const { return table_; }

  // The policy to use when the two matchings are swapped.
  CorrPolicy mirrored() const;

 private:
  explicit CorrPolicy(Kind kind) : kind_(kind) {}

  Kind kind_;
  Side target_ = Side::kFirst;
  std::vector<HospitalPairing> table_;
};

// Per-hospital pairings for comparing `first` against `second`. Throws
// InstanceError(kInvalidParameter) when an explicit table is not a valid
// pairing of the padded difference sets.
std::vector<HospitalPairing> build_pairings(const HrlqInstance& instance,
                                            const Matching& first, const Matching& second,
                                            const CorrPolicy& policy);

// Minimum over all pairings of h's signed vote for `first` (the adversarial
// value), solved as an assignment problem.
int adversarial_hospital_vote(const PreferenceGraph& graph, HospitalIndex h,
                              std::span<const ResidentIndex> first_only, int first_bottoms,
                              std::span<const ResidentIndex> second_only, int second_bottoms,
                              HospitalPairing* pairing = nullptr);

// a = +1 iff r prefers h (its partner in the labelled matching) to its other
// partner; b = +1 iff h prefers r to its corr partner on the other side.
struct EdgeLabel {
  int resident = 0;
  int hospital = 0;
  bool operator==(const EdgeLabel&) const = default;
};
using EdgeKey = std::pair<ResidentIndex, HospitalIndex>;
using EdgeLabels = std::map<EdgeKey, EdgeLabel>;

struct VoteOutcome {
  int delta_for = 0;      // voters strictly preferring the first matching
  int delta_against = 0;  // voters strictly preferring the second
  EdgeLabels edge_labels; // on edges of second \ first
  bool first_more_popular() const { return delta_for > delta_against; }
  bool second_more_popular() const { return delta_against > delta_for; }
};

VoteOutcome vote(const HrlqInstance& instance, const Matching& m, const Matching& n,
                 const CorrPolicy& policy);

// Labels on the edges of n \ m when m is compared against n.
EdgeLabels label_edges(const HrlqInstance& instance, const Matching& m, const Matching& n,
                       const CorrPolicy& policy);

// --- M (+) N decomposition -----------------------------------------------------

struct DecompEdge {
  ResidentIndex resident;
  HospitalIndex hospital;
  bool in_first;  // edge of m (else of n)
  bool operator==(const DecompEdge&) const = default;
};

struct Vertex {
  bool is_hospital = false;
  int index = -1;
  bool operator==(const Vertex&) const = default;
};

struct Component {
  bool is_cycle = false;
  std::vector<DecompEdge> edges;  // consecutive edges share a vertex
  Vertex start;                   // path endpoints; unset for cycles
  Vertex end;
  int votes_first = 0;            // votes cast inside this component
  int votes_second = 0;
};

// Maximal alternating paths and cycles of m (+) n. At a resident the m-edge
// continues with its n-edge; at a hospital an edge continues with its corr
// partner, so a hospital may recur along one component.
std::vector<Component> decompose(const HrlqInstance& instance, const Matching& m,
                                 const Matching& n, const CorrPolicy& policy);

// --- Enumeration oracles -------------------------------------------------------

inline constexpr uint64_t kDefaultEnumerationLimit = 1'000'000;

struct EnumerationStatus {
  uint64_t count = 0;
  bool truncated = false;  // more matchings exist beyond `limit`
};

// Every feasible matching exactly once: residents in declaration order, each
// taking bottom first, then hospitals in its preference order. The visitor
// returns false to stop early.
EnumerationStatus enumerate_feasible(const HrlqInstance& instance, uint64_t limit,
                                     const std::function<bool(const Matching&)>& visit);
std::vector<Matching> enumerate_feasible(const HrlqInstance& instance,
                                         uint64_t limit = kDefaultEnumerationLimit,
                                         EnumerationStatus* status = nullptr);

// Largest feasible matching size: lower quotas saturated by max-flow first,
// then augmented within upper quotas. Throws InstanceError on infeasible
// instances.
int max_card_feasible(const HrlqInstance& instance);

// --- Certification -----------------------------------------------------------

enum class Universe { kAllFeasible, kMaxCardinality };

struct Certificate {
  enum class Status { kPopular, kBeaten, kInconclusive };
  Status status = Status::kPopular;
  uint64_t universe_size = 0;
  std::optional<Matching> beaten_by;
  int delta_for = 0;      // votes for the candidate against beaten_by
  int delta_against = 0;  // votes for beaten_by
  uint64_t limit = 0;

  // `POPULAR universe=<n> policy=adversarial`,
  // `BEATEN by=<matching> delta_for=<a> delta_against=<b>` or
  // `INCONCLUSIVE enumerated=<n> limit=<l>`.
  std::string to_string(const PreferenceGraph& graph) const;
};

// Compares m against every matching of the universe with each hospital
// pairing adversarially against m. The reported counterexample is the first
// in enumeration order.
Certificate certify_popular(const HrlqInstance& instance, const Matching& m, Universe among,
                            uint64_t limit = kDefaultEnumerationLimit);

// Checks that m strictly wins (adversarial pairing) against every feasible
// matching larger than it. A failure is reported as kBeaten even when the
// vote is tied.
Certificate certify_beats_larger(const HrlqInstance& instance, const Matching& m,
                                 uint64_t limit = kDefaultEnumerationLimit);

}  // namespace hrlq

#endif  // HRLQ_POPULARITY_HPP_
