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

// Instance model for the Hospital-Residents problem, with and without lower
// quotas. Vertices are identified by opaque strings in the file format and
// by dense indices (declaration order) everywhere else.

#ifndef HRLQ_INSTANCE_HPP_
#define HRLQ_INSTANCE_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hrlq {

using ResidentIndex = int32_t;
using HospitalIndex = int32_t;

// Marks an unmatched resident (the bottom element of every preference order).
inline constexpr HospitalIndex kUnmatched = -1;

enum class InstanceErrc {
  kSyntax,
  kUnknownId,
  kDuplicateId,
  kDuplicatePreference,
  kAsymmetricEdge,
  kQuotaOrder,
  kZeroUpperQuota,
  kEmptyPreferenceList,
  kReservedCharacter,
  kInvalidMatching,
  kInvalidParameter,
};

// Raised for malformed files, invalid instances and invalid matchings.
// line() is 1-based, or 0 when the error is not tied to a line.
class InstanceError : public std::invalid_argument {
 public:
  InstanceError(InstanceErrc code, const std::string& what, int line = 0);

  InstanceErrc code() const { return code_; }
  int line() const { return line_; }

 private:
  InstanceErrc code_;
  int line_;
};

// Two-sided strict preference lists over a bipartite edge set. Both sides'
// lists are mutually consistent: h is in list(r) iff r is in list(h).
class PreferenceGraph {
 public:
  PreferenceGraph() = default;

  // Validates ids and list consistency. Throws InstanceError.
  PreferenceGraph(std::vector<std::string> resident_ids,
                  std::vector<std::string> hospital_ids,
                  std::vector<std::vector<HospitalIndex>> resident_prefs,
                  std::vector<std::vector<ResidentIndex>> hospital_prefs,
                  bool allow_empty_lists);

  int num_residents() const { return static_cast<int>(resident_ids_.size()); }
  int num_hospitals() const { return static_cast<int>(hospital_ids_.size()); }
  int64_t num_edges() const { return num_edges_; }

  const std::string& resident_id(ResidentIndex r) const { return resident_ids_[r]; }
  const std::string& hospital_id(HospitalIndex h) const { return hospital_ids_[h]; }
  const std::vector<std::string>& resident_ids() const { return resident_ids_; }
  const std::vector<std::string>& hospital_ids() const { return hospital_ids_; }

  std::span<const HospitalIndex> resident_list(ResidentIndex r) const {
    return resident_prefs_[r];
  }
  std::span<const ResidentIndex> hospital_list(HospitalIndex h) const {
    return hospital_prefs_[h];
  }

  // For position k of r's list, the position of r in the list of the
  // hospital found there.
  std::span<const int32_t> mirror_ranks(ResidentIndex r) const {
    return mirror_[r];
  }

  // Rank of h in r's list (0 = most preferred), or nullopt if not adjacent.
  std::optional<int> resident_rank(ResidentIndex r, HospitalIndex h) const;
  // Rank of r in h's list, or nullopt if not adjacent.
  std::optional<int> hospital_rank(HospitalIndex h, ResidentIndex r) const;
  bool adjacent(ResidentIndex r, HospitalIndex h) const {
    return resident_rank(r, h).has_value();
  }

  // +1 if r prefers a over b, -1 if b over a, 0 if equal; kUnmatched is
  // least preferred.
  int resident_vote(ResidentIndex r, HospitalIndex a, HospitalIndex b) const;
  // Same for hospital h comparing residents; -1 stands for an empty position.
  int hospital_vote(HospitalIndex h, ResidentIndex a, ResidentIndex b) const;

  std::optional<ResidentIndex> find_resident(std::string_view id) const;
  std::optional<HospitalIndex> find_hospital(std::string_view id) const;

  bool operator==(const PreferenceGraph& other) const {
    return resident_ids_ == other.resident_ids_ &&
           hospital_ids_ == other.hospital_ids_ &&
           resident_prefs_ == other.resident_prefs_ &&
           hospital_prefs_ == other.hospital_prefs_;
  }

 private:
  std::vector<std::string> resident_ids_;
  std::vector<std::string> hospital_ids_;
  std::vector<std::vector<HospitalIndex>> resident_prefs_;
  std::vector<std::vector<ResidentIndex>> hospital_prefs_;
  std::vector<std::vector<int32_t>> mirror_;
  // Per resident, (hospital, rank) sorted by hospital for rank lookups.
  std::vector<std::vector<std::pair<HospitalIndex, int32_t>>> resident_lookup_;
  int64_t num_edges_ = 0;
};

// Hospital-Residents instance with lower and upper quotas.
class HrlqInstance {
 public:
  HrlqInstance() = default;
  // Throws InstanceError on q- > q+, q+ == 0, empty lists or reserved
  // characters ('#', '!') in ids.
  HrlqInstance(PreferenceGraph graph, std::vector<int> lower_quota,
               std::vector<int> upper_quota);

  const PreferenceGraph& graph() const { return graph_; }
  int num_residents() const { return graph_.num_residents(); }
  int num_hospitals() const { return graph_.num_hospitals(); }
  int lower_quota(HospitalIndex h) const { return lower_[h]; }
  int upper_quota(HospitalIndex h) const { return upper_[h]; }
  std::span<const int> lower_quotas() const { return lower_; }
  std::span<const int> upper_quotas() const { return upper_; }
  int total_lower_quota() const;

  bool operator==(const HrlqInstance&) const = default;

 private:
  PreferenceGraph graph_;
  std::vector<int> lower_;
  std::vector<int> upper_;
};

// Hospital-Residents instance without lower quotas. Zero capacities and empty
// preference lists are allowed here because the reductions produce them.
class HrInstance {
 public:
  HrInstance() = default;
  HrInstance(PreferenceGraph graph, std::vector<int> capacity);

  const PreferenceGraph& graph() const { return graph_; }
  int num_residents() const { return graph_.num_residents(); }
  int num_hospitals() const { return graph_.num_hospitals(); }
  int capacity(HospitalIndex h) const { return capacity_[h]; }
  std::span<const int> capacities() const { return capacity_; }

  bool operator==(const HrInstance&) const = default;

 private:
  PreferenceGraph graph_;
  std::vector<int> capacity_;
};

// The HR instance G+ obtained by dropping all lower quotas.
HrInstance relax_lower_quotas(const HrlqInstance& instance);

// A resident -> hospital assignment. Works for both instance kinds.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int num_residents)
      : hospital_of_(num_residents, kUnmatched) {}

  int num_residents() const { return static_cast<int>(hospital_of_.size()); }
  HospitalIndex hospital_of(ResidentIndex r) const { return hospital_of_[r]; }
  bool is_matched(ResidentIndex r) const { return hospital_of_[r] != kUnmatched; }
  void assign(ResidentIndex r, HospitalIndex h) { hospital_of_[r] = h; }
  void unassign(ResidentIndex r) { hospital_of_[r] = kUnmatched; }
  std::span<const HospitalIndex> assignment() const { return hospital_of_; }

  int size() const;
  // M(h) for every hospital, residents in increasing index order.
  std::vector<std::vector<ResidentIndex>> by_hospital(int num_hospitals) const;
  std::vector<int> fill_counts(int num_hospitals) const;

  bool operator==(const Matching&) const = default;
  auto operator<=>(const Matching&) const = default;

 private:
  std::vector<HospitalIndex> hospital_of_;
};

// Throws InstanceError(kInvalidMatching) unless every pair is an edge and no
// hospital exceeds its capacity.
void validate_matching(const PreferenceGraph& graph,
                       std::span<const int> capacity, const Matching& m);

// Feasible: valid and q-(h) <= |M(h)| <= q+(h) for all h.
bool is_feasible(const HrlqInstance& instance, const Matching& m);
int count_deficient(const HrlqInstance& instance, const Matching& m);

// --- File formats -----------------------------------------------------------

HrlqInstance parse_instance(std::istream& in);
HrlqInstance parse_instance(std::string_view text);
HrInstance parse_hr_instance(std::string_view text);

std::string serialize(const HrlqInstance& instance);
std::string serialize(const HrInstance& instance);

// `match <r> <h>` lines in resident order, then the summary comment.
std::string serialize_matching(const HrlqInstance& instance, const Matching& m);
// Reads `match` lines; comments and blank lines are ignored.
Matching parse_matching(const HrlqInstance& instance, std::string_view text);
// Compact single-token form used in certification reports: r1:h2,r3:h1
// ("-" for the empty matching).
std::string inline_matching(const PreferenceGraph& graph, const Matching& m);

// --- Generation -------------------------------------------------------------

struct GeneratorParams {
  int num_residents = 1;
  int num_hospitals = 1;
  int max_upper_quota = 1;
  int max_lower_quota = 0;
  double edge_density = 1.0;
  uint64_t seed = 0;
};

// Deterministic in its arguments. Upper quotas are uniform in [1, max_uq],
// lower quotas uniform in [0, min(max_lq, q+)].
HrlqInstance generate(const GeneratorParams& params);

// --- Feasibility ------------------------------------------------------------

struct FeasibilityReport {
  bool feasible = false;
  int demand = 0;          // sum of lower quotas
  int flow = 0;            // lower-quota demand that can be met
  std::vector<int> shortfall;  // per hospital, q-(h) minus its flow
};

// Max-flow check: source->r (1), r->h (1), h->sink (q-(h)).
FeasibilityReport check_feasibility(const HrlqInstance& instance);
bool feasibility_exists(const HrlqInstance& instance);

}  // namespace hrlq

#endif  // HRLQ_INSTANCE_HPP_
