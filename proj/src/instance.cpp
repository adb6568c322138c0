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

#include "hrlq/instance.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "hrlq/max_flow.hpp"

namespace hrlq {

namespace {

std::string with_line(const std::string& what, int line) {
  if (line <= 0) return what;
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

InstanceError::InstanceError(InstanceErrc code, const std::string& what,
                             int line)
    : std::invalid_argument(with_line(what, line)), code_(code), line_(line) {}

// --- PreferenceGraph ---------------------------------------------------------

PreferenceGraph::PreferenceGraph(
    std::vector<std::string> resident_ids, std::vector<std::string> hospital_ids,
    std::vector<std::vector<HospitalIndex>> resident_prefs,
    std::vector<std::vector<ResidentIndex>> hospital_prefs,
    bool allow_empty_lists)
    : resident_ids_(std::move(resident_ids)),
      hospital_ids_(std::move(hospital_ids)),
      resident_prefs_(std::move(resident_prefs)),
      hospital_prefs_(std::move(hospital_prefs)) {
  const int nr = num_residents();
  const int nh = num_hospitals();
  if (static_cast<int>(resident_prefs_.size()) != nr ||
      static_cast<int>(hospital_prefs_.size()) != nh) {
    throw InstanceError(InstanceErrc::kInvalidParameter,
                        "preference table size does not match vertex count");
  }
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& id : resident_ids_) {
      if (id.empty()) throw InstanceError(InstanceErrc::kSyntax, "empty id");
      if (!seen.insert(id).second)
        throw InstanceError(InstanceErrc::kDuplicateId, "duplicate id '" + id + "'");
    }
    for (const auto& id : hospital_ids_) {
      if (id.empty()) throw InstanceError(InstanceErrc::kSyntax, "empty id");
      if (!seen.insert(id).second)
        throw InstanceError(InstanceErrc::kDuplicateId, "duplicate id '" + id + "'");
    }
  }

  // Position of r within each hospital list, for mirror ranks and symmetry.
  std::vector<std::unordered_map<ResidentIndex, int32_t>> hosp_pos(nh);
  for (HospitalIndex h = 0; h < nh; ++h) {
    const auto& list = hospital_prefs_[h];
    if (list.empty() && !allow_empty_lists) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + hospital_ids_[h] + "'");
    }
    hosp_pos[h].reserve(list.size());
    for (size_t k = 0; k < list.size(); ++k) {
      const ResidentIndex r = list[k];
      if (r < 0 || r >= nr) {
        throw InstanceError(InstanceErrc::kUnknownId,
                            "unknown resident in list of '" + hospital_ids_[h] + "'");
      }
      if (!hosp_pos[h].emplace(r, static_cast<int32_t>(k)).second) {
        throw InstanceError(InstanceErrc::kDuplicatePreference,
                            "duplicate entry '" + resident_ids_[r] +
                                "' in list of '" + hospital_ids_[h] + "'");
      }
    }
  }

  mirror_.resize(nr);
  resident_lookup_.resize(nr);
  int64_t resident_side_edges = 0;
  for (ResidentIndex r = 0; r < nr; ++r) {
    const auto& list = resident_prefs_[r];
    if (list.empty() && !allow_empty_lists) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + resident_ids_[r] + "'");
    }
    auto& mirror = mirror_[r];
    auto& lookup = resident_lookup_[r];
    mirror.reserve(list.size());
    lookup.reserve(list.size());
    for (size_t k = 0; k < list.size(); ++k) {
      const HospitalIndex h = list[k];
      if (h < 0 || h >= nh) {
        throw InstanceError(InstanceErrc::kUnknownId,
                            "unknown hospital in list of '" + resident_ids_[r] + "'");
      }
      auto it = hosp_pos[h].find(r);
      if (it == hosp_pos[h].end()) {
        throw InstanceError(InstanceErrc::kAsymmetricEdge,
                            "asymmetric edge: '" + resident_ids_[r] + "' lists '" +
                                hospital_ids_[h] + "' but not vice versa");
      }
      mirror.push_back(it->second);
      lookup.emplace_back(h, static_cast<int32_t>(k));
    }
    std::sort(lookup.begin(), lookup.end());
    for (size_t k = 1; k < lookup.size(); ++k) {
      if (lookup[k].first == lookup[k - 1].first) {
        throw InstanceError(InstanceErrc::kDuplicatePreference,
                            "duplicate entry '" + hospital_ids_[lookup[k].first] +
                                "' in list of '" + resident_ids_[r] + "'");
      }
    }
    resident_side_edges += static_cast<int64_t>(list.size());
  }
  int64_t hospital_side_edges = 0;
  for (const auto& list : hospital_prefs_) hospital_side_edges += static_cast<int64_t>(list.size());
  if (hospital_side_edges != resident_side_edges) {
    // Some hospital lists a resident that does not list it back.
    for (HospitalIndex h = 0; h < nh; ++h) {
      for (ResidentIndex r : hospital_prefs_[h]) {
        if (!resident_rank(r, h)) {
          throw InstanceError(InstanceErrc::kAsymmetricEdge,
                              "asymmetric edge: '" + hospital_ids_[h] + "' lists '" +
                                  resident_ids_[r] + "' but not vice versa");
        }
      }
    }
  }
  num_edges_ = resident_side_edges;
}

std::optional<int> PreferenceGraph::resident_rank(ResidentIndex r,
                                                  HospitalIndex h) const {
  const auto& lookup = resident_lookup_[r];
  auto it = std::lower_bound(lookup.begin(), lookup.end(),
                             std::pair<HospitalIndex, int32_t>{h, INT32_MIN});
  if (it == lookup.end() || it->first != h) return std::nullopt;
  return it->second;
}

std::optional<int> PreferenceGraph::hospital_rank(HospitalIndex h,
                                                  ResidentIndex r) const {
  const auto k = resident_rank(r, h);
  if (!k) return std::nullopt;
  return mirror_[r][*k];
}

int PreferenceGraph::resident_vote(ResidentIndex r, HospitalIndex a,
                                   HospitalIndex b) const {
  if (a == b) return 0;
  if (b == kUnmatched) return 1;
  if (a == kUnmatched) return -1;
  return *resident_rank(r, a) < *resident_rank(r, b) ? 1 : -1;
}

int PreferenceGraph::hospital_vote(HospitalIndex h, ResidentIndex a,
                                   ResidentIndex b) const {
  if (a == b) return 0;
  if (b < 0) return 1;
  if (a < 0) return -1;
  return *hospital_rank(h, a) < *hospital_rank(h, b) ? 1 : -1;
}

std::optional<ResidentIndex> PreferenceGraph::find_resident(
    std::string_view id) const {
  auto it = std::find(resident_ids_.begin(), resident_ids_.end(), id);
  if (it == resident_ids_.end()) return std::nullopt;
  return static_cast<ResidentIndex>(it - resident_ids_.begin());
}

std::optional<HospitalIndex> PreferenceGraph::find_hospital(
    std::string_view id) const {
  auto it = std::find(hospital_ids_.begin(), hospital_ids_.end(), id);
  if (it == hospital_ids_.end()) return std::nullopt;
  return static_cast<HospitalIndex>(it - hospital_ids_.begin());
}

// --- Instances ---------------------------------------------------------------

HrlqInstance::HrlqInstance(PreferenceGraph graph, std::vector<int> lower_quota,
                           std::vector<int> upper_quota)
    : graph_(std::move(graph)),
      lower_(std::move(lower_quota)),
      upper_(std::move(upper_quota)) {
  const int nh = graph_.num_hospitals();
  if (static_cast<int>(lower_.size()) != nh || static_cast<int>(upper_.size()) != nh) {
    throw InstanceError(InstanceErrc::kInvalidParameter,
                        "quota table size does not match hospital count");
  }
  for (HospitalIndex h = 0; h < nh; ++h) {
    if (upper_[h] <= 0) {
      throw InstanceError(InstanceErrc::kZeroUpperQuota,
                          "hospital '" + graph_.hospital_id(h) + "' has upper quota 0");
    }
    if (lower_[h] < 0 || lower_[h] > upper_[h]) {
      throw InstanceError(InstanceErrc::kQuotaOrder,
                          "hospital '" + graph_.hospital_id(h) +
                              "': lower quota exceeds upper quota (q- > q+)");
    }
  }
  auto check_id = [](const std::string& id) {
    if (id.find_first_of("#!") != std::string::npos) {
      throw InstanceError(InstanceErrc::kReservedCharacter,
                          "id '" + id + "' contains a reserved character ('#' or '!')");
    }
  };
  for (const auto& id : graph_.resident_ids()) check_id(id);
  for (const auto& id : graph_.hospital_ids()) check_id(id);
  for (ResidentIndex r = 0; r < graph_.num_residents(); ++r) {
    if (graph_.resident_list(r).empty()) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + graph_.resident_id(r) + "'");
    }
  }
  for (HospitalIndex h = 0; h < nh; ++h) {
    if (graph_.hospital_list(h).empty()) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + graph_.hospital_id(h) + "'");
    }
  }
}

int HrlqInstance::total_lower_quota() const {
  return std::accumulate(lower_.begin(), lower_.end(), 0);
}

HrInstance::HrInstance(PreferenceGraph graph, std::vector<int> capacity)
    : graph_(std::move(graph)), capacity_(std::move(capacity)) {
  if (static_cast<int>(capacity_.size()) != graph_.num_hospitals()) {
    throw InstanceError(InstanceErrc::kInvalidParameter,
                        "capacity table size does not match hospital count");
  }
  for (HospitalIndex h = 0; h < graph_.num_hospitals(); ++h) {
    if (capacity_[h] < 0) {
      throw InstanceError(InstanceErrc::kInvalidParameter,
                          "hospital '" + graph_.hospital_id(h) + "' has negative capacity");
    }
  }
}

HrInstance relax_lower_quotas(const HrlqInstance& instance) {
  const auto upper = instance.upper_quotas();
  return HrInstance(instance.graph(), std::vector<int>(upper.begin(), upper.end()));
}

// --- Matching ----------------------------------------------------------------

int Matching::size() const {
  return static_cast<int>(std::count_if(hospital_of_.begin(), hospital_of_.end(),
                                        [](HospitalIndex h) { return h != kUnmatched; }));
}

std::vector<std::vector<ResidentIndex>> Matching::by_hospital(int num_hospitals) const {
  std::vector<std::vector<ResidentIndex>> out(num_hospitals);
  for (ResidentIndex r = 0; r < num_residents(); ++r) {
    if (hospital_of_[r] != kUnmatched) out[hospital_of_[r]].push_back(r);
  }
  return out;
}

std::vector<int> Matching::fill_counts(int num_hospitals) const {
  std::vector<int> out(num_hospitals, 0);
  for (HospitalIndex h : hospital_of_) {
    if (h != kUnmatched) ++out[h];
  }
  return out;
}

void validate_matching(const PreferenceGraph& graph, std::span<const int> capacity,
                       const Matching& m) {
  if (m.num_residents() != graph.num_residents()) {
    throw InstanceError(InstanceErrc::kInvalidMatching,
                        "matching covers " + std::to_string(m.num_residents()) +
                            " residents, instance has " +
                            std::to_string(graph.num_residents()));
  }
  std::vector<int> fill(graph.num_hospitals(), 0);
  for (ResidentIndex r = 0; r < m.num_residents(); ++r) {
    const HospitalIndex h = m.hospital_of(r);
    if (h == kUnmatched) continue;
    if (h < 0 || h >= graph.num_hospitals() || !graph.adjacent(r, h)) {
      throw InstanceError(InstanceErrc::kInvalidMatching,
                          "pair for resident '" + graph.resident_id(r) +
                              "' is not an edge");
    }
    if (++fill[h] > capacity[h]) {
      throw InstanceError(InstanceErrc::kInvalidMatching,
                          "hospital '" + graph.hospital_id(h) + "' over capacity");
    }
  }
}

bool is_feasible(const HrlqInstance& instance, const Matching& m) {
  try {
    validate_matching(instance.graph(), instance.upper_quotas(), m);
  } catch (const InstanceError&) {
    return false;
  }
  return count_deficient(instance, m) == 0;
}

int count_deficient(const HrlqInstance& instance, const Matching& m) {
  const auto fill = m.fill_counts(instance.num_hospitals());
  int deficient = 0;
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    if (fill[h] < instance.lower_quota(h)) ++deficient;
  }
  return deficient;
}

// --- Parsing -----------------------------------------------------------------

namespace {

struct RawDecl {
  std::string id;
  std::vector<int> numbers;
  int line;
};

struct RawPref {
  std::string owner;
  std::vector<std::string> entries;
  int line;
};

struct RawFile {
  std::vector<RawDecl> residents;
  std::vector<RawDecl> hospitals;
  std::vector<RawPref> prefs;
};

// '#' opens a comment only at the start of a token, so synthetic ids such as
// "h#2" in reduced instances survive.
std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok.front() == '#') break;
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

int parse_int(const std::string& tok, int line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw InstanceError(InstanceErrc::kSyntax, "expected integer, got '" + tok + "'", line);
  }
  return value;
}

RawFile read_raw(std::istream& in, std::string_view header, int numbers_per_hospital) {
  RawFile raw;
  std::string line;
  int line_no = 0;
  bool seen_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (!seen_header) {
      if (tokens.size() != 1 || tokens[0] != header) {
        throw InstanceError(InstanceErrc::kSyntax,
                            "expected header '" + std::string(header) + "'", line_no);
      }
      seen_header = true;
      continue;
    }
    const std::string& kw = tokens[0];
    if (kw == "resident") {
      if (tokens.size() != 2) {
        throw InstanceError(InstanceErrc::kSyntax, "expected 'resident <id>'", line_no);
      }
      raw.residents.push_back({tokens[1], {}, line_no});
    } else if (kw == "hospital") {
      if (static_cast<int>(tokens.size()) != 2 + numbers_per_hospital) {
        throw InstanceError(InstanceErrc::kSyntax,
                            numbers_per_hospital == 2
                                ? "expected 'hospital <id> <lq> <uq>'"
                                : "expected 'hospital <id> <cap>'",
                            line_no);
      }
      RawDecl decl{tokens[1], {}, line_no};
      for (int i = 0; i < numbers_per_hospital; ++i) {
        decl.numbers.push_back(parse_int(tokens[2 + i], line_no));
      }
      raw.hospitals.push_back(std::move(decl));
    } else if (kw == "pref") {
      if (tokens.size() < 3 || tokens[2] != ":") {
        throw InstanceError(InstanceErrc::kSyntax, "expected 'pref <id> : <id> ...'", line_no);
      }
      raw.prefs.push_back({tokens[1], {tokens.begin() + 3, tokens.end()}, line_no});
    } else {
      throw InstanceError(InstanceErrc::kSyntax, "unknown directive '" + kw + "'", line_no);
    }
  }
  if (!seen_header) {
    throw InstanceError(InstanceErrc::kSyntax,
                        "missing header '" + std::string(header) + "'", line_no);
  }
  return raw;
}

// Resolves ids and checks the structural rules with line numbers attached.
PreferenceGraph resolve_graph(const RawFile& raw, bool allow_empty_lists) {
  std::unordered_map<std::string, int> resident_index;
  std::unordered_map<std::string, int> hospital_index;
  std::vector<std::string> resident_ids;
  std::vector<std::string> hospital_ids;
  for (const auto& d : raw.residents) {
    if (resident_index.count(d.id) || hospital_index.count(d.id)) {
      throw InstanceError(InstanceErrc::kDuplicateId, "duplicate id '" + d.id + "'", d.line);
    }
    resident_index.emplace(d.id, static_cast<int>(resident_ids.size()));
    resident_ids.push_back(d.id);
  }
  for (const auto& d : raw.hospitals) {
    if (resident_index.count(d.id) || hospital_index.count(d.id)) {
      throw InstanceError(InstanceErrc::kDuplicateId, "duplicate id '" + d.id + "'", d.line);
    }
    hospital_index.emplace(d.id, static_cast<int>(hospital_ids.size()));
    hospital_ids.push_back(d.id);
  }

  const int nr = static_cast<int>(resident_ids.size());
  const int nh = static_cast<int>(hospital_ids.size());
  std::vector<std::vector<HospitalIndex>> rprefs(nr);
  std::vector<std::vector<ResidentIndex>> hprefs(nh);
  std::vector<int> rline(nr, 0);
  std::vector<int> hline(nh, 0);

  for (const auto& p : raw.prefs) {
    if (auto it = resident_index.find(p.owner); it != resident_index.end()) {
      const int r = it->second;
      if (rline[r] != 0) {
        throw InstanceError(InstanceErrc::kDuplicateId,
                            "second preference list for '" + p.owner + "'", p.line);
      }
      rline[r] = p.line;
      std::unordered_set<std::string> seen;
      for (const auto& e : p.entries) {
        auto h = hospital_index.find(e);
        if (h == hospital_index.end()) {
          throw InstanceError(InstanceErrc::kUnknownId, "unknown hospital '" + e + "'", p.line);
        }
        if (!seen.insert(e).second) {
          throw InstanceError(InstanceErrc::kDuplicatePreference,
                              "duplicate preference entry '" + e + "'", p.line);
        }
        rprefs[r].push_back(h->second);
      }
    } else if (auto jt = hospital_index.find(p.owner); jt != hospital_index.end()) {
      const int h = jt->second;
      if (hline[h] != 0) {
        throw InstanceError(InstanceErrc::kDuplicateId,
                            "second preference list for '" + p.owner + "'", p.line);
      }
      hline[h] = p.line;
      std::unordered_set<std::string> seen;
      for (const auto& e : p.entries) {
        auto r = resident_index.find(e);
        if (r == resident_index.end()) {
          throw InstanceError(InstanceErrc::kUnknownId, "unknown resident '" + e + "'", p.line);
        }
        if (!seen.insert(e).second) {
          throw InstanceError(InstanceErrc::kDuplicatePreference,
                              "duplicate preference entry '" + e + "'", p.line);
        }
        hprefs[h].push_back(r->second);
      }
    } else {
      throw InstanceError(InstanceErrc::kUnknownId, "unknown id '" + p.owner + "'", p.line);
    }
  }

  for (int r = 0; r < nr; ++r) {
    if (rprefs[r].empty() && !allow_empty_lists) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + resident_ids[r] + "'",
                          rline[r] != 0 ? rline[r] : raw.residents[r].line);
    }
  }
  for (int h = 0; h < nh; ++h) {
    if (hprefs[h].empty() && !allow_empty_lists) {
      throw InstanceError(InstanceErrc::kEmptyPreferenceList,
                          "empty preference list for '" + hospital_ids[h] + "'",
                          hline[h] != 0 ? hline[h] : raw.hospitals[h].line);
    }
  }

  // Symmetry, reported at the line of the list that has the dangling entry.
  std::vector<std::unordered_set<int>> hsets(nh);
  for (int h = 0; h < nh; ++h) hsets[h].insert(hprefs[h].begin(), hprefs[h].end());
  int64_t resident_side = 0;
  for (int r = 0; r < nr; ++r) {
    for (int h : rprefs[r]) {
      if (!hsets[h].count(r)) {
        throw InstanceError(InstanceErrc::kAsymmetricEdge,
                            "asymmetric edge: '" + resident_ids[r] + "' lists '" +
                                hospital_ids[h] + "' but not vice versa",
                            rline[r]);
      }
    }
    resident_side += static_cast<int64_t>(rprefs[r].size());
  }
  std::vector<std::unordered_set<int>> rsets(nr);
  for (int r = 0; r < nr; ++r) rsets[r].insert(rprefs[r].begin(), rprefs[r].end());
  for (int h = 0; h < nh; ++h) {
    for (int r : hprefs[h]) {
      if (!rsets[r].count(h)) {
        throw InstanceError(InstanceErrc::kAsymmetricEdge,
                            "asymmetric edge: '" + hospital_ids[h] + "' lists '" +
                                resident_ids[r] + "' but not vice versa",
                            hline[h]);
      }
    }
  }

  return PreferenceGraph(std::move(resident_ids), std::move(hospital_ids),
                         std::move(rprefs), std::move(hprefs), allow_empty_lists);
}

}  // namespace

HrlqInstance parse_instance(std::istream& in) {
  const RawFile raw = read_raw(in, "HRLQ", 2);
  std::vector<int> lower;
  std::vector<int> upper;
  for (const auto& d : raw.hospitals) {
    const int lq = d.numbers[0];
    const int uq = d.numbers[1];
    if (lq < 0) {
      throw InstanceError(InstanceErrc::kSyntax, "negative lower quota", d.line);
    }
    if (uq <= 0) {
      throw InstanceError(InstanceErrc::kZeroUpperQuota,
                          "hospital '" + d.id + "' needs a non-zero upper quota", d.line);
    }
    if (lq > uq) {
      throw InstanceError(InstanceErrc::kQuotaOrder,
                          "hospital '" + d.id + "': lower quota exceeds upper quota (q- > q+)",
                          d.line);
    }
    lower.push_back(lq);
    upper.push_back(uq);
  }
  for (const auto* decls : {&raw.residents, &raw.hospitals}) {
    for (const auto& d : *decls) {
      if (d.id.find_first_of("#!") != std::string::npos) {
        throw InstanceError(InstanceErrc::kReservedCharacter,
                            "id '" + d.id + "' contains a reserved character ('#' or '!')",
                            d.line);
      }
    }
  }
  return HrlqInstance(resolve_graph(raw, false), std::move(lower), std::move(upper));
}

HrlqInstance parse_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_instance(in);
}

HrInstance parse_hr_instance(std::string_view text) {
  std::istringstream in{std::string(text)};
  const RawFile raw = read_raw(in, "HR", 1);
  std::vector<int> capacity;
  for (const auto& d : raw.hospitals) {
    if (d.numbers[0] < 0) {
      throw InstanceError(InstanceErrc::kSyntax, "negative capacity", d.line);
    }
    capacity.push_back(d.numbers[0]);
  }
  return HrInstance(resolve_graph(raw, true), std::move(capacity));
}

namespace {

void write_prefs(std::ostream& out, const PreferenceGraph& g) {
  for (ResidentIndex r = 0; r < g.num_residents(); ++r) {
    out << "pref " << g.resident_id(r) << " :";
    for (HospitalIndex h : g.resident_list(r)) out << ' ' << g.hospital_id(h);
    out << '\n';
  }
  for (HospitalIndex h = 0; h < g.num_hospitals(); ++h) {
    out << "pref " << g.hospital_id(h) << " :";
    for (ResidentIndex r : g.hospital_list(h)) out << ' ' << g.resident_id(r);
    out << '\n';
  }
}

}  // namespace

std::string serialize(const HrlqInstance& instance) {
  std::ostringstream out;
  const auto& g = instance.graph();
  out << "HRLQ\n";
  for (ResidentIndex r = 0; r < g.num_residents(); ++r) {
    out << "resident " << g.resident_id(r) << '\n';
  }
  for (HospitalIndex h = 0; h < g.num_hospitals(); ++h) {
    out << "hospital " << g.hospital_id(h) << ' ' << instance.lower_quota(h) << ' '
        << instance.upper_quota(h) << '\n';
  }
  write_prefs(out, g);
  return out.str();
}

std::string serialize(const HrInstance& instance) {
  std::ostringstream out;
  const auto& g = instance.graph();
  out << "HR\n";
  for (ResidentIndex r = 0; r < g.num_residents(); ++r) {
    out << "resident " << g.resident_id(r) << '\n';
  }
  for (HospitalIndex h = 0; h < g.num_hospitals(); ++h) {
    out << "hospital " << g.hospital_id(h) << ' ' << instance.capacity(h) << '\n';
  }
  write_prefs(out, g);
  return out.str();
}

std::string serialize_matching(const HrlqInstance& instance, const Matching& m) {
  std::ostringstream out;
  const auto& g = instance.graph();
  for (ResidentIndex r = 0; r < m.num_residents(); ++r) {
    if (m.is_matched(r)) {
      out << "match " << g.resident_id(r) << ' ' << g.hospital_id(m.hospital_of(r)) << '\n';
    }
  }
  out << "# summary matched=" << m.size()
      << " deficient=" << count_deficient(instance, m) << '\n';
  return out.str();
}

Matching parse_matching(const HrlqInstance& instance, std::string_view text) {
  const auto& g = instance.graph();
  Matching m(g.num_residents());
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 3 || tokens[0] != "match") {
      throw InstanceError(InstanceErrc::kSyntax, "expected 'match <resident> <hospital>'",
                          line_no);
    }
    auto r = g.find_resident(tokens[1]);
    auto h = g.find_hospital(tokens[2]);
    if (!r) throw InstanceError(InstanceErrc::kUnknownId, "unknown resident '" + tokens[1] + "'", line_no);
    if (!h) throw InstanceError(InstanceErrc::kUnknownId, "unknown hospital '" + tokens[2] + "'", line_no);
    if (m.is_matched(*r)) {
      throw InstanceError(InstanceErrc::kInvalidMatching,
                          "resident '" + tokens[1] + "' matched twice", line_no);
    }
    m.assign(*r, *h);
  }
  validate_matching(g, instance.upper_quotas(), m);
  return m;
}

std::string inline_matching(const PreferenceGraph& graph, const Matching& m) {
  std::string out;
  for (ResidentIndex r = 0; r < m.num_residents(); ++r) {
    if (!m.is_matched(r)) continue;
    if (!out.empty()) out += ',';
    out += graph.resident_id(r);
    out += ':';
    out += graph.hospital_id(m.hospital_of(r));
  }
  return out.empty() ? "-" : out;
}

// --- Generation --------------------------------------------------------------

namespace {

// Portable bounded draws; the standard distributions are not specified
// bit-for-bit across library implementations.
class Draw {
 public:
  explicit Draw(uint64_t seed) : rng_(seed) {}

  uint64_t below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = rng_();
    } while (x >= limit);
    return x % n;
  }
  int in_range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo) + 1));
  }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

HrlqInstance generate(const GeneratorParams& p) {
  if (p.num_residents < 1 || p.num_hospitals < 1 || p.max_upper_quota < 1 ||
      p.max_lower_quota < 0 || p.max_lower_quota > p.max_upper_quota ||
      !(p.edge_density > 0.0 && p.edge_density <= 1.0)) {
    throw InstanceError(InstanceErrc::kInvalidParameter, "invalid generator parameters");
  }
  Draw draw(p.seed);
  const int nr = p.num_residents;
  const int nh = p.num_hospitals;

  std::vector<int> lower(nh);
  std::vector<int> upper(nh);
  for (int h = 0; h < nh; ++h) {
    upper[h] = draw.in_range(1, p.max_upper_quota);
    lower[h] = draw.in_range(0, std::min(p.max_lower_quota, upper[h]));
  }

  std::vector<std::vector<char>> edge(nr, std::vector<char>(nh, 0));
  for (int r = 0; r < nr; ++r) {
    bool any = false;
    while (!any) {
      for (int h = 0; h < nh; ++h) {
        edge[r][h] = draw.unit() < p.edge_density;
        any = any || edge[r][h];
      }
    }
  }
  for (int h = 0; h < nh; ++h) {
    bool any = false;
    for (int r = 0; r < nr && !any; ++r) any = edge[r][h];
    // The column is empty, so re-sampling it only adds edges.
    while (!any) {
      for (int r = 0; r < nr; ++r) {
        edge[r][h] = draw.unit() < p.edge_density;
        any = any || edge[r][h];
      }
    }
  }

  std::vector<std::vector<HospitalIndex>> rprefs(nr);
  std::vector<std::vector<ResidentIndex>> hprefs(nh);
  for (int r = 0; r < nr; ++r) {
    for (int h = 0; h < nh; ++h) {
      if (edge[r][h]) rprefs[r].push_back(h);
    }
    draw.shuffle(rprefs[r]);
  }
  for (int h = 0; h < nh; ++h) {
    for (int r = 0; r < nr; ++r) {
      if (edge[r][h]) hprefs[h].push_back(r);
    }
    draw.shuffle(hprefs[h]);
  }

  std::vector<std::string> rids(nr);
  std::vector<std::string> hids(nh);
  for (int r = 0; r < nr; ++r) rids[r] = "r" + std::to_string(r + 1);
  for (int h = 0; h < nh; ++h) hids[h] = "h" + std::to_string(h + 1);
  return HrlqInstance(PreferenceGraph(std::move(rids), std::move(hids), std::move(rprefs),
                                      std::move(hprefs), false),
                      std::move(lower), std::move(upper));
}

// --- Feasibility -------------------------------------------------------------

FeasibilityReport check_feasibility(const HrlqInstance& instance) {
  const auto& g = instance.graph();
  const int nr = g.num_residents();
  const int nh = g.num_hospitals();
  const int source = 0;
  const int sink = nr + nh + 1;
  MaxFlow net(nr + nh + 2);
  for (int r = 0; r < nr; ++r) {
    net.add_arc(source, 1 + r, 1);
    for (HospitalIndex h : g.resident_list(r)) net.add_arc(1 + r, 1 + nr + h, 1);
  }
  std::vector<int> sink_arc(nh);
  for (int h = 0; h < nh; ++h) {
    sink_arc[h] = net.add_arc(1 + nr + h, sink, instance.lower_quota(h));
  }
  FeasibilityReport report;
  report.demand = instance.total_lower_quota();
  report.flow = static_cast<int>(net.run(source, sink));
  report.feasible = report.flow == report.demand;
  report.shortfall.resize(nh);
  for (int h = 0; h < nh; ++h) {
    report.shortfall[h] = instance.lower_quota(h) - static_cast<int>(net.flow(sink_arc[h]));
  }
  return report;
}

bool feasibility_exists(const HrlqInstance& instance) {
  return check_feasibility(instance).feasible;
}

}  // namespace hrlq
