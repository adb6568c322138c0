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

#include "hrlq/popularity.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "hrlq/max_flow.hpp"

namespace hrlq {

CorrPolicy CorrPolicy::mirrored() const {
  switch (kind_) {
    case Kind::kPreferenceOrder:
      return *this;
    case Kind::kAdversarial:
      return adversarial(target_ == Side::kFirst ? Side::kSecond : Side::kFirst);
    case Kind::kExplicit: {
      std::vector<HospitalPairing> table = table_;
      for (auto& pairing : table) {
        for (auto& p : pairing) std::swap(p.first, p.second);
      }
      return explicit_pairing(std::move(table));
    }
  }
  return *this;
}

namespace {

struct DifferenceSets {
  std::vector<std::vector<ResidentIndex>> first_only;
  std::vector<std::vector<ResidentIndex>> second_only;
  std::vector<int> first_bottoms;
  std::vector<int> second_bottoms;
};

DifferenceSets difference_sets(const HrlqInstance& instance, const Matching& first,
                               const Matching& second) {
  const int nh = instance.num_hospitals();
  DifferenceSets d;
  d.first_only.resize(nh);
  d.second_only.resize(nh);
  const auto fill_first = first.fill_counts(nh);
  const auto fill_second = second.fill_counts(nh);
  for (ResidentIndex r = 0; r < first.num_residents(); ++r) {
    const HospitalIndex a = first.hospital_of(r);
    const HospitalIndex b = second.hospital_of(r);
    if (a == b) continue;
    if (a != kUnmatched) d.first_only[a].push_back(r);
    if (b != kUnmatched) d.second_only[b].push_back(r);
  }
  // Padded to q+(h) on both sides, empty positions shared by the two
  // matchings are common positions like any other, so only the surplus of
  // one side's bottoms is compared.
  d.first_bottoms.resize(nh);
  d.second_bottoms.resize(nh);
  for (HospitalIndex h = 0; h < nh; ++h) {
    d.first_bottoms[h] = std::max(0, fill_second[h] - fill_first[h]);
    d.second_bottoms[h] = std::max(0, fill_first[h] - fill_second[h]);
  }
  return d;
}

// Min-cost perfect assignment on a square matrix (Hungarian method with
// potentials). Returns, for each row, its column.
std::vector<int> min_cost_assignment(const std::vector<std::vector<int>>& cost) {
  const int n = static_cast<int>(cost.size());
  constexpr int kInf = std::numeric_limits<int>::max() / 4;
  std::vector<int> u(n + 1, 0), v(n + 1, 0), p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<int> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const int cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

HospitalPairing preference_order_pairing(const PreferenceGraph& g, HospitalIndex h,
                                         std::vector<ResidentIndex> first_only,
                                         int first_bottoms,
                                         std::vector<ResidentIndex> second_only,
                                         int second_bottoms) {
  auto by_rank = [&](ResidentIndex a, ResidentIndex b) {
    return *g.hospital_rank(h, a) < *g.hospital_rank(h, b);
  };
  std::sort(first_only.begin(), first_only.end(), by_rank);
  std::sort(second_only.begin(), second_only.end(), by_rank);
  const size_t k = first_only.size() + static_cast<size_t>(first_bottoms);
  HospitalPairing out;
  for (size_t i = 0; i < k; ++i) {
    const ResidentIndex a = i < first_only.size() ? first_only[i] : kBottom;
    const ResidentIndex b = i < second_only.size() ? second_only[i] : kBottom;
    if (a == kBottom && b == kBottom) break;
    out.push_back({a, b});
  }
  (void)second_bottoms;
  return out;
}

void check_explicit_pairing(const PreferenceGraph& g, HospitalIndex h,
                            const HospitalPairing& pairing,
                            const std::vector<ResidentIndex>& first_only, int first_bottoms,
                            const std::vector<ResidentIndex>& second_only,
                            int second_bottoms) {
  auto fail = [&](const std::string& why) {
    throw InstanceError(InstanceErrc::kInvalidParameter,
                        "invalid pairing for '" + g.hospital_id(h) + "': " + why);
  };
  std::vector<ResidentIndex> firsts;
  std::vector<ResidentIndex> seconds;
  int first_bottom_used = 0;
  int second_bottom_used = 0;
  for (const auto& p : pairing) {
    if (p.first == kBottom && p.second == kBottom) fail("bottom paired with bottom");
    if (p.first == kBottom) {
      ++first_bottom_used;
    } else {
      firsts.push_back(p.first);
    }
    if (p.second == kBottom) {
      ++second_bottom_used;
    } else {
      seconds.push_back(p.second);
    }
  }
  std::sort(firsts.begin(), firsts.end());
  std::sort(seconds.begin(), seconds.end());
  if (firsts != first_only) fail("first-side residents are not paired exactly once");
  if (seconds != second_only) fail("second-side residents are not paired exactly once");
  if (first_bottom_used > first_bottoms) fail("too many empty first-side positions");
  if (second_bottom_used > second_bottoms) fail("too many empty second-side positions");
}

}  // namespace

int adversarial_hospital_vote(const PreferenceGraph& graph, HospitalIndex h,
                              std::span<const ResidentIndex> first_only, int first_bottoms,
                              std::span<const ResidentIndex> second_only, int second_bottoms,
                              HospitalPairing* pairing) {
  const int m = static_cast<int>(first_only.size());
  const int n = static_cast<int>(second_only.size());
  // Pairings involving a resident number at most m + n; any surplus positions
  // are bottom-bottom in every pairing and can be dropped from both sides.
  const int k = m + first_bottoms;
  const int surplus = std::max(0, k - (m + n));
  const int size = k - surplus;
  std::vector<ResidentIndex> rows(first_only.begin(), first_only.end());
  rows.resize(size, kBottom);
  std::vector<ResidentIndex> cols(second_only.begin(), second_only.end());
  cols.resize(size, kBottom);
  (void)second_bottoms;

  std::vector<std::vector<int>> cost(size, std::vector<int>(size, 0));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) cost[i][j] = graph.hospital_vote(h, rows[i], cols[j]);
  }
  const auto assignment = min_cost_assignment(cost);
  int total = 0;
  if (pairing != nullptr) pairing->clear();
  for (int i = 0; i < size; ++i) {
    const int j = assignment[i];
    total += cost[i][j];
    if (pairing != nullptr && (rows[i] != kBottom || cols[j] != kBottom)) {
      pairing->push_back({rows[i], cols[j]});
    }
  }
  return total;
}

std::vector<HospitalPairing> build_pairings(const HrlqInstance& instance,
                                            const Matching& first, const Matching& second,
                                            const CorrPolicy& policy) {
  const auto& g = instance.graph();
  const auto d = difference_sets(instance, first, second);
  const int nh = instance.num_hospitals();
  std::vector<HospitalPairing> out(nh);
  for (HospitalIndex h = 0; h < nh; ++h) {
    switch (policy.kind()) {
      case CorrPolicy::Kind::kPreferenceOrder:
        out[h] = preference_order_pairing(g, h, d.first_only[h], d.first_bottoms[h],
                                          d.second_only[h], d.second_bottoms[h]);
        break;
      case CorrPolicy::Kind::kAdversarial: {
        HospitalPairing pairing;
        if (policy.target() == Side::kFirst) {
          adversarial_hospital_vote(g, h, d.first_only[h], d.first_bottoms[h], d.second_only[h],
                                    d.second_bottoms[h], &pairing);
        } else {
          adversarial_hospital_vote(g, h, d.second_only[h], d.second_bottoms[h], d.first_only[h],
                                    d.first_bottoms[h], &pairing);
          for (auto& p : pairing) std::swap(p.first, p.second);
        }
        out[h] = std::move(pairing);
        break;
      }
      case CorrPolicy::Kind::kExplicit: {
        const auto& table = policy.table();
        HospitalPairing pairing = h < static_cast<int>(table.size()) ? table[h] : HospitalPairing{};
        check_explicit_pairing(g, h, pairing, d.first_only[h], d.first_bottoms[h],
                               d.second_only[h], d.second_bottoms[h]);
        out[h] = std::move(pairing);
        break;
      }
    }
  }
  return out;
}

namespace {

void check_pair(const HrlqInstance& instance, const Matching& m, const Matching& n) {
  validate_matching(instance.graph(), instance.upper_quotas(), m);
  validate_matching(instance.graph(), instance.upper_quotas(), n);
}

EdgeLabels labels_from_pairings(const HrlqInstance& instance, const Matching& m,
                                const std::vector<HospitalPairing>& pairings) {
  const auto& g = instance.graph();
  EdgeLabels labels;
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    for (const auto& p : pairings[h]) {
      if (p.second == kBottom) continue;
      const ResidentIndex r = p.second;
      labels[{r, h}] = {g.resident_vote(r, h, m.hospital_of(r)), g.hospital_vote(h, r, p.first)};
    }
  }
  return labels;
}

}  // namespace

VoteOutcome vote(const HrlqInstance& instance, const Matching& m, const Matching& n,
                 const CorrPolicy& policy) {
  check_pair(instance, m, n);
  const auto& g = instance.graph();
  VoteOutcome out;
  for (ResidentIndex r = 0; r < m.num_residents(); ++r) {
    const int v = g.resident_vote(r, m.hospital_of(r), n.hospital_of(r));
    out.delta_for += v > 0;
    out.delta_against += v < 0;
  }
  const auto pairings = build_pairings(instance, m, n, policy);
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    for (const auto& p : pairings[h]) {
      const int v = g.hospital_vote(h, p.first, p.second);
      out.delta_for += v > 0;
      out.delta_against += v < 0;
    }
  }
  out.edge_labels = labels_from_pairings(instance, m, pairings);
  return out;
}

EdgeLabels label_edges(const HrlqInstance& instance, const Matching& m, const Matching& n,
                       const CorrPolicy& policy) {
  check_pair(instance, m, n);
  return labels_from_pairings(instance, m, build_pairings(instance, m, n, policy));
}

std::vector<Component> decompose(const HrlqInstance& instance, const Matching& m,
                                 const Matching& n, const CorrPolicy& policy) {
  check_pair(instance, m, n);
  const auto& g = instance.graph();
  const int nr = m.num_residents();
  const auto pairings = build_pairings(instance, m, n, policy);

  std::vector<DecompEdge> edges;
  std::vector<int> edge_m(nr, -1);
  std::vector<int> edge_n(nr, -1);
  for (ResidentIndex r = 0; r < nr; ++r) {
    if (m.hospital_of(r) == n.hospital_of(r)) continue;
    if (m.is_matched(r)) {
      edge_m[r] = static_cast<int>(edges.size());
      edges.push_back({r, m.hospital_of(r), true});
    }
    if (n.is_matched(r)) {
      edge_n[r] = static_cast<int>(edges.size());
      edges.push_back({r, n.hospital_of(r), false});
    }
  }
  const int ne = static_cast<int>(edges.size());
  std::vector<int> at_resident(ne, -1);
  std::vector<int> at_hospital(ne, -1);
  for (ResidentIndex r = 0; r < nr; ++r) {
    if (edge_m[r] >= 0 && edge_n[r] >= 0) {
      at_resident[edge_m[r]] = edge_n[r];
      at_resident[edge_n[r]] = edge_m[r];
    }
  }
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    for (const auto& p : pairings[h]) {
      if (p.first == kBottom || p.second == kBottom) continue;
      at_hospital[edge_m[p.first]] = edge_n[p.second];
      at_hospital[edge_n[p.second]] = edge_m[p.first];
    }
  }

  std::vector<int> owner(ne, -1);
  std::vector<Component> out;

  // Walks from edge e, leaving through the hospital end if `via_hospital`.
  auto walk = [&](int e, bool via_hospital, Component& comp) {
    const int id = static_cast<int>(out.size());
    int cur = e;
    bool leave_hospital = via_hospital;
    while (cur >= 0 && owner[cur] < 0) {
      owner[cur] = id;
      comp.edges.push_back(edges[cur]);
      const int next = leave_hospital ? at_hospital[cur] : at_resident[cur];
      if (next < 0) {
        comp.end = leave_hospital ? Vertex{true, edges[cur].hospital}
                                  : Vertex{false, edges[cur].resident};
      }
      cur = next;
      // Entered `next` through the same vertex kind we left by.
      leave_hospital = !leave_hospital;
    }
  };

  for (int e = 0; e < ne; ++e) {
    if (owner[e] >= 0) continue;
    const bool open_h = at_hospital[e] < 0;
    const bool open_r = at_resident[e] < 0;
    if (!open_h && !open_r) continue;
    Component comp;
    comp.start = open_h ? Vertex{true, edges[e].hospital} : Vertex{false, edges[e].resident};
    walk(e, /*via_hospital=*/!open_h, comp);
    out.push_back(std::move(comp));
  }
  for (int e = 0; e < ne; ++e) {
    if (owner[e] >= 0) continue;
    Component comp;
    comp.is_cycle = true;
    walk(e, /*via_hospital=*/false, comp);
    out.push_back(std::move(comp));
  }

  for (ResidentIndex r = 0; r < nr; ++r) {
    const int e = edge_m[r] >= 0 ? edge_m[r] : edge_n[r];
    if (e < 0) continue;
    const int v = g.resident_vote(r, m.hospital_of(r), n.hospital_of(r));
    out[owner[e]].votes_first += v > 0;
    out[owner[e]].votes_second += v < 0;
  }
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    for (const auto& p : pairings[h]) {
      const int e = p.first != kBottom ? edge_m[p.first] : edge_n[p.second];
      const int v = g.hospital_vote(h, p.first, p.second);
      out[owner[e]].votes_first += v > 0;
      out[owner[e]].votes_second += v < 0;
    }
  }
  return out;
}

// --- Enumeration --------------------------------------------------------------

namespace {

class FeasibleEnumerator {
 public:
  FeasibleEnumerator(const HrlqInstance& instance, uint64_t limit,
                     const std::function<bool(const Matching&)>& visit)
      : instance_(instance),
        limit_(limit),
        visit_(visit),
        current_(instance.num_residents()),
        fill_(instance.num_hospitals(), 0),
        deficiency_(instance.total_lower_quota()) {}

  EnumerationStatus run() {
    recurse(0);
    return status_;
  }

 private:
  // Returns false to abort.
  bool recurse(ResidentIndex r) {
    const int remaining = instance_.num_residents() - r;
    if (deficiency_ > remaining) return true;
    if (r == instance_.num_residents()) {
      if (status_.count == limit_) {
        status_.truncated = true;
        return false;
      }
      ++status_.count;
      return visit_(current_);
    }
    if (!recurse(r + 1)) return false;
    for (HospitalIndex h : instance_.graph().resident_list(r)) {
      if (fill_[h] == instance_.upper_quota(h)) continue;
      const bool fills_deficit = fill_[h] < instance_.lower_quota(h);
      ++fill_[h];
      deficiency_ -= fills_deficit;
      current_.assign(r, h);
      const bool go_on = recurse(r + 1);
      current_.unassign(r);
      deficiency_ += fills_deficit;
      --fill_[h];
      if (!go_on) return false;
    }
    return true;
  }

  const HrlqInstance& instance_;
  uint64_t limit_;
  const std::function<bool(const Matching&)>& visit_;
  Matching current_;
  std::vector<int> fill_;
  int deficiency_;
  EnumerationStatus status_;
};

}  // namespace

EnumerationStatus enumerate_feasible(const HrlqInstance& instance, uint64_t limit,
                                     const std::function<bool(const Matching&)>& visit) {
  return FeasibleEnumerator(instance, limit, visit).run();
}

std::vector<Matching> enumerate_feasible(const HrlqInstance& instance, uint64_t limit,
                                         EnumerationStatus* status) {
  std::vector<Matching> out;
  const auto s = enumerate_feasible(instance, limit, [&](const Matching& m) {
    out.push_back(m);
    return true;
  });
  if (status != nullptr) *status = s;
  return out;
}

int max_card_feasible(const HrlqInstance& instance) {
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
  const int64_t lower_flow = net.run(source, sink);
  if (lower_flow != instance.total_lower_quota()) {
    throw InstanceError(InstanceErrc::kInvalidParameter, "instance admits no feasible matching");
  }
  for (int h = 0; h < nh; ++h) net.set_capacity(sink_arc[h], instance.upper_quota(h));
  return static_cast<int>(lower_flow + net.run(source, sink));
}

// --- Certification -----------------------------------------------------------

std::string Certificate::to_string(const PreferenceGraph& graph) const {
  std::ostringstream out;
  switch (status) {
    case Status::kPopular:
      out << "POPULAR universe=" << universe_size << " policy=adversarial";
      break;
    case Status::kBeaten:
      out << "BEATEN by=" << inline_matching(graph, *beaten_by) << " delta_for=" << delta_for
          << " delta_against=" << delta_against;
      break;
    case Status::kInconclusive:
      out << "INCONCLUSIVE enumerated=" << universe_size << " limit=" << limit;
      break;
  }
  return out.str();
}

namespace {

// Visits the universe; `loses` decides whether m fails against n.
template <typename Loses>
Certificate certify(const HrlqInstance& instance, const Matching& m, uint64_t limit,
                    const std::function<bool(const Matching&)>& in_universe, Loses loses) {
  validate_matching(instance.graph(), instance.upper_quotas(), m);
  Certificate cert;
  cert.limit = limit;
  const auto policy = CorrPolicy::adversarial(Side::kFirst);
  const auto status = enumerate_feasible(instance, limit, [&](const Matching& n) {
    if (!in_universe(n)) return true;
    ++cert.universe_size;
    const auto outcome = vote(instance, m, n, policy);
    if (loses(outcome)) {
      cert.status = Certificate::Status::kBeaten;
      cert.beaten_by = n;
      cert.delta_for = outcome.delta_for;
      cert.delta_against = outcome.delta_against;
      return false;
    }
    return true;
  });
  if (cert.status != Certificate::Status::kBeaten && status.truncated) {
    cert.status = Certificate::Status::kInconclusive;
  }
  return cert;
}

}  // namespace

Certificate certify_popular(const HrlqInstance& instance, const Matching& m, Universe among,
                            uint64_t limit) {
  std::function<bool(const Matching&)> in_universe = [](const Matching&) { return true; };
  if (among == Universe::kMaxCardinality) {
    const int best = max_card_feasible(instance);
    in_universe = [best](const Matching& n) { return n.size() == best; };
  }
  return certify(instance, m, limit, in_universe,
                 [](const VoteOutcome& o) { return o.second_more_popular(); });
}

Certificate certify_beats_larger(const HrlqInstance& instance, const Matching& m,
                                 uint64_t limit) {
  const int size = m.size();
  return certify(
      instance, m, limit, [size](const Matching& n) { return n.size() > size; },
      [](const VoteOutcome& o) { return !o.first_more_popular(); });
}

}  // namespace hrlq
