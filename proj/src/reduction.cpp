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

#include "hrlq/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace hrlq {

ResidentIndex ReducedInstance::dummy_begin(HospitalIndex h, int level) const {
  return dummy_start_[h * levels_ + level];
}

int ReducedInstance::dummy_count(HospitalIndex h, int level) const {
  return dummy_size_[h * levels_ + level];
}

int ReducedInstance::total_dummies(HospitalIndex h) const {
  int total = 0;
  for (int s = 0; s < levels_; ++s) total += dummy_count(h, s);
  return total;
}

int ReducedInstance::total_capacity(HospitalIndex h) const {
  int total = 0;
  for (int s = 0; s < levels_; ++s) total += hr_.capacity(copy(h, s));
  return total;
}

ReducedInstance build_reduction(const HrlqInstance& instance, ReductionKind kind) {
  const auto& g = instance.graph();
  const int nr = g.num_residents();
  const int nh = g.num_hospitals();
  const int sum_lower = instance.total_lower_quota();

  ReducedInstance red;
  red.kind_ = kind;
  red.pivot_ = kind == ReductionKind::kMaxPopular ? 2 : nr;
  red.levels_ = red.pivot_ + sum_lower;
  red.num_true_residents_ = nr;
  red.num_source_hospitals_ = nh;
  red.source_lower_.assign(instance.lower_quotas().begin(), instance.lower_quotas().end());
  red.source_upper_.assign(instance.upper_quotas().begin(), instance.upper_quotas().end());
  const int L = red.levels_;
  const int P = red.pivot_;

  auto cap = [&](HospitalIndex h, int s) {
    return s < P ? instance.upper_quota(h) : instance.lower_quota(h);
  };
  // Dummies of level P-1 with index <= q+ - q- list only h^{P-1}.
  auto continues = [&](HospitalIndex h, int s, int i) {
    return s != P - 1 || i > instance.upper_quota(h) - instance.lower_quota(h);
  };

  // Dummy layout: grouped by hospital, then level.
  red.dummy_start_.assign(static_cast<size_t>(nh) * L, 0);
  red.dummy_size_.assign(static_cast<size_t>(nh) * L, 0);
  ResidentIndex next = nr;
  for (HospitalIndex h = 0; h < nh; ++h) {
    for (int s = 0; s < L; ++s) {
      const int size = s <= L - 2 ? cap(h, s) : 0;
      red.dummy_start_[h * L + s] = next;
      red.dummy_size_[h * L + s] = size;
      for (int i = 1; i <= size; ++i) red.dummies_.push_back({h, s, i});
      next += size;
    }
  }
  const int total_residents = next;

  std::vector<std::string> rids(total_residents);
  std::vector<std::vector<HospitalIndex>> rprefs(total_residents);
  for (ResidentIndex r = 0; r < nr; ++r) {
    rids[r] = g.resident_id(r);
    const auto list = g.resident_list(r);
    auto& out = rprefs[r];
    out.reserve(list.size() * L);
    for (int s = L - 1; s >= 0; --s) {
      for (HospitalIndex h : list) out.push_back(red.copy(h, s));
    }
  }
  for (size_t k = 0; k < red.dummies_.size(); ++k) {
    const auto& d = red.dummies_[k];
    const ResidentIndex idx = nr + static_cast<ResidentIndex>(k);
    rids[idx] = g.hospital_id(d.source) + "!" + std::to_string(d.level) + "!" +
                std::to_string(d.index);
    rprefs[idx].push_back(red.copy(d.source, d.level));
    if (continues(d.source, d.level, d.index)) {
      rprefs[idx].push_back(red.copy(d.source, d.level + 1));
    }
  }

  const int num_copies = nh * L;
  std::vector<std::string> hids(num_copies);
  std::vector<std::vector<ResidentIndex>> hprefs(num_copies);
  std::vector<int> capacity(num_copies);
  red.copies_.resize(num_copies);
  for (HospitalIndex h = 0; h < nh; ++h) {
    const auto list_h = g.hospital_list(h);
    for (int s = 0; s < L; ++s) {
      const HospitalIndex c = red.copy(h, s);
      red.copies_[c] = {h, s};
      hids[c] = g.hospital_id(h) + "#" + std::to_string(s);
      capacity[c] = cap(h, s);
      auto& out = hprefs[c];
      if (s >= 1) {
        const ResidentIndex begin = red.dummy_begin(h, s - 1);
        for (int i = 1; i <= red.dummy_count(h, s - 1); ++i) {
          if (continues(h, s - 1, i)) out.push_back(begin + i - 1);
        }
      }
      out.insert(out.end(), list_h.begin(), list_h.end());
      const ResidentIndex begin = red.dummy_begin(h, s);
      for (int i = 0; i < red.dummy_count(h, s); ++i) out.push_back(begin + i);
    }
  }

  red.hr_ = HrInstance(PreferenceGraph(std::move(rids), std::move(hids), std::move(rprefs),
                                       std::move(hprefs), true),
                       std::move(capacity));

  if (kind == ReductionKind::kMaxPopular) {
    for (HospitalIndex h = 0; h < nh; ++h) {
      const int qp = instance.upper_quota(h);
      const int qm = instance.lower_quota(h);
      assert(red.total_capacity(h) == 2 * qp + (L - 2) * qm);
      // With no lower quotas anywhere L == 2 and D^1 does not exist.
      assert(L < 3 || red.total_dummies(h) == 2 * qp + (L - 3) * qm);
      (void)qp;
      (void)qm;
    }
  }
  return red;
}

ReducedInstance build_g_prime(const HrlqInstance& instance) {
  return build_reduction(instance, ReductionKind::kMaxPopular);
}

ReducedInstance build_g_double_prime(const HrlqInstance& instance) {
  return build_reduction(instance, ReductionKind::kPopularMax);
}

Matching map_back(const ReducedInstance& red, const Matching& m_reduced) {
  validate_matching(red.hr().graph(), red.hr().capacities(), m_reduced);
  Matching m(red.num_true_residents());
  for (ResidentIndex r = 0; r < red.num_true_residents(); ++r) {
    const HospitalIndex c = m_reduced.hospital_of(r);
    if (c != kUnmatched) m.assign(r, red.copy_of(c).source);
  }
  return m;
}

namespace {

int empty_hospital_level(const ReducedInstance& red, bool has_lower_quota) {
  if (has_lower_quota) return red.levels() - 1;
  return red.kind() == ReductionKind::kMaxPopular ? 1 : red.num_true_residents() - 1;
}

}  // namespace

LevelStructure classify_levels(const ReducedInstance& red, const Matching& m_reduced) {
  const int nr = red.num_true_residents();
  const int nh = red.num_source_hospitals();
  LevelStructure out;
  out.resident_level.assign(nr, 0);
  out.hospital_levels.assign(nh, {});
  for (ResidentIndex r = 0; r < nr; ++r) {
    const HospitalIndex c = m_reduced.hospital_of(r);
    if (c == kUnmatched) continue;
    const auto& info = red.copy_of(c);
    out.resident_level[r] = info.level;
    auto& levels = out.hospital_levels[info.source];
    if (std::find(levels.begin(), levels.end(), info.level) == levels.end()) {
      levels.push_back(info.level);
    }
  }
  for (HospitalIndex h = 0; h < nh; ++h) {
    auto& levels = out.hospital_levels[h];
    std::sort(levels.begin(), levels.end());
    if (levels.empty()) {
      levels.push_back(empty_hospital_level(red, red.source_lower_quota(h) > 0));
    }
  }
  return out;
}

bool InvariantReport::all_passed() const {
  return std::all_of(clauses.begin(), clauses.end(),
                     [](const ClauseResult& c) { return c.passed; });
}

std::string InvariantReport::to_string() const {
  std::ostringstream out;
  for (const auto& c : clauses) {
    out << (c.passed ? "PASS " : "FAIL ") << c.clause;
    if (!c.passed) out << " : " << c.witness;
    out << '\n';
  }
  return out.str();
}

namespace {

class ClauseRecorder {
 public:
  explicit ClauseRecorder(std::string name) { result_.clause = std::move(name); }

  void fail(const std::string& witness) {
    if (result_.passed) {
      result_.passed = false;
      result_.witness = witness;
    }
  }
  ClauseResult take() { return std::move(result_); }

 private:
  ClauseResult result_;
};

}  // namespace

InvariantReport check_reduced_invariants(const ReducedInstance& red,
                                         const Matching& m_reduced) {
  const auto& hr = red.hr();
  const auto& g = hr.graph();
  validate_matching(g, hr.capacities(), m_reduced);
  const int L = red.levels();
  const int nh = red.num_source_hospitals();
  const auto members = m_reduced.by_hospital(hr.num_hospitals());

  auto true_count = [&](HospitalIndex c) {
    return static_cast<int>(std::count_if(members[c].begin(), members[c].end(),
                                          [&](ResidentIndex r) { return !red.is_dummy(r); }));
  };
  auto dummy_level_count = [&](HospitalIndex c, int level) {
    return static_cast<int>(std::count_if(members[c].begin(), members[c].end(), [&](ResidentIndex r) {
      return red.is_dummy(r) && red.dummy_of(r).level == level;
    }));
  };
  auto name = [&](HospitalIndex c) { return g.hospital_id(c); };

  std::vector<std::vector<int>> active(nh);
  for (HospitalIndex h = 0; h < nh; ++h) {
    for (int s = 0; s < L; ++s) {
      if (true_count(red.copy(h, s)) > 0) active[h].push_back(s);
    }
  }

  InvariantReport report;

  ClauseRecorder c1("1 at most q+(h) true residents across copies");
  for (HospitalIndex h = 0; h < nh; ++h) {
    int total = 0;
    for (int s = 0; s < L; ++s) total += true_count(red.copy(h, s));
    const int upper = red.source_upper_quota(h);
    if (total > upper) {
      c1.fail(g.hospital_id(red.copy(h, 0)) + " family holds " + std::to_string(total) +
              " true residents, q+ = " + std::to_string(upper));
    }
  }
  report.clauses.push_back(c1.take());

  ClauseRecorder c2("2 only level-(L-1) copies undersubscribed");
  for (HospitalIndex c = 0; c < hr.num_hospitals(); ++c) {
    if (red.copy_of(c).level < L - 1 &&
        static_cast<int>(members[c].size()) < hr.capacity(c)) {
      c2.fail(name(c) + " holds " + std::to_string(members[c].size()) + " of " +
              std::to_string(hr.capacity(c)));
    }
  }
  report.clauses.push_back(c2.take());

  ClauseRecorder c3a("3a active h^s keeps a level-(s-1) dummy on h^(s-1)");
  ClauseRecorder c3b("3b copies below s-1 full of own-level dummies");
  ClauseRecorder c3c("3c copies above s+1 full of previous-level dummies");
  for (HospitalIndex h = 0; h < nh; ++h) {
    for (int s : active[h]) {
      if (s >= 1 && dummy_level_count(red.copy(h, s - 1), s - 1) == 0) {
        c3a.fail(name(red.copy(h, s)) + " active but " + name(red.copy(h, s - 1)) +
                 " has no level-" + std::to_string(s - 1) + " dummy");
      }
      for (int j = 0; j <= s - 2; ++j) {
        const HospitalIndex c = red.copy(h, j);
        if (dummy_level_count(c, j) != hr.capacity(c) ||
            static_cast<int>(members[c].size()) != hr.capacity(c)) {
          c3b.fail(name(red.copy(h, s)) + " active but " + name(c) +
                   " is not full of level-" + std::to_string(j) + " dummies");
        }
      }
      for (int j = s + 2; j < L; ++j) {
        const HospitalIndex c = red.copy(h, j);
        if (dummy_level_count(c, j - 1) != hr.capacity(c) ||
            static_cast<int>(members[c].size()) != hr.capacity(c)) {
          c3c.fail(name(red.copy(h, s)) + " active but " + name(c) +
                   " is not full of level-" + std::to_string(j - 1) + " dummies");
        }
      }
    }
  }
  report.clauses.push_back(c3a.take());
  report.clauses.push_back(c3b.take());
  report.clauses.push_back(c3c.take());

  ClauseRecorder c4("4 at most two consecutive active levels");
  for (HospitalIndex h = 0; h < nh; ++h) {
    const auto& a = active[h];
    if (a.size() > 2 || (a.size() == 2 && a[1] != a[0] + 1)) {
      std::string levels;
      for (int s : a) levels += " " + std::to_string(s);
      c4.fail(name(red.copy(h, 0)) + " family active at levels" + levels);
    }
  }
  report.clauses.push_back(c4.take());

  ClauseRecorder c5("5 no neighbour active two or more levels up");
  for (ResidentIndex r = 0; r < red.num_true_residents(); ++r) {
    const HospitalIndex c = m_reduced.hospital_of(r);
    if (c == kUnmatched) continue;
    const int s = red.copy_of(c).level;
    // r's list repeats its source list once per level; the last block is level 0.
    const auto list = g.resident_list(r);
    const size_t block = list.size() / static_cast<size_t>(L);
    for (size_t k = list.size() - block; k < list.size(); ++k) {
      const HospitalIndex h = red.copy_of(list[k]).source;
      if (!active[h].empty() && active[h].back() >= s + 2) {
        c5.fail(g.resident_id(r) + " at level " + std::to_string(s) + " adjacent to " +
                name(red.copy(h, active[h].back())));
      }
    }
  }
  report.clauses.push_back(c5.take());
  return report;
}

InvariantReport check_level_invariants(const HrlqInstance& instance,
                                       const ReducedInstance& red,
                                       const Matching& m_reduced) {
  const auto& g = instance.graph();
  const Matching m = map_back(red, m_reduced);
  const auto levels = classify_levels(red, m_reduced);
  const auto fill = m.fill_counts(instance.num_hospitals());
  const int L = red.levels();
  const int P = red.pivot();
  const bool max_popular = red.kind() == ReductionKind::kMaxPopular;
  const int undersub_level = max_popular ? 1 : instance.num_residents() - 1;

  auto has = [&](HospitalIndex h, int level) {
    const auto& v = levels.hospital_levels[h];
    return std::find(v.begin(), v.end(), level) != v.end();
  };
  auto top = [&](HospitalIndex h) { return levels.hospital_levels[h].back(); };

  InvariantReport report;

  ClauseRecorder consecutive("G1 each hospital in at most two consecutive levels");
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    const auto& v = levels.hospital_levels[h];
    if (v.size() > 2 || (v.size() == 2 && v[1] != v[0] + 1)) {
      consecutive.fail(g.hospital_id(h));
    }
  }
  report.clauses.push_back(consecutive.take());

  ClauseRecorder edges("G2 no edge from H_j to R_i with i <= j-2");
  for (ResidentIndex r = 0; r < instance.num_residents(); ++r) {
    for (HospitalIndex h : g.resident_list(r)) {
      if (levels.resident_level[r] <= top(h) - 2) {
        edges.fail(g.resident_id(r) + " (level " + std::to_string(levels.resident_level[r]) +
                   ") adjacent to " + g.hospital_id(h) + " (level " + std::to_string(top(h)) + ")");
      }
    }
  }
  report.clauses.push_back(edges.take());

  ClauseRecorder undersub("G3 undersubscribed hospitals at the expected level");
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    if (fill[h] >= instance.upper_quota(h)) continue;
    if (max_popular && has(h, 0)) {
      undersub.fail(g.hospital_id(h) + " undersubscribed at level 0");
    }
    if (instance.lower_quota(h) == 0 && !has(h, undersub_level)) {
      undersub.fail(g.hospital_id(h) + " undersubscribed outside level " +
                    std::to_string(undersub_level));
    }
  }
  report.clauses.push_back(undersub.take());

  ClauseRecorder deficient("G4 deficient hospitals at level L-1");
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    if (fill[h] < instance.lower_quota(h) && !has(h, L - 1)) {
      deficient.fail(g.hospital_id(h));
    }
  }
  report.clauses.push_back(deficient.take());

  ClauseRecorder neighbours("G5 edges of unmatched residents and short hospitals");
  for (ResidentIndex r = 0; r < instance.num_residents(); ++r) {
    for (HospitalIndex h : g.resident_list(r)) {
      const int rl = levels.resident_level[r];
      if (instance.lower_quota(h) == 0 && fill[h] < instance.upper_quota(h) && rl < P - 1) {
        neighbours.fail("undersubscribed " + g.hospital_id(h) + " adjacent to level-" +
                        std::to_string(rl) + " " + g.resident_id(r));
      }
      if (fill[h] < instance.lower_quota(h) && rl < L - 1) {
        neighbours.fail("deficient " + g.hospital_id(h) + " adjacent to level-" +
                        std::to_string(rl) + " " + g.resident_id(r));
      }
      if (!m.is_matched(r) && top(h) >= 1) {
        neighbours.fail("unmatched " + g.resident_id(r) + " adjacent to " + g.hospital_id(h) +
                        " at level " + std::to_string(top(h)));
      }
    }
  }
  report.clauses.push_back(neighbours.take());

  ClauseRecorder surplus("G6 hospitals above q- stay below the pivot level");
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    if (fill[h] > instance.lower_quota(h) && top(h) >= P) {
      surplus.fail(g.hospital_id(h) + " holds " + std::to_string(fill[h]) + " at level " +
                   std::to_string(top(h)));
    }
  }
  report.clauses.push_back(surplus.take());
  return report;
}

Solution solve_reduced(const HrlqInstance& instance, ReductionKind kind, ProposingSide side,
                       Matching* reduced_out) {
  Solution out;
  out.feasibility = check_feasibility(instance);
  if (!out.feasibility.feasible) return out;
  const ReducedInstance red = build_reduction(instance, kind);
  Matching reduced = gale_shapley(red.hr(), side);
  out.matching = map_back(red, reduced);
  if (reduced_out != nullptr) *reduced_out = std::move(reduced);
  return out;
}

Solution solve_max_popular(const HrlqInstance& instance) {
  return solve_reduced(instance, ReductionKind::kMaxPopular);
}

Solution solve_popular_max(const HrlqInstance& instance) {
  return solve_reduced(instance, ReductionKind::kPopularMax);
}

}  // namespace hrlq
