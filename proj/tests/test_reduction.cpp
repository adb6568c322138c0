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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "hrlq/reduction.hpp"
#include "oracles.hpp"

using namespace hrlq;

namespace {

std::vector<std::string> names(const PreferenceGraph& g, std::span<const HospitalIndex> list) {
  std::vector<std::string> out;
  for (auto h : list) out.push_back(g.hospital_id(h));
  return out;
}

std::vector<std::string> resident_names(const PreferenceGraph& g,
                                        std::span<const ResidentIndex> list) {
  std::vector<std::string> out;
  for (auto r : list) out.push_back(g.resident_id(r));
  return out;
}

HrlqInstance two_hospitals_three_residents() {
  return parse_instance(std::string_view(
      "HRLQ\nresident a\nresident b\nresident c\nhospital x 1 2\nhospital y 1 2\n"
      "pref a : x y\npref b : y x\npref c : x y\n"
      "pref x : a b c\npref y : c b a\n"));
}

}  // namespace

TEST_CASE("G' of the example") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto red = build_g_prime(inst);
  CHECK(red.levels() == 3);
  CHECK(red.pivot() == 2);
  const auto& hr = red.hr();
  const auto& g = hr.graph();
  CHECK(hr.num_hospitals() == 6);
  const std::vector<int> caps{1, 1, 0, 1, 1, 1};
  for (int i = 0; i < 6; ++i) CHECK(hr.capacity(i) == caps[i]);
  CHECK(g.hospital_id(red.copy(1, 2)) == "h2#2");
  CHECK(hr.num_residents() == 1 + 4);
  for (int h = 0; h < 2; ++h) {
    CHECK(red.dummy_count(h, 0) == 1);
    CHECK(red.dummy_count(h, 1) == 1);
    CHECK(red.total_dummies(h) == 2);
  }
  CHECK(names(g, g.resident_list(0)) ==
        std::vector<std::string>{"h1#2", "h2#2", "h1#1", "h2#1", "h1#0", "h2#0"});
  // h1 has no lower quota: its level-1 dummy stops at h1^1.
  CHECK(names(g, g.resident_list(*g.find_resident("h1!1!1"))) ==
        std::vector<std::string>{"h1#1"});
  CHECK(names(g, g.resident_list(*g.find_resident("h2!1!1"))) ==
        std::vector<std::string>{"h2#1", "h2#2"});
  CHECK(resident_names(g, g.hospital_list(*g.find_hospital("h2#1"))) ==
        std::vector<std::string>{"h2!0!1", "r", "h2!1!1"});
  CHECK(resident_names(g, g.hospital_list(*g.find_hospital("h2#2"))) ==
        std::vector<std::string>{"h2!1!1", "r"});
  CHECK(resident_names(g, g.hospital_list(*g.find_hospital("h2#0"))) ==
        std::vector<std::string>{"r", "h2!0!1"});
}

TEST_CASE("G' capacities and dummy counts on random instances") {
  std::mt19937_64 rng(21);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    const auto red = build_g_prime(inst);
    const int l = red.levels();
    CHECK(l == 2 + inst.total_lower_quota());
    for (int h = 0; h < inst.num_hospitals(); ++h) {
      const int up = inst.upper_quota(h);
      const int lo = inst.lower_quota(h);
      CHECK(red.total_capacity(h) == 2 * up + (l - 2) * lo);
      for (int s = 0; s < l; ++s) {
        CHECK(red.hr().capacity(red.copy(h, s)) == (s < 2 ? up : lo));
        CHECK(red.copy_of(red.copy(h, s)).source == h);
        CHECK(red.copy_of(red.copy(h, s)).level == s);
      }
      if (l >= 3) CHECK(red.total_dummies(h) == 2 * up + (l - 3) * lo);
      if (lo == 0) {
        for (int s = 2; s < l; ++s) {
          CHECK(red.hr().capacity(red.copy(h, s)) == 0);
          if (s <= l - 2) CHECK(red.dummy_count(h, s) == 0);
        }
      }
      for (int s = 0; s + 2 <= l; ++s) {
        for (int i = 0; i < red.dummy_count(h, s); ++i) {
          const auto& d = red.dummy_of(red.dummy_begin(h, s) + i);
          CHECK(d.source == h);
          CHECK(d.level == s);
          CHECK(d.index == i + 1);
        }
      }
    }
  }
}

TEST_CASE("G'' of the example") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto red = build_g_double_prime(inst);
  CHECK(red.levels() == 2);
  for (int h = 0; h < 2; ++h) {
    CHECK(red.hr().capacity(red.copy(h, 0)) == inst.upper_quota(h));
    CHECK(red.hr().capacity(red.copy(h, 1)) == inst.lower_quota(h));
  }
}

TEST_CASE("G'' dummy count cross-check") {
  const auto inst = two_hospitals_three_residents();
  const auto red = build_g_double_prime(inst);
  CHECK(red.levels() == 5);
  for (int h = 0; h < 2; ++h) CHECK(red.total_dummies(h) == 3 * 2 + (5 - 1 - 3) * 1);
}

TEST_CASE("G'' capacities on random instances") {
  std::mt19937_64 rng(22);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    const auto red = build_g_double_prime(inst);
    const int nr = inst.num_residents();
    CHECK(red.levels() == nr + inst.total_lower_quota());
    for (int h = 0; h < inst.num_hospitals(); ++h) {
      for (int s = 0; s < red.levels(); ++s) {
        const int expected = s < nr ? inst.upper_quota(h) : inst.lower_quota(h);
        CHECK(red.hr().capacity(red.copy(h, s)) == expected);
      }
    }
  }
}

TEST_CASE("map_back") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto red = build_g_prime(inst);
  const auto stable = gale_shapley(red.hr());
  const auto m = map_back(red, stable);
  CHECK(m.num_residents() == 1);
  CHECK(m.hospital_of(0) == 1);
  CHECK(map_back(red, Matching(red.hr().num_residents())).size() == 0);
  CHECK_THROWS_AS(map_back(red, Matching(2)), InstanceError);

  const auto levels = classify_levels(red, stable);
  const int s = red.copy_of(stable.hospital_of(0)).level;
  CHECK(levels.resident_level[0] == s);
  CHECK(std::find(levels.hospital_levels[1].begin(), levels.hospital_levels[1].end(), s) !=
        levels.hospital_levels[1].end());
}

TEST_CASE("stable matchings of both reductions satisfy the invariants") {
  std::mt19937_64 rng(23);
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    for (auto kind : {ReductionKind::kMaxPopular, ReductionKind::kPopularMax}) {
      const auto red = build_reduction(inst, kind);
      for (auto side : {ProposingSide::kResidents, ProposingSide::kHospitals}) {
        const auto stable = gale_shapley(red.hr(), side);
        const auto report = check_reduced_invariants(red, stable);
        CHECK_MESSAGE(report.all_passed(), report.to_string());
        const auto m = map_back(red, stable);
        validate_matching(inst.graph(), inst.upper_quotas(), m);
        if (feasibility_exists(inst)) {
          const auto levels = check_level_invariants(inst, red, stable);
          CHECK_MESSAGE(levels.all_passed(), (std::string(kind == ReductionKind::kMaxPopular ? "gprime " : "gdoubleprime ") + levels.to_string()));
        }
      }
    }
  }
}

TEST_CASE("corrupted reduced matchings are caught") {
  // A swap can land on another stable matching, so only detections are
  // required, each with a witness.
  std::mt19937_64 rng(24);
  int swaps = 0;
  int caught = 0;
  auto probe = [&](const ReducedInstance& red, const Matching& m) {
    const auto report = check_reduced_invariants(red, m);
    if (report.all_passed()) return false;
    for (const auto& clause : report.clauses) {
      if (!clause.passed) CHECK(!clause.witness.empty());
    }
    return true;
  };
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    for (auto kind : {ReductionKind::kMaxPopular, ReductionKind::kPopularMax}) {
      const auto red = build_reduction(inst, kind);
      const auto& g = red.hr().graph();
      const auto stable = gale_shapley(red.hr());
      for (int r = 0; r < red.num_true_residents(); ++r) {
        for (int d = red.num_true_residents(); d < red.hr().num_residents(); ++d) {
          const HospitalIndex cr = stable.hospital_of(r);
          const HospitalIndex cd = stable.hospital_of(d);
          if (cr == cd || cd == kUnmatched || !g.adjacent(r, cd)) continue;
          if (cr != kUnmatched && !g.adjacent(d, cr)) continue;
          auto m = stable;
          m.assign(r, cd);
          if (cr == kUnmatched) {
            m.unassign(d);
          } else {
            m.assign(d, cr);
          }
          ++swaps;
          caught += probe(red, m);
        }
      }
    }
  }
  CHECK(swaps > 1000);
  CHECK(caught > 0);

  // Dropping a dummy from a copy below the top level leaves it short.
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto red = build_g_prime(inst);
  auto m = gale_shapley(red.hr());
  const auto d = *red.hr().graph().find_resident("h2!0!1");
  REQUIRE(m.is_matched(d));
  m.unassign(d);
  CHECK(probe(red, m));
}

TEST_CASE("solvers on the example and on infeasible instances") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  for (const auto& sol : {solve_max_popular(inst), solve_popular_max(inst)}) {
    REQUIRE(sol.matching.has_value());
    CHECK(sol.matching->hospital_of(0) == 1);
    CHECK(sol.feasibility.feasible);
  }
  const auto over = parse_instance(std::string_view(
      "HRLQ\nresident r\nhospital a 1 1\nhospital b 1 1\npref r : a b\npref a : r\npref b : r\n"));
  const auto sol = solve_max_popular(over);
  CHECK_FALSE(sol.matching.has_value());
  CHECK(sol.feasibility.demand == 2);
  CHECK(sol.feasibility.flow == 1);
  CHECK_FALSE(solve_popular_max(over).matching.has_value());
}

TEST_CASE("without lower quotas a unique resident-perfect stable matching is returned") {
  const auto inst = parse_instance(std::string_view(
      "HRLQ\nresident a\nresident b\nhospital x 0 1\nhospital y 0 1\n"
      "pref a : x y\npref b : y x\npref x : a b\npref y : b a\n"));
  const auto stable = gale_shapley(relax_lower_quotas(inst));
  REQUIRE(stable.size() == 2);
  CHECK(*solve_max_popular(inst).matching == stable);
  CHECK(*solve_popular_max(inst).matching == stable);
}

TEST_CASE("solver outputs are feasible and solver B is maximum") {
  std::mt19937_64 rng(25);
  int feasible = 0;
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    const auto all = oracle::all_feasible(inst);
    const auto a = solve_max_popular(inst);
    const auto b = solve_popular_max(inst);
    CHECK(a.matching.has_value() == !all.empty());
    CHECK(b.matching.has_value() == !all.empty());
    if (all.empty()) continue;
    ++feasible;
    CHECK(oracle::quotas_hold(inst, *a.matching));
    CHECK(oracle::quotas_hold(inst, *b.matching));
    int best = 0;
    for (const auto& n : all) best = std::max(best, n.size());
    CHECK(b.matching->size() == best);
  }
  CHECK(feasible > 200);
}
