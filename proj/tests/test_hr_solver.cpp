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
#include <vector>

#include "hrlq/hr_solver.hpp"
#include "oracles.hpp"

using namespace hrlq;

namespace {

bool within_capacity(const HrInstance& hr, const Matching& m) {
  const auto fill = m.fill_counts(hr.num_hospitals());
  for (int h = 0; h < hr.num_hospitals(); ++h) {
    if (fill[h] > hr.capacity(h)) return false;
  }
  return true;
}

// Double loop over every edge and every current assignee of the hospital.
std::vector<BlockingPair> naive_blocking(const HrInstance& hr, const Matching& m) {
  const auto& g = hr.graph();
  std::vector<BlockingPair> out;
  for (int r = 0; r < g.num_residents(); ++r) {
    for (HospitalIndex h : g.resident_list(r)) {
      if (m.hospital_of(r) == h) continue;
      if (g.resident_vote(r, h, m.hospital_of(r)) <= 0) continue;
      int fill = 0;
      bool has_worse = false;
      for (int s = 0; s < g.num_residents(); ++s) {
        if (m.hospital_of(s) != h) continue;
        ++fill;
        if (g.hospital_vote(h, r, s) > 0) has_worse = true;
      }
      if (fill < hr.capacity(h) || has_worse) out.emplace_back(r, h);
    }
  }
  return out;
}

std::vector<Matching> all_stable(const HrInstance& hr) {
  std::vector<Matching> out;
  oracle::for_each_assignment(hr.graph(), [&](const Matching& m) {
    if (within_capacity(hr, m) && naive_blocking(hr, m).empty()) out.push_back(m);
  });
  return out;
}

}  // namespace

TEST_CASE("relaxed example has the stable matching {(r,h1)}") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto plus = relax_lower_quotas(inst);
  for (auto side : {ProposingSide::kResidents, ProposingSide::kHospitals}) {
    const auto m = gale_shapley(plus, side);
    CHECK(m.hospital_of(0) == 0);
  }
}

TEST_CASE("single mutual pair") {
  const auto inst = parse_instance(
      std::string_view("HRLQ\nresident r\nhospital h 0 1\npref r : h\npref h : r\n"));
  const auto m = gale_shapley(relax_lower_quotas(inst));
  CHECK(m.hospital_of(0) == 0);
}

TEST_CASE("blocking pair of the example's feasible matching") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  const auto plus = relax_lower_quotas(inst);
  Matching m(1);
  m.assign(0, 1);
  const auto pairs = find_blocking_pairs(plus, m);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == BlockingPair{0, 0});
  CHECK_FALSE(is_stable(plus, m));
}

TEST_CASE("gale-shapley output is one of the exhaustively found stable matchings") {
  std::mt19937_64 rng(3);
  for (uint64_t seed = 0; seed < 80; ++seed) {
    const auto hr = relax_lower_quotas(generate(oracle::corpus_params(rng, seed)));
    const auto stable = all_stable(hr);
    REQUIRE(!stable.empty());
    for (auto side : {ProposingSide::kResidents, ProposingSide::kHospitals}) {
      const auto m = gale_shapley(hr, side);
      CHECK(find_blocking_pairs(hr, m).empty());
      CHECK(std::find(stable.begin(), stable.end(), m) != stable.end());
    }
    // Resident-proposing is resident-optimal: no stable matching is better
    // for any resident.
    const auto best = gale_shapley(hr, ProposingSide::kResidents);
    for (const auto& s : stable) {
      for (int r = 0; r < hr.num_residents(); ++r) {
        CHECK(hr.graph().resident_vote(r, best.hospital_of(r), s.hospital_of(r)) >= 0);
      }
    }
  }
}

TEST_CASE("blocking pairs agree with the double loop on random matchings") {
  std::mt19937_64 rng(4);
  int compared = 0;
  for (uint64_t seed = 0; seed < 60; ++seed) {
    const auto hr = relax_lower_quotas(generate(oracle::corpus_params(rng, seed)));
    oracle::for_each_assignment(hr.graph(), [&](const Matching& m) {
      if (!within_capacity(hr, m)) {
        CHECK_THROWS_AS(find_blocking_pairs(hr, m), InstanceError);
        return;
      }
      CHECK(find_blocking_pairs(hr, m) == naive_blocking(hr, m));
      ++compared;
    });
  }
  CHECK(compared > 1000);
}

TEST_CASE("zero-capacity hospitals are skipped") {
  const auto g = PreferenceGraph({"r"}, {"a", "b"}, {{0, 1}}, {{0}, {0}}, true);
  const HrInstance hr(g, {0, 1});
  for (auto side : {ProposingSide::kResidents, ProposingSide::kHospitals}) {
    CHECK(gale_shapley(hr, side).hospital_of(0) == 1);
  }
}

TEST_CASE("check_stable_feasible") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  CHECK_FALSE(check_stable_feasible(inst).has_value());

  std::mt19937_64 rng(6);
  int with = 0;
  int without = 0;
  for (uint64_t seed = 0; seed < 150; ++seed) {
    auto params = oracle::corpus_params(rng, seed);
    const auto i = generate(params);
    const auto hr = relax_lower_quotas(i);
    bool expected = false;
    for (const auto& s : all_stable(hr)) expected = expected || oracle::quotas_hold(i, s);
    const auto got = check_stable_feasible(i);
    CHECK(got.has_value() == expected);
    if (got) CHECK(is_feasible(i, *got));
    (expected ? with : without) += 1;
    if (i.total_lower_quota() == 0) CHECK(got.has_value());
  }
  CHECK(with > 0);
  CHECK(without > 0);
}
