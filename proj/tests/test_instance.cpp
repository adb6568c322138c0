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

#include "hrlq/instance.hpp"
#include "oracles.hpp"

using namespace hrlq;

namespace {

InstanceErrc parse_error_code(const std::string& text) {
  try {
    parse_instance(std::string_view(text));
  } catch (const InstanceError& e) {
    return e.code();
  }
  FAIL("parse succeeded");
  return InstanceErrc::kSyntax;
}

}  // namespace

TEST_CASE("example instance parses") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  CHECK(inst.num_residents() == 1);
  CHECK(inst.num_hospitals() == 2);
  CHECK(inst.total_lower_quota() == 1);
  CHECK(inst.lower_quota(0) == 0);
  CHECK(inst.upper_quota(0) == 1);
  CHECK(inst.lower_quota(1) == 1);
  CHECK(inst.upper_quota(1) == 1);
  const auto& g = inst.graph();
  REQUIRE(g.resident_list(0).size() == 2);
  CHECK(g.hospital_id(g.resident_list(0)[0]) == "h1");
  CHECK(g.hospital_id(g.resident_list(0)[1]) == "h2");
}

TEST_CASE("lower quota above upper quota is rejected") {
  const std::string text =
      "HRLQ\nresident r\nhospital h 2 1\npref r : h\npref h : r\n";
  CHECK(parse_error_code(text) == InstanceErrc::kQuotaOrder);
}

TEST_CASE("asymmetric edge is rejected") {
  const std::string text =
      "HRLQ\nresident r\nresident s\nhospital h 0 1\npref r : h\npref s : h\npref h : r\n";
  CHECK(parse_error_code(text) == InstanceErrc::kAsymmetricEdge);
}

TEST_CASE("other parse errors") {
  CHECK(parse_error_code("resident r\n") == InstanceErrc::kSyntax);
  CHECK(parse_error_code("HRLQ\nresident r\nhospital h 0 1\npref r : x\npref h : r\n") ==
        InstanceErrc::kUnknownId);
  CHECK(parse_error_code("HRLQ\nresident r\nresident r\nhospital h 0 1\npref r : h\npref h : r\n") ==
        InstanceErrc::kDuplicateId);
  CHECK(parse_error_code("HRLQ\nresident r\nhospital h 0 2\npref r : h h\npref h : r\n") ==
        InstanceErrc::kDuplicatePreference);
  CHECK(parse_error_code("HRLQ\nresident r\nhospital h 0 0\npref r : h\npref h : r\n") ==
        InstanceErrc::kZeroUpperQuota);
  CHECK(parse_error_code("HRLQ\nresident r\nresident s\nhospital h 0 1\npref r : h\npref s :\n"
                         "pref h : r\n") == InstanceErrc::kEmptyPreferenceList);
  CHECK(parse_error_code("HRLQ\nresident r!1\nhospital h 0 1\npref r!1 : h\npref h : r!1\n") ==
        InstanceErrc::kReservedCharacter);
  CHECK(parse_error_code("HRLQ\nresident r\nhospital h 0 1\npref r : h\npref h : r\nbogus\n") ==
        InstanceErrc::kSyntax);
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_instance(std::string_view("HRLQ\n# comment\nresident r\nhospital h one 1\n"));
    FAIL("parse succeeded");
  } catch (const InstanceError& e) {
    CHECK(e.code() == InstanceErrc::kSyntax);
    CHECK(e.line() == 4);
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# leading\nHRLQ\n\nresident r   # trailing\nhospital h 0 1\npref r : h\npref h : r\n";
  const auto inst = parse_instance(std::string_view(text));
  CHECK(inst.num_residents() == 1);
}

TEST_CASE("serialize then parse round-trips") {
  std::mt19937_64 rng(11);
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    const auto text = serialize(inst);
    const auto back = parse_instance(std::string_view(text));
    CHECK(back == inst);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("hr format round-trips with zero capacities and synthetic ids") {
  const std::string text =
      "HR\nresident r\nresident h!0!1\nhospital h#0 1\nhospital h#1 0\n"
      "pref r : h#1 h#0\npref h!0!1 : h#0\npref h#0 : h!0!1 r\npref h#1 : r\n";
  const auto hr = parse_hr_instance(text);
  CHECK(hr.capacity(1) == 0);
  CHECK(serialize(hr) == text);
}

TEST_CASE("generator is deterministic") {
  GeneratorParams p{3, 2, 2, 1, 1.0, 7};
  CHECK(serialize(generate(p)) == serialize(generate(p)));
  std::set<std::string> distinct;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    p.seed = seed;
    distinct.insert(serialize(generate(p)));
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("full density gives complete lists") {
  const auto inst = generate({5, 3, 2, 1, 1.0, 3});
  for (int r = 0; r < 5; ++r) CHECK(inst.graph().resident_list(r).size() == 3);
  for (int h = 0; h < 3; ++h) CHECK(inst.graph().hospital_list(h).size() == 5);
}

TEST_CASE("generator never leaves an empty list and respects quota ranges") {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    const auto inst = generate({6, 3, 3, 2, 0.1, seed});
    for (int r = 0; r < 6; ++r) CHECK(!inst.graph().resident_list(r).empty());
    for (int h = 0; h < 3; ++h) {
      CHECK(!inst.graph().hospital_list(h).empty());
      CHECK(inst.upper_quota(h) >= 1);
      CHECK(inst.upper_quota(h) <= 3);
      CHECK(inst.lower_quota(h) <= std::min(2, inst.upper_quota(h)));
    }
  }
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(generate({0, 1, 1, 0, 1.0, 0}), InstanceError);
  CHECK_THROWS_AS(generate({1, 1, 1, 2, 1.0, 0}), InstanceError);
  CHECK_THROWS_AS(generate({1, 1, 1, 0, 0.0, 0}), InstanceError);
}

TEST_CASE("feasibility of the example and pigeonhole") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  CHECK(feasibility_exists(inst));
  const auto over = parse_instance(std::string_view(
      "HRLQ\nresident r\nhospital a 1 1\nhospital b 1 1\npref r : a b\npref a : r\npref b : r\n"));
  const auto report = check_feasibility(over);
  CHECK_FALSE(report.feasible);
  CHECK(report.demand == 2);
  CHECK(report.flow == 1);
}

TEST_CASE("feasibility agrees with exhaustive search") {
  std::mt19937_64 rng(5);
  int feasible = 0;
  for (uint64_t seed = 0; seed < 400; ++seed) {
    const auto inst = generate(oracle::corpus_params(rng, seed));
    const bool expected = !oracle::all_feasible(inst).empty();
    CHECK(feasibility_exists(inst) == expected);
    feasible += expected;
  }
  CHECK(feasible > 0);
  CHECK(feasible < 400);
}

TEST_CASE("matching validation and feasibility") {
  const auto inst = parse_instance(std::string_view(oracle::kExample1));
  Matching m(1);
  CHECK_FALSE(is_feasible(inst, m));
  CHECK(count_deficient(inst, m) == 1);
  m.assign(0, 1);
  CHECK(is_feasible(inst, m));
  CHECK(serialize_matching(inst, m) == "match r h2\n# summary matched=1 deficient=0\n");
  CHECK(parse_matching(inst, serialize_matching(inst, m)) == m);
  CHECK(inline_matching(inst.graph(), m) == "r:h2");
  CHECK(inline_matching(inst.graph(), Matching(1)) == "-");
  CHECK_THROWS_AS(parse_matching(inst, "match r h3\n"), InstanceError);
  CHECK_THROWS_AS(parse_matching(inst, "match r h1\nmatch r h2\n"), InstanceError);
}
