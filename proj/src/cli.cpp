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

#include "hrlq/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "hrlq/instance.hpp"
#include "hrlq/popularity.hpp"
#include "hrlq/reduction.hpp"

namespace hrlq::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::map<std::string, ReductionKind> kObjectives = {
    {"max-popular", ReductionKind::kMaxPopular},
    {"popular-max", ReductionKind::kPopularMax},
};
const std::map<std::string, ReductionKind> kReductions = {
    {"gprime", ReductionKind::kMaxPopular},
    {"gdoubleprime", ReductionKind::kPopularMax},
};

void report_infeasible(const HrlqInstance& instance, const FeasibilityReport& f,
                       std::ostream& err) {
  err << "infeasible: lower quotas demand " << f.demand << ", max flow " << f.flow << "\n";
  for (HospitalIndex h = 0; h < instance.num_hospitals(); ++h) {
    if (f.shortfall[h] > 0) {
      err << "  shortfall " << instance.graph().hospital_id(h) << " " << f.shortfall[h] << "\n";
    }
  }
}

int cmd_solve(const std::string& objective, const std::string& path, std::ostream& out,
              std::ostream& err) {
  const auto instance = parse_instance(read_file(path));
  const auto solution = solve_reduced(instance, kObjectives.at(objective));
  if (!solution.matching) {
    report_infeasible(instance, solution.feasibility, err);
    return kInfeasible;
  }
  out << serialize_matching(instance, *solution.matching);
  return kOk;
}

int cmd_verify(const std::string& objective, const std::string& matching_path,
               const std::string& path, std::ostream& out) {
  const auto instance = parse_instance(read_file(path));
  const auto m = parse_matching(instance, read_file(matching_path));
  const auto kind = kObjectives.at(objective);
  bool ok = true;
  auto line = [&](const std::string& check, bool passed, const std::string& detail) {
    out << check << (passed ? " ok" : " FAIL");
    if (!detail.empty()) out << " " << detail;
    out << "\n";
    ok = ok && passed;
  };

  if (!is_feasible(instance, m)) {
    line("feasible", false, "deficient=" + std::to_string(count_deficient(instance, m)));
    return kFail;
  }
  line("feasible", true, "");

  Matching reduced(0);
  const auto solution = solve_reduced(instance, kind, ProposingSide::kResidents, &reduced);
  const auto red = build_reduction(instance, kind);
  const auto structural = check_reduced_invariants(red, reduced);
  const auto levels = check_level_invariants(instance, red, reduced);
  line("reduced-invariants", structural.all_passed(), "");
  if (!structural.all_passed()) out << structural.to_string();
  line("level-invariants", levels.all_passed(), "");
  if (!levels.all_passed()) out << levels.to_string();

  const int expected = kind == ReductionKind::kMaxPopular ? solution.matching->size()
                                                          : max_card_feasible(instance);
  line("cardinality", m.size() == expected,
       "size=" + std::to_string(m.size()) + " expected=" + std::to_string(expected));

  if (instance.num_residents() > kCertifyResidentBound) {
    out << "popularity skipped residents=" << instance.num_residents()
        << " bound=" << kCertifyResidentBound << "\n";
    return ok ? kOk : kFail;
  }
  bool inconclusive = false;
  auto certificate = [&](const std::string& check, const Certificate& c) {
    out << check << " " << c.to_string(instance.graph()) << "\n";
    if (c.status == Certificate::Status::kBeaten) ok = false;
    if (c.status == Certificate::Status::kInconclusive) inconclusive = true;
  };
  if (kind == ReductionKind::kMaxPopular) {
    certificate("popular", certify_popular(instance, m, Universe::kAllFeasible));
    certificate("beats-larger", certify_beats_larger(instance, m));
  } else {
    certificate("popular", certify_popular(instance, m, Universe::kMaxCardinality));
  }
  if (!ok) return kFail;
  return inconclusive ? kInconclusive : kOk;
}

int cmd_reduce(const std::string& kind, const std::string& path, std::ostream& out) {
  const auto instance = parse_instance(read_file(path));
  out << serialize(build_reduction(instance, kReductions.at(kind)).hr());
  return kOk;
}

int cmd_enumerate(const std::string& path, uint64_t limit, std::ostream& out) {
  const auto instance = parse_instance(read_file(path));
  const auto status = enumerate_feasible(instance, limit, [&](const Matching& m) {
    out << inline_matching(instance.graph(), m) << "\n";
    return true;
  });
  out << "# enumerated=" << status.count << " truncated=" << (status.truncated ? 1 : 0)
      << "\n";
  return status.truncated ? kInconclusive : kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Popular matchings for hospitals/residents with lower quotas", "hrlq"};
  app.require_subcommand(1);

  std::string objective;
  std::string file;
  std::string matching_file;
  std::string kind;
  GeneratorParams gen;
  uint64_t limit = kDefaultEnumerationLimit;

  auto* solve = app.add_subcommand("solve", "Compute a popular matching");
  solve->add_option("--objective", objective)
      ->required()
      ->check(CLI::IsMember({"max-popular", "popular-max"}));
  solve->add_option("file", file)->required();

  auto* verify = app.add_subcommand("verify", "Check a matching against an objective");
  verify->add_option("--objective", objective)
      ->required()
      ->check(CLI::IsMember({"max-popular", "popular-max"}));
  verify->add_option("--matching", matching_file)->required();
  verify->add_option("file", file)->required();

  auto* generate_cmd = app.add_subcommand("generate", "Print a random instance");
  generate_cmd->add_option("--residents", gen.num_residents)->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--hospitals", gen.num_hospitals)->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--max-uq", gen.max_upper_quota)->required()->check(CLI::PositiveNumber);
  generate_cmd->add_option("--max-lq", gen.max_lower_quota)->required()->check(CLI::NonNegativeNumber);
  generate_cmd->add_option("--density", gen.edge_density)->required()->check(CLI::Range(0.0, 1.0));
  generate_cmd->add_option("--seed", gen.seed)->required();

  auto* reduce = app.add_subcommand("reduce", "Print the reduced HR instance");
  reduce->add_option("--kind", kind)->required()->check(CLI::IsMember({"gprime", "gdoubleprime"}));
  reduce->add_option("file", file)->required();

  auto* enumerate = app.add_subcommand("enumerate", "List every feasible matching");
  enumerate->add_option("--limit", limit);
  enumerate->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "hrlq: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(objective, file, out, err);
    if (verify->parsed()) return cmd_verify(objective, matching_file, file, out);
    if (generate_cmd->parsed()) {
      out << serialize(generate(gen));
      return kOk;
    }
    if (reduce->parsed()) return cmd_reduce(kind, file, out);
    if (enumerate->parsed()) return cmd_enumerate(file, limit, out);
  } catch (const UsageError& e) {
    err << "hrlq: " << e.what() << "\n";
    return kUsage;
  } catch (const InstanceError& e) {
    err << "hrlq: " << e.what() << "\n";
    return e.code() == InstanceErrc::kInvalidParameter ? kUsage : kParse;
  }
  return kUsage;
}

}  // namespace hrlq::cli
