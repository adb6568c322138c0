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

#ifndef HRLQ_CLI_HPP_
#define HRLQ_CLI_HPP_

#include <iosfwd>

namespace hrlq::cli {

enum ExitCode {
  kOk = 0,
  kFail = 1,
  kInfeasible = 2,
  kInconclusive = 3,
  kUsage = 64,
  kParse = 65,
};

// verify only runs the brute-force certifier up to this many residents.
inline constexpr int kCertifyResidentBound = 10;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hrlq::cli

#endif  // HRLQ_CLI_HPP_
