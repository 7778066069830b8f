// Copyright 2026 The massart-lwe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MASSART_CLI_HPP_
#define MASSART_CLI_HPP_

#include <string>
#include <vector>

#include "massart/instance_builder.hpp"
#include "massart/verify.hpp"

namespace massart {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitFail = 3;
inline constexpr int kExitVerify = 4;

// Default seed when neither a config file nor a flag sets one.
inline constexpr const char* kSeedEnv = "MASSART_SEED";

struct InstanceMeta {
  int n = 0;
  double t = 0.0, eps = 0.0, eta = 0.0, c_prime = 0.0, delta = 0.0;
  double sigma = 0.0;
  std::string tag;
  bool lifted = false;
  std::vector<double> secret;  // empty when not exported
  uint64_t seed = 0;
};

struct SuiteEntry {
  TestReport report;
  bool required = true;
};

// Runs the checks appropriate for the instance's hypothesis tag.
std::vector<SuiteEntry> verify_instance(
    const std::vector<LabeledSample>& samples, const InstanceMeta& meta);

int run_cli(const std::vector<std::string>& args);

}  // namespace massart

#endif  // MASSART_CLI_HPP_
