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

#ifndef MASSART_CONFIG_HPP_
#define MASSART_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "massart/instance_builder.hpp"

namespace massart {

// Flat parameter record shared by all subcommands. Serialized as JSON.
struct RunConfig {
  // LWE
  int n = 8;
  uint64_t m = 0;  // LWE samples (gen-lwe) or budget (gen-instance); 0: derive
  uint64_t q = 0;  // 0 selects the unit torus
  double sigma = 1e-4;
  std::string tag = "alternative";
  std::string secret_kind = "binary";
  double sigma_target = 0.0;
  double sigma_coord = 0.0;
  // Reduction
  double t = 0.125;
  double eps = 0.125 / 32;
  double eta = 0.05;
  double c_prime = 0.02;
  double c = 1.0;
  double c_dprime = 1.0;
  double delta = 0.01;
  uint64_t m_prime = 10000;
  double budget_c = 0.5;  // m = m' (t/eps) / budget_c when m is 0
  int d = 2;
  bool lift = false;
  std::string mode = "desk";
  // Distinguisher
  uint64_t trials = 50;
  double tau = 0.0;  // 0: eta / 2
  double train_fraction = 0.5;
  std::string learner = "planted";
  // Run
  uint64_t seed = 1;
  std::string input;
  std::string output;
  std::string report;
  std::string hist_csv;
};

std::string to_json_string(const RunConfig& cfg);
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);

uint64_t effective_budget(const RunConfig& cfg);
MassartConfig to_massart_config(const RunConfig& cfg);

struct Preset {
  std::string name;
  std::string description;
};

std::vector<Preset> list_presets();
// zeta is only used by the asymptotic preset.
RunConfig apply_preset(const std::string& name, int n, double zeta);

// 64-bit FNV-1a over the secret's IEEE bytes, as 16 hex digits.
std::string secret_digest(const std::vector<double>& secret);

}  // namespace massart

#endif  // MASSART_CONFIG_HPP_
