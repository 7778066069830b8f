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

#include "massart/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace massart {

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE_WITH_DEFAULT(
    RunConfig, n, m, q, sigma, tag, secret_kind, sigma_target, sigma_coord, t,
    eps, eta, c_prime, c, c_dprime, delta, m_prime, budget_c, d, lift, mode,
    trials, tau, train_fraction, learner, seed, input, output, report,
    hist_csv)

std::string to_json_string(const RunConfig& cfg) {
  return nlohmann::json(cfg).dump(2);
}

RunConfig run_config_from_json(const std::string& text) {
  try {
    return nlohmann::json::parse(text).get<RunConfig>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config: ") + e.what());
  }
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return run_config_from_json(ss.str());
}

uint64_t effective_budget(const RunConfig& cfg) {
  if (cfg.m > 0) return cfg.m;
  return static_cast<uint64_t>(std::ceil(static_cast<double>(cfg.m_prime) *
                                         (cfg.t / cfg.eps) / cfg.budget_c));
}

MassartConfig to_massart_config(const RunConfig& cfg) {
  MassartConfig mc;
  mc.params.n = cfg.n;
  mc.params.t = cfg.t;
  mc.params.eps = cfg.eps;
  mc.params.sigma = cfg.sigma;
  mc.params.delta = cfg.delta;
  mc.params.mode = parse_mode(cfg.mode);
  mc.params.consts.c = cfg.c;
  mc.params.consts.c_prime = cfg.c_prime;
  mc.params.consts.c_dprime = cfg.c_dprime;
  mc.params.m_prime = cfg.m_prime;
  mc.eta = cfg.eta;
  mc.c_prime = cfg.c_prime;
  mc.m_prime = cfg.m_prime;
  mc.m = effective_budget(cfg);
  mc.d = cfg.d;
  return mc;
}

std::vector<Preset> list_presets() {
  return {
      {"desk", "n=8, t=1/8, t/eps=32, sigma=1e-4, eta=0.05: separated "
               "intervals, used for the labeling and distinguisher checks"},
      {"desk-density", "n=8, t=0.16, t/eps=8, sigma=0.05, eta=0.05: visible "
                       "noise, used for the hidden-direction density check"},
      {"asymptotic", "t = n^(-0.5-0.2 zeta), eps ~ n^-1.5 (t/eps even), "
                    "eta = 1/3, sigma from the noise-margin clause, strict"},
  };
}

RunConfig apply_preset(const std::string& name, int n, double zeta) {
  RunConfig c;
  c.n = n;
  if (name == "desk") {
    c.t = 0.125;
    c.eps = c.t / 32;
    c.sigma = 1e-4;
    c.eta = 0.05;
    c.m_prime = 10000;
  } else if (name == "desk-density") {
    c.t = 0.16;
    c.eps = 0.02;
    c.sigma = 0.05;
    c.eta = 0.05;
    c.m_prime = 100000;
  } else if (name == "asymptotic") {
    const double nn = static_cast<double>(n);
    c.t = std::pow(nn, -0.5 - 0.2 * zeta);
    const double ratio =
        2.0 * std::max(2.0, std::ceil(std::pow(nn, 1.0 - 0.2 * zeta) / 2.0));
    c.eps = c.t / ratio;
    c.eta = 1.0 / 3.0;
    c.m_prime = 10000;
    c.sigma = c.c_prime * c.eps /
              (c.c_dprime * c.t *
               std::sqrt(std::log(static_cast<double>(c.m_prime) / c.delta)));
    c.d = static_cast<int>(ratio);
    c.mode = "strict";
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  return c;
}

std::string secret_digest(const std::vector<double>& secret) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : secret) {
    unsigned char b[sizeof(double)];
    std::memcpy(b, &v, sizeof(double));
    for (unsigned char c : b) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace massart
