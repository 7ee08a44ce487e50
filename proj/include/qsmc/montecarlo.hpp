// Copyright 2026 The qsmc Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsmc/smc.hpp"

namespace qsmc {

struct SeedConfig {
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
};

struct StageCounts {
  std::uint64_t reached = 0;
  std::uint64_t conclusive_correct = 0;
  std::uint64_t conclusive_wrong = 0;
  std::uint64_t descended = 0;  // failed the two-outcome step at this stage

  bool operator==(const StageCounts&) const = default;
};

struct SimSummary {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  int order = 0;
  std::vector<StageCounts> stages;
  std::uint64_t terminal_inconclusive = 0;

  // Derived from the counts.
  std::vector<double> empirical_confidence;  // correct / (correct + wrong)
  std::vector<double> confidence_stderr;     // sqrt(p(1-p)/n), empirical p
  double p_correct = 0.0;
  double p_inconclusive = 0.0;
  double p_error = 0.0;

  bool operator==(const SimSummary&) const = default;
};

// Counter-based stream for one trial: the state depends only on (seed,
// trial), so trials can run on any thread in any order.
class TrialStream {
 public:
  TrialStream(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t state_;
};

/// Born-rule sampling of the whole plan: draw j uniformly, at each stage draw
/// the ancilla branch, on success draw the detector from P(k|u_j) by inverse
/// CDF. Trials run in parallel; the result is identical to simulate_serial.
SimSummary simulate(const SmcPlan& plan, const SeedConfig& cfg, const ToleranceConfig& tol = {});

/// Single-threaded reference for simulate.
SimSummary simulate_serial(const SmcPlan& plan, const SeedConfig& cfg,
                           const ToleranceConfig& tol = {});

struct StatCheck {
  std::string name;
  double empirical = 0.0;
  double analytic = 0.0;
  double std_error = 0.0;  // from the analytic value
  double z = 0.0;
  std::uint64_t samples = 0;
  bool low_power = false;
  bool pass = true;
};

struct ConsistencyReport {
  double threshold = 4.0;
  std::vector<StatCheck> checks;

  bool pass() const;
};

inline constexpr double kConsistencyThreshold = 4.0;

/// z-scores of every empirical statistic against the plan's analytic values;
/// a statistic passes when |z| <= 4.
ConsistencyReport consistency_report(const SimSummary& summary, const SmcPlan& plan,
                                     double eps_prob = 1e-10);

}  // namespace qsmc
