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

#include "qsmc/montecarlo.hpp"

#include <algorithm>
#include <cmath>

namespace qsmc {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct StageSampler {
  double success_probability;
  std::vector<std::vector<double>> cdf;  // cdf[j][k]
};

std::vector<StageSampler> make_samplers(const SmcPlan& plan, const ToleranceConfig& tol) {
  std::vector<StageSampler> out;
  for (const StageRecord& s : plan.stages) {
    const Eigen::MatrixXd& probs = s.realization.conclusive_measure.outcome_probabilities;
    StageSampler sampler{s.realization.success_probability, {}};
    for (Eigen::Index j = 0; j < probs.rows(); ++j) {
      double total = probs.row(j).sum();
      if (std::abs(total - 1.0) > tol.eps_prob) {
        throw Error(Errc::contract_violation, "detector probabilities do not sum to 1");
      }
      std::vector<double> cdf(probs.cols());
      double acc = 0.0;
      for (Eigen::Index k = 0; k < probs.cols(); ++k) {
        acc += probs(j, k) / total;
        cdf[k] = acc;
      }
      cdf.back() = 1.0;
      sampler.cdf.push_back(std::move(cdf));
    }
    out.push_back(std::move(sampler));
  }
  return out;
}

int draw_index(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

void run_trial(const std::vector<StageSampler>& samplers, int order, std::uint64_t seed,
               std::uint64_t trial, std::vector<StageCounts>& counts, std::uint64_t& inconclusive) {
  TrialStream rng(seed, trial);
  const int j = std::min(static_cast<int>(rng.uniform() * order), order - 1);
  for (std::size_t s = 0; s < samplers.size(); ++s) {
    StageCounts& c = counts[s];
    ++c.reached;
    if (rng.uniform() < samplers[s].success_probability) {
      const int k = draw_index(samplers[s].cdf[j], rng.uniform());
      if (k == j) {
        ++c.conclusive_correct;
      } else {
        ++c.conclusive_wrong;
      }
      return;
    }
    ++c.descended;
  }
  ++inconclusive;
}

void finalize(SimSummary& sum) {
  std::uint64_t correct = 0, wrong = 0;
  for (const StageCounts& c : sum.stages) {
    const std::uint64_t n = c.conclusive_correct + c.conclusive_wrong;
    const double p = n ? static_cast<double>(c.conclusive_correct) / n : 0.0;
    sum.empirical_confidence.push_back(p);
    sum.confidence_stderr.push_back(n ? std::sqrt(p * (1.0 - p) / n) : 0.0);
    correct += c.conclusive_correct;
    wrong += c.conclusive_wrong;
  }
  const double t = static_cast<double>(sum.trials);
  sum.p_correct = correct / t;
  sum.p_error = wrong / t;
  sum.p_inconclusive = sum.terminal_inconclusive / t;
}

SimSummary empty_summary(const SmcPlan& plan, const SeedConfig& cfg) {
  if (cfg.trials < 1) throw Error(Errc::contract_violation, "trials must be at least 1");
  if (plan.stages.empty()) throw Error(Errc::contract_violation, "plan has no stages");
  SimSummary sum;
  sum.seed = cfg.seed;
  sum.trials = cfg.trials;
  sum.order = plan.order;
  sum.stages.resize(plan.stages.size());
  return sum;
}

}  // namespace

TrialStream::TrialStream(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(seed ^ mix64(trial * kGolden + 0x632BE59BD9B4E019ULL))) {}

std::uint64_t TrialStream::next() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialStream::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

SimSummary simulate_serial(const SmcPlan& plan, const SeedConfig& cfg, const ToleranceConfig& tol) {
  SimSummary sum = empty_summary(plan, cfg);
  const std::vector<StageSampler> samplers = make_samplers(plan, tol);
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    run_trial(samplers, plan.order, cfg.seed, t, sum.stages, sum.terminal_inconclusive);
  }
  finalize(sum);
  return sum;
}

SimSummary simulate(const SmcPlan& plan, const SeedConfig& cfg, const ToleranceConfig& tol) {
  SimSummary sum = empty_summary(plan, cfg);
  const std::vector<StageSampler> samplers = make_samplers(plan, tol);
  const long long trials = static_cast<long long>(cfg.trials);

#pragma omp parallel
  {
    std::vector<StageCounts> local(plan.stages.size());
    std::uint64_t local_inconclusive = 0;
#pragma omp for schedule(static) nowait
    for (long long t = 0; t < trials; ++t) {
      run_trial(samplers, plan.order, cfg.seed, static_cast<std::uint64_t>(t), local,
                local_inconclusive);
    }
#pragma omp critical(qsmc_simulate_merge)
    {
      for (std::size_t s = 0; s < local.size(); ++s) {
        sum.stages[s].reached += local[s].reached;
        sum.stages[s].conclusive_correct += local[s].conclusive_correct;
        sum.stages[s].conclusive_wrong += local[s].conclusive_wrong;
        sum.stages[s].descended += local[s].descended;
      }
      sum.terminal_inconclusive += local_inconclusive;
    }
  }
  finalize(sum);
  return sum;
}

bool ConsistencyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const StatCheck& c) { return c.pass; });
}

ConsistencyReport consistency_report(const SimSummary& summary, const SmcPlan& plan,
                                     double eps_prob) {
  if (summary.stages.size() != plan.stages.size()) {
    throw Error(Errc::dimension_mismatch, "summary and plan have different stage counts");
  }
  ConsistencyReport report;
  report.threshold = kConsistencyThreshold;

  auto add = [&](std::string name, std::uint64_t hits, std::uint64_t n, double analytic) {
    StatCheck c;
    c.name = std::move(name);
    c.samples = n;
    c.analytic = analytic;
    c.empirical = n ? static_cast<double>(hits) / n : 0.0;
    const double var = analytic * (1.0 - analytic);
    c.std_error = n ? std::sqrt(std::max(var, 0.0) / n) : 0.0;
    c.low_power = n < 2 || (var > 0.0 && n * std::min(analytic, 1.0 - analytic) < 5.0);
    if (n == 0) {
      c.pass = true;
    } else if (c.std_error > 0.0) {
      c.z = (c.empirical - analytic) / c.std_error;
      c.pass = std::abs(c.z) <= report.threshold;
    } else {
      c.pass = std::abs(c.empirical - analytic) <= eps_prob;
    }
    report.checks.push_back(std::move(c));
  };

  std::uint64_t correct = 0, wrong = 0;
  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const StageCounts& c = summary.stages[s];
    const StageRecord& rec = plan.stages[s];
    const std::uint64_t conclusive = c.conclusive_correct + c.conclusive_wrong;
    const std::string prefix = "stage" + std::to_string(rec.index);
    add(prefix + ".success", conclusive, c.reached, 1.0 - rec.failure_probability);
    add(prefix + ".confidence", c.conclusive_correct, conclusive, rec.confidence);
    correct += c.conclusive_correct;
    wrong += c.conclusive_wrong;
  }
  add("p_correct", correct, summary.trials, plan.p_correct_total);
  add("p_inconclusive", summary.terminal_inconclusive, summary.trials, plan.p_inconclusive_total);
  add("p_error", wrong, summary.trials, plan.p_error_total);
  return report;
}

}  // namespace qsmc
