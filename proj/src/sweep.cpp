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

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "qsmc/smc.hpp"

namespace qsmc {

namespace {

struct RowOrDiagnostic {
  std::optional<SweepRow> row;
  std::string diagnostic;
};

// Closed forms for N = 4, D = 3 symmetric qutrits.
RowOrDiagnostic evaluate_point(const QutritPoint& pt, const ToleranceConfig& tol) {
  RowOrDiagnostic out;
  const double c0 = pt.c0, c1 = pt.c1;
  const double rest = 1.0 - c0 * c0 - c1 * c1;
  if (!(c0 > tol.eps_group) || !(c1 > tol.eps_group) || !(rest > 0.0) ||
      std::sqrt(rest) <= tol.eps_group) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "skipped (" << c0 << ", " << c1 << "): needs nonzero coefficients with c0^2+c1^2<1";
    out.diagnostic = msg.str();
    return out;
  }
  const double c2 = std::sqrt(rest);
  double mags[3] = {c0, c1, c2};
  std::sort(mags, mags + 3);

  SweepRow r{};
  r.c0 = c0;
  r.c1 = c1;
  r.mc_conf_stage1 = 3.0 / 4.0;
  r.mc_conf_stage2 = 1.0 / 2.0;
  const double sum = c0 + c1 + c2;
  r.me_conf = sum * sum / 4.0;
  r.p_corr_me = r.me_conf;

  const double cmin = mags[0];
  const bool uniform = mags[2] - mags[0] <= tol.eps_group;
  const bool one_dimensional = !uniform && mags[1] - mags[0] <= tol.eps_group;
  r.p_fail_stage1 = uniform ? 0.0 : std::max(0.0, 1.0 - 3.0 * cmin * cmin);

  if (uniform) {
    r.p_fail_stage2 = 0.0;
  } else if (one_dimensional) {
    // No second stage exists; everything that fails stage 1 is inconclusive.
    r.p_fail_stage2 = 1.0;
  } else {
    // Smallest surviving failure coefficient, squared.
    const double cmin_fail2 = (mags[1] * mags[1] - cmin * cmin) / r.p_fail_stage1;
    const double c_top2 = (mags[2] * mags[2] - cmin * cmin) / r.p_fail_stage1;
    const bool second_uniform = std::abs(std::sqrt(c_top2) - std::sqrt(cmin_fail2)) <= tol.eps_group;
    r.p_fail_stage2 = second_uniform ? 0.0 : std::max(0.0, 1.0 - 2.0 * cmin_fail2);
  }
  r.p_corr_stage1_only = (1.0 - r.p_fail_stage1) * r.mc_conf_stage1;
  r.p_corr_smc =
      r.p_corr_stage1_only + r.p_fail_stage1 * (1.0 - r.p_fail_stage2) * r.mc_conf_stage2;
  r.p_inconclusive_smc = r.p_fail_stage1 * r.p_fail_stage2;
  out.row = r;
  return out;
}

SweepResult collect(std::vector<RowOrDiagnostic>&& evaluated) {
  SweepResult result;
  for (auto& e : evaluated) {
    if (e.row) {
      result.rows.push_back(*e.row);
    } else {
      result.skipped.push_back(std::move(e.diagnostic));
    }
  }
  return result;
}

}  // namespace

SweepResult sweep_qutrit(const std::vector<QutritPoint>& grid, const ToleranceConfig& tol) {
  tol.validate();
  std::vector<RowOrDiagnostic> evaluated(grid.size());
  const long long count = static_cast<long long>(grid.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    evaluated[i] = evaluate_point(grid[i], tol);
  }
  return collect(std::move(evaluated));
}

SweepResult sweep_qutrit_serial(const std::vector<QutritPoint>& grid, const ToleranceConfig& tol) {
  tol.validate();
  std::vector<RowOrDiagnostic> evaluated;
  evaluated.reserve(grid.size());
  for (const QutritPoint& pt : grid) evaluated.push_back(evaluate_point(pt, tol));
  return collect(std::move(evaluated));
}

std::vector<QutritPoint> make_grid(double c0_lo, double c0_hi, int count0, double c1_lo,
                                   double c1_hi, int count1) {
  if (count0 < 1 || count1 < 1) throw Error(Errc::invalid_dimension, "grid counts must be positive");
  auto axis = [](double lo, double hi, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) {
      v[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
    return v;
  };
  const std::vector<double> a = axis(c0_lo, c0_hi, count0);
  const std::vector<double> b = axis(c1_lo, c1_hi, count1);
  std::vector<QutritPoint> grid;
  grid.reserve(a.size() * b.size());
  for (double x : a) {
    for (double y : b) grid.push_back({x, y});
  }
  return grid;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "c0",           "c1",         "mc_conf_stage1",     "mc_conf_stage2",
      "me_conf",      "p_fail_stage1", "p_fail_stage2",   "p_corr_stage1_only",
      "p_corr_smc",   "p_corr_me",  "p_inconclusive_smc"};
  return cols;
}

}  // namespace qsmc
