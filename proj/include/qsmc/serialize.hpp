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

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsmc/montecarlo.hpp"
#include "qsmc/optics.hpp"
#include "qsmc/povm.hpp"
#include "qsmc/smc.hpp"
#include "qsmc/symmetric_set.hpp"

namespace qsmc {

using Json = nlohmann::ordered_json;

// Every number written by this module goes through round12, so documents are
// stable under diffing. Schemas are described in README.md.

double round12(double x);
std::string format12(double x);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
Json parse_json(const std::string& text);
std::string dump(const Json& doc);  // two-space indent, trailing newline

// Set description: {"N": 4, "coefficients": [{"re": .., "im": ..}, ..],
// "exponents": [..]}. Without "exponents" the set is a root set.
Json set_to_json(const SymmetricSet& set);
SymmetricSet set_from_json(const Json& doc, const ToleranceConfig& tol = {});

// Complex matrices are row-major arrays of rows of [re, im] pairs.
Json matrix_to_json(const OperatorMatrix& m);
OperatorMatrix matrix_from_json(const Json& doc);

Json povm_to_json(const Povm& povm, Strategy strategy);
Povm povm_from_json(const Json& doc);

Json report_to_json(const DesignReport& report);
Json validation_to_json(const ValidationReport& report);
Json plan_to_json(const SmcPlan& plan);
Json summary_to_json(const SimSummary& summary, const ConsistencyReport& consistency);

Json circuit_to_json(const OpticalCircuit& circuit);
OpticalCircuit circuit_from_json(const Json& doc);
Json distributions_to_json(const std::vector<DetectorDistribution>& per_input);

// CSV: header row, comma separated, numbers via format12.
std::string sweep_csv(const SweepResult& result);
std::string plan_csv(const SmcPlan& plan);
std::string summary_csv(const SimSummary& summary, const ConsistencyReport& consistency);
std::string distributions_csv(const std::vector<DetectorDistribution>& per_input);

// "eps_prob=1e-9" style override applied to `tol`.
void apply_tolerance_override(ToleranceConfig& tol, const std::string& assignment);
Json tolerances_to_json(const ToleranceConfig& tol);

}  // namespace qsmc
