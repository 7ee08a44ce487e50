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

#include <array>
#include <string>
#include <vector>

#include "qsmc/reck.hpp"
#include "qsmc/smc.hpp"
#include "qsmc/symmetric_set.hpp"

namespace qsmc {

// Polarization conventions: H is ancilla |0>, V is ancilla |1>. A half-wave
// plate with its fast axis at angle x to the horizontal has Jones matrix
// [[cos 2x, sin 2x], [sin 2x, -cos 2x]] in the (H, V) basis. Polarizing beam
// splitters transmit V and reflect H.

struct CompiledAngles {
  double theta = 0.0;  // c0 = cos(theta)
  double phi = 0.0;    // c1 = sin(theta) cos(phi), c2 = sin(theta) sin(phi)
  double chi0 = 0.0, chi1 = 0.0, chi2 = 0.0;  // preparation plates
  std::array<double, 2> alpha{};              // first-stage coupling plates, modes 0 and 1
  double beta0 = 0.0, beta1 = 0.0;            // second-stage coupling plates
  bool beta0_by_convention = false;
};

enum class DegeneratePolicy { Reject, Convention };

/// Angles for the four-state qutrit instance with real coefficients
/// c2 <= c1 <= c0. The beta0 formula is 0/0 when c0 == c2 (all magnitudes
/// equal, so the second stage is never reached): Reject throws
/// Errc::degenerate_stage, Convention sets beta0 = pi/4.
CompiledAngles compile_angles(const SymmetricSet& set, const ToleranceConfig& tol = {},
                              DegeneratePolicy policy = DegeneratePolicy::Reject);

Eigen::Matrix2cd hwp_jones(double angle);

enum class ElementKind { HWP, PBS, PS, BS, Detector };

const char* to_string(ElementKind k);
ElementKind element_kind_from_string(const std::string& s);

struct OpticalElement {
  ElementKind kind = ElementKind::PS;
  // HWP, PS, Detector: {path}. BS: {a, b}, 50:50 with matrix
  // (1/sqrt 2)[[1, i], [i, 1]]. PBS: {input, transmitted (V), reflected (H)}.
  std::vector<int> paths;
  double value = 0.0;      // plate angle or phase, radians
  int box = 0;             // step I..VIII as 1..8
  bool per_input = false;  // PS whose phase is value * j for input state j
  std::string label;       // detector name
};

struct OpticalCircuit {
  std::vector<std::string> paths;
  int source = 0;  // the photon enters here, horizontally polarized
  std::vector<OpticalElement> elements;
  CompiledAngles angles;
  std::array<ReckMesh, 2> meshes;  // first- and second-stage F_4^{-1}
  bool stage2_inert = false;       // second stage never reached (P(?) = 0)
  std::vector<Complex> coefficients;  // the compiled input set

  int path_index(const std::string& label) const;
  std::vector<std::string> detector_labels() const;
};

/// Boxes I..VIII: preparation, first-stage plates, PBS readout, first
/// eight-port mesh (one vacuum port) with detectors s1_0..s1_3, second-stage
/// plates, PBS, second mesh (two vacuum ports) with detectors s2_0..s2_3, and
/// the inconclusive detector "?". Errc::unsupported_instance unless N = 4,
/// D = 3 root set with real ordered coefficients.
OpticalCircuit build_circuit(const SymmetricSet& set, const ToleranceConfig& tol = {});

struct DetectorDistribution {
  std::vector<std::string> labels;
  std::vector<double> probabilities;
  double undetected = 0.0;  // amplitude left on paths without a detector

  double at(const std::string& label) const;
};

/// Single-photon amplitude propagation over path (x) polarization.
DetectorDistribution simulate_network(const OpticalCircuit& circuit, int j);

/// The same distribution from the abstract chain of a plan for the qutrit
/// set, mapped onto the circuit's detector labels.
DetectorDistribution expected_detector_distribution(const SmcPlan& plan, int j,
                                                    const ToleranceConfig& tol = {});

struct CircuitCheck {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Structural checks (paths exist, detectors terminate their path), mesh
/// reconstruction <= 1e-9, and per-input distributions summing to 1.
CircuitCheck check_circuit(const OpticalCircuit& circuit, const ToleranceConfig& tol = {});

inline constexpr double kMeshTolerance = 1e-9;

}  // namespace qsmc
