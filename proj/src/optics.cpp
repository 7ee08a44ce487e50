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

#include "qsmc/optics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace qsmc {

namespace {

constexpr int kH = 0;
constexpr int kV = 1;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

void require_qutrit(const SymmetricSet& set, const ToleranceConfig& tol) {
  if (set.order() != 4 || set.dim() != 3) {
    throw Error(Errc::unsupported_instance, "optical compilation supports N = 4, D = 3 only");
  }
  for (int k = 0; k < 3; ++k) {
    const Mode& m = set.modes()[k];
    if (m.exponent != k || m.embed_position != k) {
      throw Error(Errc::unsupported_instance, "optical compilation needs a root set");
    }
    if (std::abs(m.coefficient.imag()) > tol.eps_norm || m.coefficient.real() < -tol.eps_norm) {
      throw Error(Errc::unsupported_instance, "optical compilation needs real nonnegative coefficients");
    }
  }
}

class CircuitBuilder {
 public:
  int path(const std::string& label) {
    circuit_.paths.push_back(label);
    return static_cast<int>(circuit_.paths.size()) - 1;
  }
  void hwp(int p, double angle, int box) { push({ElementKind::HWP, {p}, angle, box, false, ""}); }
  void ps(int p, double phase, int box, bool per_input = false) {
    push({ElementKind::PS, {p}, phase, box, per_input, ""});
  }
  void bs(int a, int b, int box) { push({ElementKind::BS, {a, b}, 0.0, box, false, ""}); }
  void pbs(int in, int transmitted, int reflected, int box) {
    push({ElementKind::PBS, {in, transmitted, reflected}, 0.0, box, false, ""});
  }
  void detector(int p, const std::string& label, int box) {
    push({ElementKind::Detector, {p}, 0.0, box, false, label});
  }
  // Expands each mesh cell into PS(phi), BS, PS(2 theta), BS on its two ports.
  void mesh(const ReckMesh& m, const std::vector<int>& ports, int box) {
    for (const MeshLayer& layer : m.layers) {
      const int a = ports[layer.mode], b = ports[layer.mode + 1];
      ps(a, layer.phi, box);
      bs(a, b, box);
      ps(a, 2.0 * layer.theta, box);
      bs(a, b, box);
    }
    for (std::size_t k = 0; k < ports.size(); ++k) {
      if (m.output_phases[k] != 0.0) ps(ports[k], m.output_phases[k], box);
    }
  }

  OpticalCircuit& circuit() { return circuit_; }

 private:
  void push(OpticalElement e) { circuit_.elements.push_back(std::move(e)); }
  OpticalCircuit circuit_;
};

}  // namespace

const char* to_string(ElementKind k) {
  switch (k) {
    case ElementKind::HWP: return "HWP";
    case ElementKind::PBS: return "PBS";
    case ElementKind::PS: return "PS";
    case ElementKind::BS: return "BS";
    case ElementKind::Detector: return "Detector";
  }
  return "?";
}

ElementKind element_kind_from_string(const std::string& s) {
  for (ElementKind k : {ElementKind::HWP, ElementKind::PBS, ElementKind::PS, ElementKind::BS,
                        ElementKind::Detector}) {
    if (s == to_string(k)) return k;
  }
  throw Error(Errc::parse_error, "unknown optical element kind '" + s + "'");
}

Eigen::Matrix2cd hwp_jones(double angle) {
  const double c = std::cos(2.0 * angle), s = std::sin(2.0 * angle);
  Eigen::Matrix2cd m;
  m << c, s, s, -c;
  return m;
}

CompiledAngles compile_angles(const SymmetricSet& set, const ToleranceConfig& tol,
                              DegeneratePolicy policy) {
  require_qutrit(set, tol);
  const double c0 = std::abs(set.modes()[0].coefficient);
  const double c1 = std::abs(set.modes()[1].coefficient);
  const double c2 = std::abs(set.modes()[2].coefficient);
  if (c2 > c1 + tol.eps_group || c1 > c0 + tol.eps_group) {
    throw Error(Errc::contract_violation, "coefficients must satisfy c2 <= c1 <= c0");
  }

  CompiledAngles a;
  a.theta = std::acos(clamp_unit(c0));
  a.phi = std::atan2(c2, c1);
  a.chi0 = a.theta / 2.0;
  a.chi1 = a.phi / 2.0 + kPi / 4.0;
  a.chi2 = kPi / 4.0;
  a.alpha[0] = 0.5 * std::acos(clamp_unit(c2 / c0));
  a.alpha[1] = 0.5 * std::acos(clamp_unit(c2 / c1));
  a.beta1 = kPi / 4.0;

  if (c0 - c2 <= tol.eps_group) {
    if (policy == DegeneratePolicy::Reject) {
      throw Error(Errc::degenerate_stage,
                  "all magnitudes are equal: the second stage is never reached and its plate "
                  "angle is 0/0; compile with the pi/4 convention instead");
    }
    a.beta0 = kPi / 4.0;
    a.beta0_by_convention = true;
  } else {
    const double ratio = std::clamp((c1 * c1 - c2 * c2) / (c0 * c0 - c2 * c2), 0.0, 1.0);
    a.beta0 = 0.5 * std::acos(std::sqrt(ratio)) + kPi / 4.0;
  }
  return a;
}

int OpticalCircuit::path_index(const std::string& label) const {
  const auto it = std::find(paths.begin(), paths.end(), label);
  if (it == paths.end()) throw Error(Errc::out_of_range, "no path named '" + label + "'");
  return static_cast<int>(it - paths.begin());
}

std::vector<std::string> OpticalCircuit::detector_labels() const {
  std::vector<std::string> out;
  for (const OpticalElement& e : elements) {
    if (e.kind == ElementKind::Detector) out.push_back(e.label);
  }
  return out;
}

OpticalCircuit build_circuit(const SymmetricSet& set, const ToleranceConfig& tol) {
  const CompiledAngles angles = compile_angles(set, tol, DegeneratePolicy::Convention);
  const OperatorMatrix inverse_dft = dft_matrix(4).adjoint();

  CircuitBuilder b;
  const int src = b.path("src");
  const int a = b.path("prep_a");
  const int m0 = b.path("m0");
  const int m1 = b.path("m1");
  const int m2 = b.path("m2");
  const int s0 = b.path("s0");
  const int s1 = b.path("s1");
  const int f0 = b.path("f0");
  const int f1 = b.path("f1");
  const int vac1 = b.path("vac1");
  const int q = b.path("q");
  const int t0 = b.path("t0");
  const int vac2 = b.path("vac2");
  const int vac3 = b.path("vac3");

  // I: split the photon over modes 0, 1, 2, all horizontal, then the
  // symmetry phases exp(2 pi i j m / 4).
  b.hwp(src, angles.chi0, 1);
  b.pbs(src, a, m0, 1);
  b.hwp(a, angles.chi1, 1);
  b.pbs(a, m2, m1, 1);
  b.hwp(m2, angles.chi2, 1);
  b.ps(m1, 2.0 * kPi * 1 / 4, 1, true);
  b.ps(m2, 2.0 * kPi * 2 / 4, 1, true);

  // II: coupling plates. Mode 2 carries c_min and needs none.
  b.hwp(m0, angles.alpha[0], 2);
  b.hwp(m1, angles.alpha[1], 2);

  // III: ancilla readout, H (success) reflected towards the first mesh.
  b.pbs(m0, f0, s0, 3);
  b.pbs(m1, f1, s1, 3);

  // IV: F_4^{-1} on (s0, s1, m2, vacuum) and detectors on its outputs.
  OpticalCircuit& c = b.circuit();
  c.meshes[0] = reck_decompose(inverse_dft, tol.eps_unitary);
  const std::vector<int> ports1 = {s0, s1, m2, vac1};
  b.mesh(c.meshes[0], ports1, 4);
  for (int k = 0; k < 4; ++k) b.detector(ports1[k], "s1_" + std::to_string(k), 4);

  // V: second-stage coupling on the vertically polarized failure modes.
  b.hwp(f0, angles.beta0, 5);
  b.hwp(f1, angles.beta1, 5);

  // VI: readout on mode 0 only; beta1 = pi/4 turns mode 1 fully horizontal.
  b.pbs(f0, q, t0, 6);

  // VII: F_4^{-1} on (t0, f1, vacuum, vacuum).
  c.meshes[1] = reck_decompose(inverse_dft, tol.eps_unitary);
  const std::vector<int> ports2 = {t0, f1, vac2, vac3};
  b.mesh(c.meshes[1], ports2, 7);
  for (int k = 0; k < 4; ++k) b.detector(ports2[k], "s2_" + std::to_string(k), 7);

  // VIII: inconclusive.
  b.detector(q, "?", 8);

  c.source = src;
  c.angles = angles;
  c.stage2_inert = coefficient_profile(set, tol).uniform();
  c.coefficients = set.coefficients();
  return std::move(c);
}

double DetectorDistribution::at(const std::string& label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probabilities[i];
  }
  throw Error(Errc::out_of_range, "no detector labelled '" + label + "'");
}

DetectorDistribution simulate_network(const OpticalCircuit& circuit, int j) {
  const int n_paths = static_cast<int>(circuit.paths.size());
  // amp(p, pol)
  Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(n_paths, 2);
  amp(circuit.source, kH) = 1.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i1(0.0, 1.0);

  DetectorDistribution dist;
  for (const OpticalElement& e : circuit.elements) {
    for (int p : e.paths) {
      if (p < 0 || p >= n_paths) throw Error(Errc::out_of_range, "element references a missing path");
    }
    switch (e.kind) {
      case ElementKind::HWP: {
        const Eigen::Vector2cd in = amp.row(e.paths[0]).transpose();
        amp.row(e.paths[0]) = (hwp_jones(e.value) * in).transpose();
        break;
      }
      case ElementKind::PS: {
        const double phase = e.per_input ? e.value * j : e.value;
        amp.row(e.paths[0]) *= std::polar(1.0, phase);
        break;
      }
      case ElementKind::BS: {
        const Eigen::RowVector2cd x = amp.row(e.paths[0]);
        const Eigen::RowVector2cd y = amp.row(e.paths[1]);
        amp.row(e.paths[0]) = inv_sqrt2 * (x + i1 * y);
        amp.row(e.paths[1]) = inv_sqrt2 * (i1 * x + y);
        break;
      }
      case ElementKind::PBS: {
        const Complex h = amp(e.paths[0], kH), v = amp(e.paths[0], kV);
        amp.row(e.paths[0]).setZero();
        amp(e.paths[1], kV) += v;
        amp(e.paths[2], kH) += h;
        break;
      }
      case ElementKind::Detector: {
        dist.labels.push_back(e.label);
        dist.probabilities.push_back(amp.row(e.paths[0]).squaredNorm());
        amp.row(e.paths[0]).setZero();
        break;
      }
    }
  }
  dist.undetected = amp.squaredNorm();
  return dist;
}

DetectorDistribution expected_detector_distribution(const SmcPlan& plan, int j,
                                                    const ToleranceConfig& tol) {
  if (plan.order != 4 || plan.stages.empty() || plan.stages.front().dim != 3 ||
      plan.stages.size() > 2) {
    throw Error(Errc::unsupported_instance, "expected distribution needs a four-state qutrit plan");
  }
  const ChainOutcome chain = run_chain(plan, j, tol);
  DetectorDistribution dist;
  for (int s = 0; s < 2; ++s) {
    for (int k = 0; k < 4; ++k) {
      dist.labels.push_back("s" + std::to_string(s + 1) + "_" + std::to_string(k));
      dist.probabilities.push_back(
          s < static_cast<int>(chain.stage_detections.size()) ? chain.stage_detections[s](k) : 0.0);
    }
  }
  dist.labels.push_back("?");
  dist.probabilities.push_back(chain.inconclusive);
  return dist;
}

CircuitCheck check_circuit(const OpticalCircuit& circuit, const ToleranceConfig& tol) {
  CircuitCheck check;
  const int n_paths = static_cast<int>(circuit.paths.size());
  if (circuit.source < 0 || circuit.source >= n_paths) check.problems.push_back("source path missing");

  std::set<int> terminated;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < circuit.elements.size(); ++i) {
    const OpticalElement& e = circuit.elements[i];
    const std::size_t expected = e.kind == ElementKind::BS ? 2 : e.kind == ElementKind::PBS ? 3 : 1;
    std::ostringstream where;
    where << "element " << i << " (" << to_string(e.kind) << ")";
    if (e.paths.size() != expected) {
      check.problems.push_back(where.str() + ": wrong number of paths");
      continue;
    }
    for (int p : e.paths) {
      if (p < 0 || p >= n_paths) {
        check.problems.push_back(where.str() + ": references a missing path");
      } else if (terminated.count(p)) {
        check.problems.push_back(where.str() + ": uses a path after its detector");
      }
    }
    if (e.kind == ElementKind::Detector) {
      if (!labels.insert(e.label).second) check.problems.push_back(where.str() + ": duplicate label");
      terminated.insert(e.paths[0]);
    }
    if (e.box < 1 || e.box > 8) check.problems.push_back(where.str() + ": box outside I..VIII");
  }
  if (!check.ok()) return check;

  for (int m = 0; m < 2; ++m) {
    if (circuit.meshes[m].target.size() == 0) continue;
    const double err = circuit.meshes[m].reconstruction_error();
    if (err > kMeshTolerance) {
      check.problems.push_back("mesh " + std::to_string(m + 1) + " reconstruction error " +
                               std::to_string(err));
    }
  }
  for (int j = 0; j < 4; ++j) {
    const DetectorDistribution d = simulate_network(circuit, j);
    double total = d.undetected;
    for (double p : d.probabilities) total += p;
    if (std::abs(total - 1.0) > tol.eps_prob || d.undetected > tol.eps_prob) {
      check.problems.push_back("input " + std::to_string(j) + ": distribution does not sum to 1");
    }
  }
  return check;
}

}  // namespace qsmc
