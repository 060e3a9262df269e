// Copyright 2026 The ncmetro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "ncmetro/fock.hpp"

namespace ncmetro {

enum class CausalOrder {
  /// Control in |+⟩: both gate orders in coherent superposition.
  Superposed,
  /// Control in |0⟩: Û_A Û_B only.
  Definite,
};

/// Control qubit ⊗ mode, control-major: joint(c·D + k) is control c, level k.
struct SwitchState {
  Eigen::Vector2cd control;  ///< initial control state
  FockVector joint;

  int mode_dim() const { return static_cast<int>(joint.size() / 2); }
  FockVector branch(int c) const { return joint.segment(c * mode_dim(), mode_dim()); }
};

/// (|0⟩ ⊗ Û_A Û_B|Ψ⟩ + |1⟩ ⊗ Û_B Û_A|Ψ⟩)/√2 with Û_A = exp(−iNxP̂) and
/// Û_B = exp(−iNpX̂). With CausalOrder::Definite only the first branch is
/// populated. The truncation is the probe's dimension.
SwitchState switch_protocol(int n, double x, double p, const FockVector& probe,
                            CausalOrder order = CausalOrder::Superposed);

/// Partial trace over the mode.
Eigen::Matrix2cd reduced_control(const SwitchState& state);

/// ⟨Ψ|Û_B†Û_A†Û_BÛ_A|Ψ⟩, which the Weyl relation fixes to exp(−iN²xp).
Complex branch_overlap(int n, double x, double p, const FockVector& probe);

struct SwitchQfi {
  double control = 0.0;  ///< QFI of the reduced control state
  double joint = 0.0;    ///< QFI of the full control ⊗ mode state
};

/// QFI with respect to x at fixed p from central differences (δ, δ/2 and
/// one Richardson step), for both the reduced control state and the joint
/// state.
SwitchQfi switch_qfi(int n, double x, double p, const FockVector& probe,
                     CausalOrder order = CausalOrder::Superposed,
                     double step = kDefaultFiniteDifferenceStep);

}  // namespace ncmetro
