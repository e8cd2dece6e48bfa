// Copyright 2026 The homcascade Authors
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

#include <string_view>

#include "homcascade/hilbert.hpp"

namespace homcascade {

enum class Atom { kLeft, kRight };
enum class Detector { kA, kB };
enum class Frame { kRotating, kLab };

inline constexpr std::array<Detector, 2> kDetectors{Detector::kA, Detector::kB};

char detector_label(Detector d);
Detector parse_detector(std::string_view label);

/// Model parameters. Rates and frequencies are in units of kappa when
/// kappa == 1, which is the convention everywhere downstream.
struct SystemParams {
  Complex g_left{0.0, 0.0};
  Complex g_right{0.0, 0.0};
  double kappa = 1.0;
  /// Detuning omega_eg - omega_c.
  double delta = 0.5;
  Frame frame = Frame::kRotating;
  /// Cavity frequency; only used in the lab frame.
  double omega_c = 10.0;
  /// Include the directional cross-coupling (a1 -> a3, a4 -> a2) in the
  /// no-jump Hamiltonian. Off reproduces H_s - i/2 sum J^dag J literally.
  bool cascade = true;

  double omega_eg() const { return omega_c + delta; }

  /// Mirror-symmetric setup with equal real couplings.
  static SystemParams symmetric(double g, double delta = 0.5, double kappa = 1.0);

  /// Throws InvalidArgument on non-finite values or kappa <= 0.
  void validate() const;
};

/// Linear map from one excitation sector to another.
struct SectorOperator {
  int source = 0;
  int target = 0;
  Matrix matrix;

  SectorOperator() = default;
  SectorOperator(int source_sector, int target_sector);
  SectorOperator(int source_sector, int target_sector, Matrix m);

  StateVector apply(const StateVector& v) const;
  SectorOperator adjoint() const;

  friend SectorOperator operator*(const SectorOperator& lhs, const SectorOperator& rhs);
  friend SectorOperator operator+(const SectorOperator& lhs, const SectorOperator& rhs);
  friend SectorOperator operator-(const SectorOperator& lhs, const SectorOperator& rhs);
  friend SectorOperator operator*(Complex s, const SectorOperator& op);
};

/// a_mode from sector k to k-1. Throws EmptySectorError for k == 0.
SectorOperator annihilation(int mode, int k);
/// a_mode^dag from sector k to k+1 (k in {0, 1}).
SectorOperator creation(int mode, int k);
SectorOperator sigma_minus(Atom atom, int k);
SectorOperator sigma_plus(Atom atom, int k);
SectorOperator identity(int k);

/// Discrete atom + cavity Hamiltonian restricted to sector k.
///
/// Lab frame: ground states sit at -omega_eg so |e00,e00> has zero energy,
/// photons at omega_c. Rotating frame at omega_c: the diagonal reduces to
/// -delta per photon (up to a constant per sector). Couplings:
///   g_L a1^dag s_L + g_L^* a2^dag s_L + g_R a3^dag s_R + g_R^* a4^dag s_R + h.c.
SectorOperator system_hamiltonian(const SystemParams& p, int k);

/// Hermitian cross-coupling i kappa/2 [(a1^dag a3 - a3^dag a1) + (a4^dag a2 - a2^dag a4)].
/// Together with the dissipators of J_a and J_b it gives the one-way drive
/// a1 -> a3 and a4 -> a2 of the bidirectional cascade.
SectorOperator cascade_hamiltonian(const SystemParams& p, int k);

/// J_a = sqrt(kappa) (a1 + a3), J_b = sqrt(kappa) (a2 + a4).
SectorOperator jump_operator(const SystemParams& p, Detector d, int k);

/// H_s (+ H_casc when p.cascade) - i/2 (J_a^dag J_a + J_b^dag J_b).
SectorOperator non_hermitian_hamiltonian(const SystemParams& p, int k);

/// Hermitian part of the no-jump generator, i.e. H_s (+ H_casc).
SectorOperator coherent_hamiltonian(const SystemParams& p, int k);

/// Mirror permutation as a unitary on sector k.
SectorOperator mirror_operator(int k);

double max_abs(const Matrix& m);

}  // namespace homcascade
