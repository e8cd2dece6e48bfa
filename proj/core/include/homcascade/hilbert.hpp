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

// Truncated Fock space of two two-level atoms (left, right) and four cavity
// modes: a1, a2 in the left cavity, a3, a4 in the right cavity. Total
// excitation is capped at two, so the space splits into sectors k = 0, 1, 2
// of dimension 1, 6 and 19.

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace homcascade {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kMaxExcitation = 2;
inline constexpr int kNumModes = 4;

/// Occupation of |atom_L n1 n2, atom_R n3 n4>.
struct BasisState {
  int atom_l = 0;
  int n1 = 0;
  int n2 = 0;
  int atom_r = 0;
  int n3 = 0;
  int n4 = 0;

  int excitation() const { return atom_l + n1 + n2 + atom_r + n3 + n4; }

  /// Photon number in cavity mode 1..4.
  int photons(int mode) const;
  int& photons(int mode);
  int photon_count() const { return n1 + n2 + n3 + n4; }

  /// Checks occupation ranges and the total excitation cap.
  bool valid() const;

  friend bool operator==(const BasisState&, const BasisState&) = default;
};

/// Swaps the left and right systems about the central fiber region:
/// atom_L <-> atom_R, a1 <-> a4, a2 <-> a3.
BasisState mirror(const BasisState& s);

class SectorBasis {
 public:
  SectorBasis(int k, std::vector<BasisState> states);

  int excitation() const { return k_; }
  std::size_t size() const { return states_.size(); }
  const BasisState& operator[](std::size_t i) const { return states_[i]; }
  std::span<const BasisState> states() const { return states_; }

  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }

 private:
  int k_;
  std::vector<BasisState> states_;
};

/// Canonically ordered basis of sector k. For k = 2 the order is
/// |e00,e00>, |e10,g00>, |e01,g00>, |e00,g10>, |e00,g01>, |g10,e00>,
/// |g01,e00>, |g00,e10>, |g00,e01>, |g20,g00>, |g02,g00>, |g00,g20>,
/// |g00,g02>, |g11,g00>, |g10,g10>, |g10,g01>, |g01,g10>, |g01,g01>,
/// |g00,g11>. For k = 1 it is the ket reading order |e00,g00>, |g10,g00>,
/// |g01,g00>, |g00,e00>, |g00,g10>, |g00,g01>.
/// Throws InvalidSectorError for k outside {0, 1, 2}.
SectorBasis enumerate_sector(int k);

/// Cached immutable basis; safe for concurrent reads.
const SectorBasis& sector_basis(int k);

std::size_t sector_dimension(int k);

/// Ordinal of s within sector s.excitation(). Throws InvalidStateError.
std::size_t index_of(const BasisState& s);

/// Permutation p with basis[p[i]] == mirror(basis[i]).
const std::vector<std::size_t>& mirror_permutation(int k);

/// Amplitudes over one excitation sector. Norm may be below one: the
/// no-jump state decays.
struct StateVector {
  int sector = 0;
  Vector amplitudes;

  StateVector() = default;
  StateVector(int k, Vector amps);

  /// Zero vector in sector k.
  static StateVector zero(int k);
  /// Unit vector on a single basis state.
  static StateVector basis(const BasisState& s);

  Complex& operator[](std::size_t i) { return amplitudes(static_cast<Eigen::Index>(i)); }
  Complex operator[](std::size_t i) const { return amplitudes(static_cast<Eigen::Index>(i)); }
};

double norm_squared(const StateVector& v);

/// Both atoms excited, all modes empty. The starting state of every run.
StateVector initial_state();

}  // namespace homcascade
