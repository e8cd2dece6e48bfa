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

#include "homcascade/hilbert.hpp"

#include <string>

#include "homcascade/errors.hpp"

namespace homcascade {

int BasisState::photons(int mode) const {
  switch (mode) {
    case 1: return n1;
    case 2: return n2;
    case 3: return n3;
    case 4: return n4;
  }
  throw InvalidArgument("cavity mode must be in 1..4, got " + std::to_string(mode));
}

int& BasisState::photons(int mode) {
  switch (mode) {
    case 1: return n1;
    case 2: return n2;
    case 3: return n3;
    case 4: return n4;
  }
  throw InvalidArgument("cavity mode must be in 1..4, got " + std::to_string(mode));
}

bool BasisState::valid() const {
  auto atom_ok = [](int a) { return a == 0 || a == 1; };
  auto mode_ok = [](int n) { return n >= 0 && n <= kMaxExcitation; };
  return atom_ok(atom_l) && atom_ok(atom_r) && mode_ok(n1) && mode_ok(n2) && mode_ok(n3) &&
         mode_ok(n4) && excitation() <= kMaxExcitation;
}

BasisState mirror(const BasisState& s) {
  return BasisState{s.atom_r, s.n4, s.n3, s.atom_l, s.n2, s.n1};
}

SectorBasis::SectorBasis(int k, std::vector<BasisState> states) : k_(k), states_(std::move(states)) {}

namespace {

BasisState with_photon(BasisState s, int mode) {
  ++s.photons(mode);
  return s;
}

std::vector<BasisState> build_sector(int k) {
  std::vector<BasisState> out;
  const BasisState vac{};
  switch (k) {
    case 0:
      out.push_back(vac);
      break;
    case 1: {
      // Ket reading order: left atom, a1, a2, right atom, a3, a4.
      out.push_back(BasisState{1, 0, 0, 0, 0, 0});
      out.push_back(with_photon(vac, 1));
      out.push_back(with_photon(vac, 2));
      out.push_back(BasisState{0, 0, 0, 1, 0, 0});
      out.push_back(with_photon(vac, 3));
      out.push_back(with_photon(vac, 4));
      break;
    }
    case 2: {
      const BasisState left{1, 0, 0, 0, 0, 0};
      const BasisState right{0, 0, 0, 1, 0, 0};
      out.push_back(BasisState{1, 0, 0, 1, 0, 0});
      for (int m = 1; m <= kNumModes; ++m) out.push_back(with_photon(left, m));
      for (int m = 1; m <= kNumModes; ++m) out.push_back(with_photon(right, m));
      for (int m = 1; m <= kNumModes; ++m) out.push_back(with_photon(with_photon(vac, m), m));
      for (int i = 1; i <= kNumModes; ++i)
        for (int j = i + 1; j <= kNumModes; ++j) out.push_back(with_photon(with_photon(vac, i), j));
      break;
    }
    default:
      throw InvalidSectorError("excitation sector must be 0, 1 or 2, got " + std::to_string(k));
  }
  return out;
}

// Packs an occupation tuple into a small integer key (base 3 digits).
int pack(const BasisState& s) {
  return ((((s.atom_l * 3 + s.n1) * 3 + s.n2) * 3 + s.atom_r) * 3 + s.n3) * 3 + s.n4;
}

struct Tables {
  std::array<SectorBasis, 3> bases;
  std::array<int, 729> index;  // pack(s) -> ordinal, -1 if absent
  std::array<std::vector<std::size_t>, 3> mirror;

  Tables()
      : bases{SectorBasis(0, build_sector(0)), SectorBasis(1, build_sector(1)),
              SectorBasis(2, build_sector(2))} {
    index.fill(-1);
    for (const auto& b : bases)
      for (std::size_t i = 0; i < b.size(); ++i) index[pack(b[i])] = static_cast<int>(i);
    for (int k = 0; k <= kMaxExcitation; ++k) {
      const auto& b = bases[k];
      mirror[k].resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i)
        mirror[k][i] = static_cast<std::size_t>(index[pack(homcascade::mirror(b[i]))]);
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

void check_sector(int k) {
  if (k < 0 || k > kMaxExcitation)
    throw InvalidSectorError("excitation sector must be 0, 1 or 2, got " + std::to_string(k));
}

}  // namespace

SectorBasis enumerate_sector(int k) { return SectorBasis(k, build_sector(k)); }

const SectorBasis& sector_basis(int k) {
  check_sector(k);
  return tables().bases[k];
}

std::size_t sector_dimension(int k) { return sector_basis(k).size(); }

std::size_t index_of(const BasisState& s) {
  if (!s.valid()) throw InvalidStateError("basis state occupations out of range");
  return static_cast<std::size_t>(tables().index[pack(s)]);
}

const std::vector<std::size_t>& mirror_permutation(int k) {
  check_sector(k);
  return tables().mirror[k];
}

StateVector::StateVector(int k, Vector amps) : sector(k), amplitudes(std::move(amps)) {
  if (static_cast<std::size_t>(amplitudes.size()) != sector_dimension(k))
    throw SectorMismatchError("amplitude count does not match sector " + std::to_string(k));
}

StateVector StateVector::zero(int k) { return StateVector(k, Vector::Zero(sector_dimension(k))); }

StateVector StateVector::basis(const BasisState& s) {
  const std::size_t i = index_of(s);
  StateVector v = zero(s.excitation());
  v[i] = 1.0;
  return v;
}

double norm_squared(const StateVector& v) { return v.amplitudes.squaredNorm(); }

StateVector initial_state() { return StateVector::basis(BasisState{1, 0, 0, 1, 0, 0}); }

}  // namespace homcascade
