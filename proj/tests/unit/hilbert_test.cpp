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

#include <gtest/gtest.h>

#include <set>

#include "homcascade/errors.hpp"
#include "support/fock.hpp"

namespace homcascade {
namespace {

using testing::occupation;
using testing::published_sector2;

TEST(Hilbert, SectorSizes) {
  EXPECT_EQ(sector_dimension(0), 1u);
  EXPECT_EQ(sector_dimension(1), 6u);
  EXPECT_EQ(sector_dimension(2), 19u);
}

TEST(Hilbert, TwoExcitationOrderMatchesPublishedListing) {
  const auto& basis = sector_basis(2);
  ASSERT_EQ(basis.size(), published_sector2().size());
  for (std::size_t i = 0; i < basis.size(); ++i) EXPECT_EQ(occupation(basis[i]), published_sector2()[i]) << "c" << i + 1;
}

TEST(Hilbert, BruteForceEnumerationAgrees) {
  // All occupation tuples within the per-slot caps, grouped by excitation.
  std::array<std::set<testing::Occupation>, 3> expected;
  for (int a = 0; a < 2; ++a)
    for (int n1 = 0; n1 < 3; ++n1)
      for (int n2 = 0; n2 < 3; ++n2)
        for (int b = 0; b < 2; ++b)
          for (int n3 = 0; n3 < 3; ++n3)
            for (int n4 = 0; n4 < 3; ++n4) {
              const int k = a + n1 + n2 + b + n3 + n4;
              if (k <= 2) expected[k].insert({a, n1, n2, b, n3, n4});
            }
  for (int k = 0; k <= 2; ++k) {
    std::set<testing::Occupation> got;
    for (const auto& s : enumerate_sector(k)) got.insert(occupation(s));
    EXPECT_EQ(got, expected[k]) << "sector " << k;
  }
}

TEST(Hilbert, SingleExcitationOrder) {
  const auto& b = sector_basis(1);
  ASSERT_EQ(b.size(), 6u);
  EXPECT_EQ(b[0].atom_l, 1);
  EXPECT_EQ(b[1].n1, 1);
  EXPECT_EQ(b[2].n2, 1);
  EXPECT_EQ(b[3].atom_r, 1);
  EXPECT_EQ(b[4].n3, 1);
  EXPECT_EQ(b[5].n4, 1);
}

TEST(Hilbert, IndexLookup) {
  EXPECT_EQ(index_of({1, 0, 0, 1, 0, 0}), 0u);
  EXPECT_EQ(index_of({0, 1, 0, 0, 1, 0}), 14u);
  EXPECT_EQ(index_of({0, 0, 0, 0, 1, 1}), 18u);
  EXPECT_EQ(index_of({}), 0u);
  for (int k = 0; k <= 2; ++k)
    for (std::size_t i = 0; i < sector_dimension(k); ++i) EXPECT_EQ(index_of(sector_basis(k)[i]), i);
}

TEST(Hilbert, InvalidInputs) {
  EXPECT_THROW(enumerate_sector(3), InvalidSectorError);
  EXPECT_THROW(enumerate_sector(-1), InvalidSectorError);
  EXPECT_THROW(index_of({2, 0, 0, 0, 0, 0}), InvalidStateError);
  EXPECT_THROW(index_of({0, 3, 0, 0, 0, 0}), InvalidStateError);
  EXPECT_THROW(index_of({1, 1, 1, 0, 0, 0}), InvalidStateError);
  EXPECT_THROW(index_of({0, -1, 0, 0, 0, 0}), InvalidStateError);
}

TEST(Hilbert, NormSquared) {
  StateVector v = StateVector::zero(2);
  EXPECT_DOUBLE_EQ(norm_squared(v), 0.0);
  v[0] = 1.0;
  EXPECT_DOUBLE_EQ(norm_squared(v), 1.0);
  v[0] = 1.0 / std::sqrt(2.0);
  v[1] = Complex(0.0, 1.0 / std::sqrt(2.0));
  EXPECT_NEAR(norm_squared(v), 1.0, 1e-15);
}

TEST(Hilbert, MirrorIsAnInvolutionOnEachSector) {
  for (int k = 0; k <= 2; ++k) {
    const auto& perm = mirror_permutation(k);
    for (std::size_t i = 0; i < perm.size(); ++i) {
      EXPECT_EQ(perm[perm[i]], i);
      EXPECT_EQ(sector_basis(k)[perm[i]], mirror(sector_basis(k)[i]));
    }
  }
  // eL + photon in mode 1 <-> eR + photon in mode 4.
  EXPECT_EQ(mirror(BasisState{1, 1, 0, 0, 0, 0}), (BasisState{0, 0, 0, 1, 0, 1}));
}

TEST(Hilbert, InitialStateIsBothAtomsExcited) {
  const StateVector v = initial_state();
  EXPECT_EQ(v.sector, 2);
  EXPECT_EQ(v.amplitudes, StateVector::basis({1, 0, 0, 1, 0, 0}).amplitudes);
}

}  // namespace
}  // namespace homcascade
