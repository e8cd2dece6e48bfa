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

#include "homcascade/operators.hpp"

#include <cmath>
#include <string>

#include "homcascade/errors.hpp"

namespace homcascade {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_lowerable(int k) {
  if (k == 0) throw EmptySectorError("lowering operator has no action on the vacuum sector");
  if (k < 0 || k > kMaxExcitation)
    throw InvalidSectorError("excitation sector must be 0, 1 or 2, got " + std::to_string(k));
}

void require_raisable(int k) {
  if (k < 0 || k >= kMaxExcitation)
    throw InvalidSectorError("raising operator needs source sector 0 or 1, got " + std::to_string(k));
}

int& atom_slot(BasisState& s, Atom a) { return a == Atom::kLeft ? s.atom_l : s.atom_r; }

void check_mode(int mode) {
  if (mode < 1 || mode > kNumModes)
    throw InvalidArgument("cavity mode must be in 1..4, got " + std::to_string(mode));
}

}  // namespace

char detector_label(Detector d) { return d == Detector::kA ? 'a' : 'b'; }

Detector parse_detector(std::string_view label) {
  if (label == "a") return Detector::kA;
  if (label == "b") return Detector::kB;
  throw InvalidArgument("detector label must be 'a' or 'b'");
}

SystemParams SystemParams::symmetric(double g, double delta, double kappa) {
  SystemParams p;
  p.g_left = p.g_right = Complex(g, 0.0);
  p.delta = delta;
  p.kappa = kappa;
  return p;
}

void SystemParams::validate() const {
  auto finite = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");
  if (!finite(g_left) || !finite(g_right)) throw InvalidArgument("couplings must be finite");
  if (!std::isfinite(delta)) throw InvalidArgument("detuning must be finite");
  if (frame == Frame::kLab && !std::isfinite(omega_c))
    throw InvalidArgument("cavity frequency must be finite");
}

SectorOperator::SectorOperator(int source_sector, int target_sector)
    : source(source_sector),
      target(target_sector),
      matrix(Matrix::Zero(static_cast<Eigen::Index>(sector_dimension(target_sector)),
                          static_cast<Eigen::Index>(sector_dimension(source_sector)))) {}

SectorOperator::SectorOperator(int source_sector, int target_sector, Matrix m)
    : source(source_sector), target(target_sector), matrix(std::move(m)) {
  if (static_cast<std::size_t>(matrix.rows()) != sector_dimension(target) ||
      static_cast<std::size_t>(matrix.cols()) != sector_dimension(source))
    throw SectorMismatchError("operator shape does not match its sectors");
}

StateVector SectorOperator::apply(const StateVector& v) const {
  if (v.sector != source)
    throw SectorMismatchError("operator acts on sector " + std::to_string(source) +
                              ", state is in sector " + std::to_string(v.sector));
  return StateVector(target, matrix * v.amplitudes);
}

SectorOperator SectorOperator::adjoint() const { return SectorOperator(target, source, matrix.adjoint()); }

SectorOperator operator*(const SectorOperator& lhs, const SectorOperator& rhs) {
  if (lhs.source != rhs.target) throw SectorMismatchError("operator product sectors do not chain");
  return SectorOperator(rhs.source, lhs.target, lhs.matrix * rhs.matrix);
}

SectorOperator operator+(const SectorOperator& lhs, const SectorOperator& rhs) {
  if (lhs.source != rhs.source || lhs.target != rhs.target)
    throw SectorMismatchError("operator sum sectors differ");
  return SectorOperator(lhs.source, lhs.target, lhs.matrix + rhs.matrix);
}

SectorOperator operator-(const SectorOperator& lhs, const SectorOperator& rhs) {
  return lhs + Complex(-1.0) * rhs;
}

SectorOperator operator*(Complex s, const SectorOperator& op) {
  return SectorOperator(op.source, op.target, s * op.matrix);
}

SectorOperator annihilation(int mode, int k) {
  check_mode(mode);
  require_lowerable(k);
  SectorOperator op(k, k - 1);
  const auto& basis = sector_basis(k);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    BasisState s = basis[col];
    const int n = s.photons(mode);
    if (n == 0) continue;
    --s.photons(mode);
    op.matrix(static_cast<Eigen::Index>(index_of(s)), static_cast<Eigen::Index>(col)) = std::sqrt(double(n));
  }
  return op;
}

SectorOperator creation(int mode, int k) {
  require_raisable(k);
  return annihilation(mode, k + 1).adjoint();
}

SectorOperator sigma_minus(Atom atom, int k) {
  require_lowerable(k);
  SectorOperator op(k, k - 1);
  const auto& basis = sector_basis(k);
  for (std::size_t col = 0; col < basis.size(); ++col) {
    BasisState s = basis[col];
    if (atom_slot(s, atom) == 0) continue;
    atom_slot(s, atom) = 0;
    op.matrix(static_cast<Eigen::Index>(index_of(s)), static_cast<Eigen::Index>(col)) = 1.0;
  }
  return op;
}

SectorOperator sigma_plus(Atom atom, int k) {
  require_raisable(k);
  return sigma_minus(atom, k + 1).adjoint();
}

SectorOperator identity(int k) {
  const auto n = static_cast<Eigen::Index>(sector_dimension(k));
  return SectorOperator(k, k, Matrix::Identity(n, n));
}

SectorOperator system_hamiltonian(const SystemParams& p, int k) {
  p.validate();
  SectorOperator h(k, k);
  const auto& basis = sector_basis(k);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const BasisState& s = basis[i];
    double e = 0.0;
    if (p.frame == Frame::kLab) {
      const int ground_atoms = (1 - s.atom_l) + (1 - s.atom_r);
      e = -p.omega_eg() * ground_atoms + p.omega_c * s.photon_count();
    } else {
      e = -p.delta * s.photon_count();
    }
    h.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = e;
  }
  if (k == 0) return h;

  // Emission terms g a^dag sigma_- stay inside sector k: lower the atom
  // (k -> k-1), then raise the mode (k-1 -> k).
  auto emission = [&](int mode, Atom atom, Complex g) {
    return g * (creation(mode, k - 1) * sigma_minus(atom, k));
  };
  SectorOperator v = emission(1, Atom::kLeft, p.g_left) +
                     emission(2, Atom::kLeft, std::conj(p.g_left)) +
                     emission(3, Atom::kRight, p.g_right) +
                     emission(4, Atom::kRight, std::conj(p.g_right));
  return h + v + v.adjoint();
}

SectorOperator cascade_hamiltonian(const SystemParams& p, int k) {
  p.validate();
  if (k == 0) return SectorOperator(0, 0);
  auto hop = [&](int to, int from) { return creation(to, k - 1) * annihilation(from, k); };
  const SectorOperator x = (hop(1, 3) - hop(3, 1)) + (hop(4, 2) - hop(2, 4));
  return Complex(0.0, 0.5 * p.kappa) * x;
}

SectorOperator jump_operator(const SystemParams& p, Detector d, int k) {
  p.validate();
  const double s = std::sqrt(p.kappa);
  if (d == Detector::kA) return Complex(s) * (annihilation(1, k) + annihilation(3, k));
  return Complex(s) * (annihilation(2, k) + annihilation(4, k));
}

SectorOperator coherent_hamiltonian(const SystemParams& p, int k) {
  SectorOperator h = system_hamiltonian(p, k);
  if (p.cascade) h = h + cascade_hamiltonian(p, k);
  return h;
}

SectorOperator non_hermitian_hamiltonian(const SystemParams& p, int k) {
  SectorOperator h = coherent_hamiltonian(p, k);
  if (k == 0) return h;
  SectorOperator decay(k, k);
  for (Detector d : kDetectors) {
    const SectorOperator j = jump_operator(p, d, k);
    decay = decay + j.adjoint() * j;
  }
  return h + Complex(0.0, -0.5) * decay;
}

SectorOperator mirror_operator(int k) {
  SectorOperator m(k, k);
  const auto& perm = mirror_permutation(k);
  for (std::size_t i = 0; i < perm.size(); ++i)
    m.matrix(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(i)) = 1.0;
  return m;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace homcascade
