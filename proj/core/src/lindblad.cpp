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

// Independent check of the no-jump + jump unraveling: integrates the full
// master equation on the 26-dimensional space without using the sector
// blocking or the non-Hermitian generator.

#include <cmath>
#include <string>

#include <Eigen/Sparse>

#include "homcascade/errors.hpp"
#include "homcascade/oracle.hpp"

namespace homcascade {

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

constexpr std::array<Eigen::Index, 3> kOffset{0, 1, 7};
constexpr Eigen::Index kFullDim = 26;

void embed(std::vector<Triplet>& out, const SectorOperator& op) {
  for (Eigen::Index r = 0; r < op.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
      if (op.matrix(r, c) != Complex(0.0)) out.emplace_back(kOffset[op.target] + r, kOffset[op.source] + c, op.matrix(r, c));
}

SparseMatrix to_sparse(const std::vector<Triplet>& t) {
  SparseMatrix m(kFullDim, kFullDim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

struct FullSpaceModel {
  SparseMatrix h;
  std::array<SparseMatrix, 2> jumps;
  std::array<SparseMatrix, 2> jumps_dag;
  SparseMatrix decay;  // sum J^dag J
  double scale = 1.0;  // bound on the superoperator norm

  explicit FullSpaceModel(const SystemParams& p) {
    std::vector<Triplet> ht;
    for (int k = 0; k <= kMaxExcitation; ++k) {
      SectorOperator hk = system_hamiltonian(p, k);
      if (p.cascade) hk = hk + cascade_hamiltonian(p, k);
      embed(ht, hk);
    }
    h = to_sparse(ht);
    for (int d = 0; d < 2; ++d) {
      std::vector<Triplet> jt;
      for (int k = 1; k <= kMaxExcitation; ++k) embed(jt, jump_operator(p, kDetectors[d], k));
      jumps[d] = to_sparse(jt);
      jumps_dag[d] = jumps[d].adjoint();
    }
    decay = jumps_dag[0] * jumps[0] + jumps_dag[1] * jumps[1];
    auto one_norm = [](const SparseMatrix& m) {
      Eigen::VectorXd col = Eigen::VectorXd::Zero(m.cols());
      for (int c = 0; c < m.outerSize(); ++c)
        for (SparseMatrix::InnerIterator it(m, c); it; ++it) col(it.col()) += std::abs(it.value());
      return col.maxCoeff();
    };
    scale = 2.0 * one_norm(h) + 2.0 * one_norm(decay) + 1e-12;
    for (const auto& j : jumps) scale += one_norm(j) * one_norm(j);
  }

  Matrix apply(const Matrix& rho) const {
    constexpr Complex kI{0.0, 1.0};
    const Matrix h_rho = h * rho;
    const Matrix rho_h = (h * rho.adjoint()).adjoint();  // rho h for Hermitian h, rho
    const Matrix d_rho = decay * rho;
    Matrix out = -kI * (h_rho - rho_h) - 0.5 * (d_rho + d_rho.adjoint());
    for (int d = 0; d < 2; ++d) {
      const Matrix j_rho = jumps[d] * rho;
      out += (jumps[d] * j_rho.adjoint()).adjoint();  // J rho J^dag
    }
    return out;
  }
};

// rho <- exp(L tau) rho by truncated Taylor series; tau * scale <= 1.
void taylor_step(const FullSpaceModel& m, Matrix& rho, double tau) {
  Matrix term = rho;
  Matrix sum = rho;
  for (int n = 1; n < 60; ++n) {
    term = (tau / n) * m.apply(term);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-17) break;
  }
  rho = std::move(sum);
}

LindbladDiagnostics diagnose(const Matrix& rho, double t) {
  LindbladDiagnostics d;
  d.time = t;
  const std::array<Eigen::Index, 3> dims{1, 6, 19};
  for (int k = 0; k <= kMaxExcitation; ++k)
    d.sector_population[k] = rho.diagonal().segment(kOffset[k], dims[k]).real().sum();
  d.trace = rho.trace().real();
  return d;
}

}  // namespace

std::vector<LindbladDiagnostics> lindblad_series(const SystemParams& p, double t, double sample) {
  if (t < 0.0 || !(sample > 0.0)) throw InvalidArgument("lindblad series needs t >= 0 and sample > 0");
  const FullSpaceModel model(p);
  Matrix rho = Matrix::Zero(kFullDim, kFullDim);
  rho(kOffset[2], kOffset[2]) = 1.0;

  const auto n_samples = static_cast<std::size_t>(std::floor(t / sample + 1e-9));
  const auto sub = static_cast<std::size_t>(std::ceil(sample * model.scale));
  const double tau = sample / static_cast<double>(std::max<std::size_t>(sub, 1));

  std::vector<LindbladDiagnostics> out;
  out.reserve(n_samples + 2);
  out.push_back(diagnose(rho, 0.0));
  double now = 0.0;
  auto advance = [&](double span) {
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(span / tau - 1e-9)));
    for (std::size_t s = 0; s < steps; ++s) taylor_step(model, rho, span / static_cast<double>(steps));
    rho = 0.5 * (rho + rho.adjoint());
    now += span;
    LindbladDiagnostics d = diagnose(rho, now);
    if (std::abs(d.trace - 1.0) > 1e-8)
      throw IntegratorError("master-equation trace drifted to " + std::to_string(d.trace));
    out.push_back(d);
  };
  for (std::size_t i = 0; i < n_samples; ++i) advance(sample);
  const double rest = t - static_cast<double>(n_samples) * sample;
  if (rest > 1e-12) advance(rest);
  return out;
}

LindbladDiagnostics lindblad_check(const SystemParams& p, double t) {
  return lindblad_series(p, t, std::max(t, 1e-9) / std::max(1.0, std::ceil(t))).back();
}

}  // namespace homcascade
