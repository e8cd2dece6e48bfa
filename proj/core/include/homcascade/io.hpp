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

// CSV and JSON exports. CSV files start with '#' comment lines carrying the
// library version and the resolved run configuration (a JSON object), then
// a header row. JSON documents embed the same configuration under "config".
// `config_json` arguments must hold a JSON object; pass "{}" when there is
// nothing to record.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "homcascade/oracle.hpp"
#include "homcascade/stats.hpp"

namespace homcascade::io {

std::string version();

/// sector,index,atom_L,n1,n2,atom_R,n3,n4 for all 26 states.
void write_basis_csv(std::ostream& os, const std::string& config_json);

/// row,col,re,im for the nonzero entries.
void write_operator_csv(std::ostream& os, const SectorOperator& op, const std::string& config_json);

/// t,p2,p11. Densities are multiplied by trace.delta_t unless scaled is false.
void write_density_csv(std::ostream& os, const DensityTrace& trace, bool scaled, const std::string& config_json);

/// traj_id,click_index,detector,time; one row per click.
void write_clicks_csv(std::ostream& os, std::span<const TrajectoryResult> results, const std::string& config_json);

/// Click records keyed by traj_id, as read back from write_clicks_csv.
std::map<std::size_t, std::vector<ClickEvent>> read_clicks_csv(std::istream& is);

/// bin_left,bin_right,count,class with class in {T1, T2, dT_same, dT_diff}.
/// With frequency normalization the count column holds count / total.
void write_histograms_csv(std::ostream& os, const EnsembleSummary& s, const std::string& config_json);

std::string summary_json(const EnsembleSummary& s, const std::string& config_json);

struct EnsembleMetadata {
  std::size_t n_traj = 0;
  std::uint64_t seed = 0;
  double dt = 0.0;
  double t_max = 0.0;
  std::size_t censored_count = 0;
  std::string sampling;
};

/// params, seed, n_traj, dt, t_max, censored_count.
std::string ensemble_metadata_json(const SystemParams& p, const EnsembleMetadata& m, const std::string& config_json);

/// t1,t2,p_aa,p_ab,p_ba,p_bb for t2 >= t1.
void write_joint_density_csv(std::ostream& os, const JointDensityGrid& grid, const std::string& config_json);

std::string pair_probabilities_json(const PairProbabilities& pp, const std::string& config_json);

/// Key/value JSON object of the physical parameters.
std::string params_json(const SystemParams& p);

}  // namespace homcascade::io
