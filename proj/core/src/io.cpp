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

#include "homcascade/io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "homcascade/errors.hpp"

namespace homcascade::io {

namespace {

using Json = nlohmann::ordered_json;

#ifndef HOMCASCADE_VERSION
#define HOMCASCADE_VERSION "0.0.0"
#endif

Json parse_config(const std::string& config_json) {
  Json cfg = Json::parse(config_json.empty() ? std::string("{}") : config_json, nullptr, false);
  if (cfg.is_discarded() || !cfg.is_object()) throw InvalidArgument("configuration must be a JSON object");
  return cfg;
}

void write_preamble(std::ostream& os, const std::string& config_json) {
  os << "# homcascade " << version() << '\n';
  os << "# config: " << parse_config(config_json).dump() << '\n';
}

// Shortest round-trip representation.
std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

Json histogram_json(const Histogram& h) {
  return Json{{"t_min", h.t_min}, {"bin_width", h.bin_width}, {"counts", h.counts}, {"overflow", h.overflow}};
}

const char* normalization_name(Normalization n) { return n == Normalization::kCounts ? "counts" : "frequency"; }

}  // namespace

std::string version() { return HOMCASCADE_VERSION; }

void write_basis_csv(std::ostream& os, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "sector,index,atom_L,n1,n2,atom_R,n3,n4\n";
  for (int k = 0; k <= kMaxExcitation; ++k) {
    const auto& b = sector_basis(k);
    for (std::size_t i = 0; i < b.size(); ++i) {
      const BasisState& s = b[i];
      os << k << ',' << i << ',' << s.atom_l << ',' << s.n1 << ',' << s.n2 << ',' << s.atom_r << ',' << s.n3 << ','
         << s.n4 << '\n';
    }
  }
}

void write_operator_csv(std::ostream& os, const SectorOperator& op, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "# source_sector=" << op.source << " target_sector=" << op.target << '\n';
  os << "row,col,re,im\n";
  for (Eigen::Index c = 0; c < op.matrix.cols(); ++c)
    for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
      const Complex z = op.matrix(r, c);
      if (z == Complex(0.0)) continue;
      os << r << ',' << c << ',' << num(z.real()) << ',' << num(z.imag()) << '\n';
    }
}

void write_density_csv(std::ostream& os, const DensityTrace& trace, bool scaled, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "# delta_T=" << num(trace.delta_t) << " scaled=" << (scaled ? "true" : "false") << '\n';
  os << "t,p2,p11\n";
  const double undo = scaled ? 1.0 : 1.0 / trace.delta_t;
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    os << num(trace.times[i]) << ',' << num(trace.p2[i] * undo) << ',' << num(trace.p11[i] * undo) << '\n';
}

void write_clicks_csv(std::ostream& os, std::span<const TrajectoryResult> results, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "traj_id,click_index,detector,time\n";
  for (std::size_t i = 0; i < results.size(); ++i)
    for (std::size_t c = 0; c < results[i].clicks.size(); ++c) {
      const ClickEvent& e = results[i].clicks[c];
      os << i << ',' << (c + 1) << ',' << detector_label(e.detector) << ',' << num(e.time) << '\n';
    }
}

std::map<std::size_t, std::vector<ClickEvent>> read_clicks_csv(std::istream& is) {
  std::map<std::size_t, std::vector<ClickEvent>> out;
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != "traj_id,click_index,detector,time") throw InvalidArgument("unexpected clicks CSV header");
      header = true;
      continue;
    }
    std::istringstream row(line);
    std::string id, idx, det, time;
    if (!std::getline(row, id, ',') || !std::getline(row, idx, ',') || !std::getline(row, det, ',') ||
        !std::getline(row, time))
      throw InvalidArgument("malformed clicks CSV row: " + line);
    out[std::stoull(id)].push_back({parse_detector(det), std::stod(time)});
  }
  return out;
}

void write_histograms_csv(std::ostream& os, const EnsembleSummary& s, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "# normalization=" << normalization_name(s.normalization) << " shared_time_range=" << num(s.shared_time_range.first)
     << ':' << num(s.shared_time_range.second) << '\n';
  os << "bin_left,bin_right,count,class\n";
  auto emit = [&](const Histogram& h, const char* cls) {
    const double total = static_cast<double>(h.total());
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
      os << num(h.left(i)) << ',' << num(h.right(i)) << ',';
      if (s.normalization == Normalization::kCounts)
        os << h.counts[i];
      else
        os << num(total > 0 ? static_cast<double>(h.counts[i]) / total : 0.0);
      os << ',' << cls << '\n';
    }
  };
  emit(s.hist_t1, "T1");
  emit(s.hist_t2, "T2");
  emit(s.hist_dt_same, "dT_same");
  emit(s.hist_dt_diff, "dT_diff");
}

std::string summary_json(const EnsembleSummary& s, const std::string& config_json) {
  Json j;
  j["version"] = version();
  j["config"] = parse_config(config_json);
  j["n_total"] = s.n_total;
  j["n_complete"] = s.n_complete;
  j["n_censored"] = s.n_censored;
  j["n_same"] = s.n_same;
  j["n_aa"] = s.n_aa;
  j["n_bb"] = s.n_bb;
  j["f_same"] = s.f_same;
  j["f_diff"] = s.f_diff;
  j["binomial_stderr"] = s.binomial_stderr;
  j["mean_dT_same"] = std::isnan(s.mean_dt_same) ? Json(nullptr) : Json(s.mean_dt_same);
  j["mean_dT_diff"] = std::isnan(s.mean_dt_diff) ? Json(nullptr) : Json(s.mean_dt_diff);
  j["normalization"] = normalization_name(s.normalization);
  j["shared_time_range"] = {s.shared_time_range.first, s.shared_time_range.second};
  j["hist_T1"] = histogram_json(s.hist_t1);
  j["hist_T2"] = histogram_json(s.hist_t2);
  j["hist_dT_same"] = histogram_json(s.hist_dt_same);
  j["hist_dT_diff"] = histogram_json(s.hist_dt_diff);
  return j.dump(2) + "\n";
}

std::string params_json(const SystemParams& p) {
  Json j;
  j["g_left"] = {p.g_left.real(), p.g_left.imag()};
  j["g_right"] = {p.g_right.real(), p.g_right.imag()};
  j["kappa"] = p.kappa;
  j["delta"] = p.delta;
  j["frame"] = p.frame == Frame::kRotating ? "rotating" : "lab";
  if (p.frame == Frame::kLab) j["omega_c"] = p.omega_c;
  j["cascade_term"] = p.cascade ? "on" : "off";
  return j.dump();
}

std::string ensemble_metadata_json(const SystemParams& p, const EnsembleMetadata& m, const std::string& config_json) {
  Json j;
  j["version"] = version();
  j["config"] = parse_config(config_json);
  j["params"] = Json::parse(params_json(p));
  j["seed"] = m.seed;
  j["n_traj"] = m.n_traj;
  j["dt"] = m.dt;
  j["t_max"] = m.t_max;
  j["jump_sampling"] = m.sampling;
  j["censored_count"] = m.censored_count;
  return j.dump(2) + "\n";
}

void write_joint_density_csv(std::ostream& os, const JointDensityGrid& grid, const std::string& config_json) {
  write_preamble(os, config_json);
  os << "t1,t2,p_aa,p_ab,p_ba,p_bb\n";
  const std::size_t n = grid.times.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k) {
      os << num(grid.times[i]) << ',' << num(grid.times[k]);
      for (const auto& d : grid.densities) os << ',' << num(d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)));
      os << '\n';
    }
}

std::string pair_probabilities_json(const PairProbabilities& pp, const std::string& config_json) {
  Json j;
  j["version"] = version();
  j["config"] = parse_config(config_json);
  j["p_aa"] = pp.p[0];
  j["p_ab"] = pp.p[1];
  j["p_ba"] = pp.p[2];
  j["p_bb"] = pp.p[3];
  j["p_same"] = pp.same();
  j["p_diff"] = pp.different();
  j["same_fraction"] = pp.same_fraction();
  j["total"] = pp.total();
  j["deficit"] = pp.deficit();
  j["residual"] = pp.residual;
  j["completeness_error"] = pp.completeness_error();
  j["accuracy_warning"] = pp.accuracy_warning;
  j["quadrature_step"] = pp.step;
  j["t_outer"] = pp.t_outer;
  j["t_inner"] = pp.t_inner;
  return j.dump(2) + "\n";
}

}  // namespace homcascade::io
