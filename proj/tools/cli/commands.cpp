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

#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "homcascade/errors.hpp"
#include "homcascade/io.hpp"
#include "svg.hpp"

namespace homcascade::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kDefaultDensityWindow = 40.0;

const char* sampling_name(JumpSampling s) { return s == JumpSampling::kFirstOrder ? "first-order" : "norm-threshold"; }

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

std::string point_dir_name(double g) {
  std::ostringstream s;
  s << "g_" << g;
  return s.str();
}

template <typename Fn>
void write_file(const fs::path& path, Fn&& fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidArgument("cannot open " + path.string() + " for writing");
  fn(os);
  os.flush();
  if (!os) throw InvalidArgument("failed writing " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, [&](std::ostream& os) { os << text; });
}

// Outputs produced with and without the cascade term must not share a
// directory.
void prepare_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
  const fs::path marker = cfg.out_dir / ".homcascade_mode";
  const std::string mode = std::string("cascade_term=") + (cfg.cascade_term ? "on" : "off");
  if (fs::exists(marker)) {
    std::ifstream is(marker);
    std::stringstream existing;
    existing << is.rdbuf();
    if (existing.str() != mode)
      throw InvalidArgument("output directory " + cfg.out_dir.string() + " holds results from " + existing.str() +
                            ", refusing to mix with " + mode);
    return;
  }
  write_text(marker, mode);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

Series histogram_series(const Histogram& h, const std::string& label, const std::string& color) {
  Series s{label, color, {}, {}};
  for (std::size_t i = 0; i <= h.counts.size(); ++i) s.x.push_back(h.left(i));
  for (auto c : h.counts) s.y.push_back(static_cast<double>(c));
  return s;
}

}  // namespace

SystemParams RunConfig::params() const {
  SystemParams p = SystemParams::symmetric(g_over_kappa, delta_over_kappa, 1.0);
  p.frame = frame;
  p.omega_c = omega_c;
  p.cascade = cascade_term;
  return p;
}

EnsembleConfig RunConfig::ensemble() const {
  EnsembleConfig e;
  e.n_traj = n_traj;
  e.dt = dt;
  e.t_max = t_max;
  e.seed = seed;
  e.sampling = sampling;
  e.workers = workers;
  return e;
}

PropagatorConfig RunConfig::propagator_config() const {
  PropagatorConfig c;
  c.dt = dt;
  c.method = propagator == "rk4" ? PropagationMethod::kRungeKutta4 : PropagationMethod::kMatrixExponential;
  return c;
}

HistogramSpec RunConfig::histogram_spec() const {
  HistogramSpec h;
  h.bin_width = bin_width;
  return h;
}

void RunConfig::validate() const {
  if (!(g_over_kappa >= 0.0) || !std::isfinite(g_over_kappa)) throw InvalidArgument("g/kappa must be >= 0");
  if (!std::isfinite(delta_over_kappa)) throw InvalidArgument("delta/kappa must be finite");
  if (!(delta_T > 0.0)) throw InvalidArgument("delta_T must be positive");
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!std::isfinite(t_max) || t_max < 0.0) throw InvalidArgument("t_max must be >= 0 (0 selects automatic)");
  if (n_traj < 1) throw InvalidArgument("n_traj must be >= 1");
  if (!(bin_width > 0.0)) throw InvalidArgument("bin_width must be positive");
  if (!(export_step > 0.0) || export_t_max < 0.0) throw InvalidArgument("export grid must have step > 0");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  for (double g : g_list)
    if (!(g >= 0.0) || !std::isfinite(g)) throw InvalidArgument("sweep values must be >= 0");
}

std::string RunConfig::to_json() const {
  Json j;
  j["subcommand"] = subcommand;
  j["g_over_kappa"] = g_over_kappa;
  j["delta_over_kappa"] = delta_over_kappa;
  j["kappa"] = 1.0;
  j["delta_T"] = delta_T;
  j["dt"] = dt;
  j["t_max"] = t_max;
  j["n_traj"] = n_traj;
  j["seed"] = seed;
  j["bin_width"] = bin_width;
  j["cascade_term"] = cascade_term ? "on" : "off";
  j["hamiltonian"] = cascade_term ? "H_s + H_casc - i/2 sum_j J_j^dag J_j" : "H_s - i/2 sum_j J_j^dag J_j";
  j["frame"] = frame == Frame::kRotating ? "rotating" : "lab";
  j["omega_c"] = omega_c;
  j["jump_sampling"] = sampling_name(sampling);
  j["propagator"] = propagator;
  j["quad_step"] = quad_step;
  j["export_step"] = export_step;
  j["export_t_max"] = export_t_max;
  j["scaled"] = scaled;
  j["svg"] = svg;
  j["g_list"] = g_list;
  j["out_dir"] = out_dir.generic_string();
  return j.dump();
}

DensityTrace cmd_densities(const RunConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg);
  const double window = cfg.t_max > 0.0 ? cfg.t_max : kDefaultDensityWindow;
  const DensityTrace trace = density_scan(cfg.params(), cfg.propagator_config(), window, cfg.delta_T);
  const std::string config = cfg.to_json();
  write_file(cfg.out_dir / "densities.csv",
             [&](std::ostream& os) { io::write_density_csv(os, trace, cfg.scaled, config); });

  Json meta;
  meta["version"] = io::version();
  meta["config"] = Json::parse(config);
  meta["t_window"] = window;
  meta["integral_p2"] = trapezoid(trace.times, trace.p2);
  meta["integral_p11"] = trapezoid(trace.times, trace.p11);
  meta["final_norm2"] = trace.norm2.empty() ? 1.0 : trace.norm2.back();
  write_text(cfg.out_dir / "densities_metadata.json", meta.dump(2) + "\n");

  if (cfg.svg)
    write_line_plot(cfg.out_dir / "densities.svg", "equal-time joint densities",
                    {{"P2 (aa/bb)", "#c0392b", trace.times, trace.p2}, {"P11 (ab/ba)", "#2471a3", trace.times, trace.p11}});
  return trace;
}

McOutcome cmd_mc(const RunConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg);
  const SystemParams p = cfg.params();
  const TrajectorySampler sampler(p, cfg.ensemble());
  const std::vector<TrajectoryResult> results = run_ensemble(sampler);
  McOutcome outcome{summarize(results, cfg.histogram_spec()), sampler.t_max()};

  const std::string config = cfg.to_json();
  write_file(cfg.out_dir / "clicks.csv", [&](std::ostream& os) { io::write_clicks_csv(os, results, config); });
  write_text(cfg.out_dir / "summary.json", io::summary_json(outcome.summary, config));
  write_file(cfg.out_dir / "histograms.csv",
             [&](std::ostream& os) { io::write_histograms_csv(os, outcome.summary, config); });
  io::EnsembleMetadata meta{cfg.n_traj, cfg.seed, cfg.dt, sampler.t_max(), outcome.summary.n_censored,
                            sampling_name(cfg.sampling)};
  write_text(cfg.out_dir / "mc_metadata.json", io::ensemble_metadata_json(p, meta, config));

  if (cfg.svg) {
    const auto& s = outcome.summary;
    write_histogram_plot(cfg.out_dir / "histograms.svg", "detection statistics",
                         {histogram_series(s.hist_dt_same, "T2-T1 aa/bb", "#c0392b"),
                          histogram_series(s.hist_dt_diff, "T2-T1 ab/ba", "#2471a3"),
                          histogram_series(s.hist_t1, "T1", "#117a65"), histogram_series(s.hist_t2, "T2", "#7d3c98")});
  }
  return outcome;
}

OracleOutcome cmd_oracle(const RunConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg);
  const SystemParams p = cfg.params();
  QuadratureConfig q;
  q.step = cfg.quad_step;
  if (cfg.t_max > 0.0) q.t_outer = q.t_inner = cfg.t_max;
  OracleOutcome outcome{pair_probabilities(p, q), {}};
  if (cfg.g_over_kappa > 0.0) outcome.closed_form = pair_probabilities_exact(p);

  const std::string config = cfg.to_json();
  Json j = Json::parse(io::pair_probabilities_json(outcome.quadrature, config));
  if (cfg.g_over_kappa > 0.0) {
    j["closed_form"] = {{"p_aa", outcome.closed_form.p[0]},
                        {"p_ab", outcome.closed_form.p[1]},
                        {"p_ba", outcome.closed_form.p[2]},
                        {"p_bb", outcome.closed_form.p[3]},
                        {"same_fraction", outcome.closed_form.same_fraction()}};
  }
  write_text(cfg.out_dir / "pair_probabilities.json", j.dump(2) + "\n");

  const JointDensityGrid grid = joint_density_grid(p, cfg.export_step, cfg.export_t_max);
  write_file(cfg.out_dir / "joint_density.csv", [&](std::ostream& os) { io::write_joint_density_csv(os, grid, config); });
  return outcome;
}

std::vector<SweepRow> cmd_sweep(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.g_list.empty()) throw InvalidArgument("sweep needs a non-empty --g-list");
  prepare_out_dir(cfg);
  std::vector<SweepRow> rows;
  for (double g : cfg.g_list) {
    RunConfig point = cfg;
    point.g_over_kappa = g;
    point.g_list.clear();
    point.out_dir = cfg.out_dir / point_dir_name(g);
    cmd_densities(point);
    const McOutcome mc = cmd_mc(point);
    const OracleOutcome oracle = cmd_oracle(point);
    rows.push_back({g, mc.summary.f_same, oracle.quadrature.same_fraction(), mc.summary.binomial_stderr});
  }
  write_file(cfg.out_dir / "sweep.csv", [&](std::ostream& os) {
    os << "# homcascade " << io::version() << '\n';
    os << "# config: " << cfg.to_json() << '\n';
    os << "g_over_kappa,f_same_mc,f_same_oracle,stderr\n";
    for (const auto& r : rows)
      os << num(r.g_over_kappa) << ',' << num(r.f_same_mc) << ',' << num(r.f_same_oracle) << ',' << num(r.stderr_mc)
         << '\n';
  });
  return rows;
}

void cmd_basis(const RunConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg);
  write_file(cfg.out_dir / "basis.csv", [&](std::ostream& os) { io::write_basis_csv(os, cfg.to_json()); });
}

void cmd_operators(const RunConfig& cfg) {
  cfg.validate();
  prepare_out_dir(cfg);
  const SystemParams p = cfg.params();
  const std::string config = cfg.to_json();
  auto dump = [&](const std::string& name, const SectorOperator& op) {
    write_file(cfg.out_dir / (name + ".csv"), [&](std::ostream& os) { io::write_operator_csv(os, op, config); });
  };
  for (int k = 1; k <= kMaxExcitation; ++k) {
    const std::string sfx = "_sector" + std::to_string(k);
    dump("h_system" + sfx, system_hamiltonian(p, k));
    dump("h_cascade" + sfx, cascade_hamiltonian(p, k));
    dump("h_nonhermitian" + sfx, non_hermitian_hamiltonian(p, k));
    dump("jump_a" + sfx, jump_operator(p, Detector::kA, k));
    dump("jump_b" + sfx, jump_operator(p, Detector::kB, k));
  }
}

namespace {

const std::vector<std::string> kSubcommands{"densities", "mc", "oracle", "sweep", "basis", "operators"};

// Flat key=value config file -> "--key=value" tokens. Keys use option
// names; underscores and hyphens are interchangeable.
std::vector<std::string> read_config_tokens(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot read config file " + path.string());
  std::vector<std::string> tokens;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line without '=': " + line);
    std::string key = trim(line.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    tokens.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return tokens;
}

void error_json(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << Json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    // Splice config-file values in right after the subcommand so that
    // command-line flags, which come later, take precedence.
    std::optional<fs::path> config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config_path = args[i + 1];
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config_path = args[i].substr(9);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
        break;
      }
    }
    if (config_path) {
      const auto sub = std::find_first_of(args.begin(), args.end(), kSubcommands.begin(), kSubcommands.end());
      if (sub == args.end()) throw InvalidArgument("a subcommand is required");
      const auto tokens = read_config_tokens(*config_path);
      args.insert(sub + 1, tokens.begin(), tokens.end());
    }
  } catch (const Error& e) {
    error_json(err, "invalid_config", e.what(), kInvalidConfig);
    return kInvalidConfig;
  }

  CLI::App app{"Quantum-trajectory simulation of two-photon interference in coupled atom-cavity systems"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", io::version());

  RunConfig cfg;
  std::string cascade = "on", frame = "rotating", sampling = "first-order";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--g,--g-over-kappa", cfg.g_over_kappa, "coupling |g| / kappa");
    sub->add_option("--delta,--delta-over-kappa", cfg.delta_over_kappa, "detuning (omega_eg - omega_c) / kappa");
    sub->add_option("--out,--out-dir", cfg.out_dir, "output directory");
    sub->add_option("--cascade-term", cascade, "include the directional cross-coupling")->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--frame", frame, "rotating or lab frame")->check(CLI::IsMember({"rotating", "lab"}));
    sub->add_option("--omega-c", cfg.omega_c, "cavity frequency / kappa (lab frame)");
    sub->add_option("--dt", cfg.dt, "time step (1/kappa)");
    sub->add_option("--t-max", cfg.t_max, "time cutoff (1/kappa); 0 = automatic");
  };
  auto add_mc = [&](CLI::App* sub) {
    sub->add_option("--n-traj", cfg.n_traj, "number of trajectories");
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--bin-width", cfg.bin_width, "histogram bin width (1/kappa)");
    sub->add_option("--sampling", sampling, "jump sampling")->check(CLI::IsMember({"first-order", "norm-threshold"}));
    sub->add_option("--workers", cfg.workers, "worker threads (results do not depend on it)");
  };
  auto add_densities = [&](CLI::App* sub) {
    sub->add_option("--delta-T", cfg.delta_T, "reporting interval multiplying the densities (1/kappa)");
    sub->add_option("--propagator", cfg.propagator, "expm or rk4")->check(CLI::IsMember({"expm", "rk4"}));
    sub->add_flag("--scaled,!--unscaled", cfg.scaled, "write densities multiplied by delta_T");
  };
  auto add_oracle = [&](CLI::App* sub) {
    sub->add_option("--quad-step", cfg.quad_step, "quadrature step (1/kappa); 0 = automatic");
    sub->add_option("--export-step", cfg.export_step, "joint density export grid step");
    sub->add_option("--export-t-max", cfg.export_t_max, "joint density export window");
  };

  auto* densities = app.add_subcommand("densities", "equal-time joint detection densities of the no-jump branch");
  add_common(densities);
  add_densities(densities);
  densities->add_flag("--svg", cfg.svg, "also write densities.svg");

  auto* mc = app.add_subcommand("mc", "Monte Carlo ensemble of detection records");
  add_common(mc);
  add_mc(mc);
  mc->add_flag("--svg", cfg.svg, "also write histograms.svg");

  auto* oracle = app.add_subcommand("oracle", "deterministic pair probabilities and joint densities");
  add_common(oracle);
  add_oracle(oracle);

  auto* sweep = app.add_subcommand("sweep", "densities, mc and oracle over a list of couplings");
  add_common(sweep);
  add_mc(sweep);
  add_densities(sweep);
  add_oracle(sweep);
  sweep->add_option("--g-list", cfg.g_list, "comma-separated g/kappa values")->delimiter(',')->multi_option_policy(
      CLI::MultiOptionPolicy::TakeAll);
  sweep->add_flag("--svg", cfg.svg, "also write plots");

  auto* basis = app.add_subcommand("basis", "write the truncated basis as CSV");
  basis->add_option("--out,--out-dir", cfg.out_dir, "output directory");
  auto* operators = app.add_subcommand("operators", "write Hamiltonians and jump operators as CSV triplets");
  add_common(operators);

  std::vector<const char*> cargv{argv[0]};
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) return app.exit(e, out, err);
    error_json(err, "invalid_config", e.what(), kInvalidConfig);
    return kInvalidConfig;
  }

  cfg.cascade_term = cascade == "on";
  cfg.frame = frame == "lab" ? Frame::kLab : Frame::kRotating;
  cfg.sampling = sampling == "first-order" ? JumpSampling::kFirstOrder : JumpSampling::kNormThreshold;

  try {
    if (densities->parsed()) {
      cfg.subcommand = "densities";
      const DensityTrace t = cmd_densities(cfg);
      out << "densities: " << t.times.size() << " points -> " << (cfg.out_dir / "densities.csv").string() << '\n';
    } else if (mc->parsed()) {
      cfg.subcommand = "mc";
      const McOutcome r = cmd_mc(cfg);
      out << "mc: f_same = " << r.summary.f_same << " +/- " << r.summary.binomial_stderr << " (" << r.summary.n_complete
          << " complete, " << r.summary.n_censored << " censored, t_max = " << r.t_max << ")\n";
    } else if (oracle->parsed()) {
      cfg.subcommand = "oracle";
      const OracleOutcome r = cmd_oracle(cfg);
      out << "oracle: P_same = " << r.quadrature.same() << ", P_diff = " << r.quadrature.different()
          << ", same fraction = " << r.quadrature.same_fraction() << ", residual = " << r.quadrature.residual << '\n';
    } else if (sweep->parsed()) {
      cfg.subcommand = "sweep";
      for (const auto& row : cmd_sweep(cfg))
        out << "sweep: g/kappa = " << row.g_over_kappa << " f_same mc = " << row.f_same_mc
            << " oracle = " << row.f_same_oracle << '\n';
    } else if (basis->parsed()) {
      cfg.subcommand = "basis";
      cmd_basis(cfg);
      out << "basis -> " << (cfg.out_dir / "basis.csv").string() << '\n';
    } else if (operators->parsed()) {
      cfg.subcommand = "operators";
      cmd_operators(cfg);
      out << "operators -> " << cfg.out_dir.string() << '\n';
    }
  } catch (const InvalidArgument& e) {
    error_json(err, "invalid_config", e.what(), kInvalidConfig);
    return kInvalidConfig;
  } catch (const fs::filesystem_error& e) {
    error_json(err, "invalid_config", e.what(), kInvalidConfig);
    return kInvalidConfig;
  } catch (const std::exception& e) {
    error_json(err, "numerical_failure", e.what(), kNumericalFailure);
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace homcascade::cli
