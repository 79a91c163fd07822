// Copyright 2026 The hyblg Authors
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

#ifndef HYBLG_CLI_HPP
#define HYBLG_CLI_HPP

#include <cmath>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "hyblg/blochsol.hpp"
#include "hyblg/dynamics.hpp"
#include "hyblg/errors.hpp"
#include "hyblg/fit.hpp"
#include "hyblg/io.hpp"
#include "hyblg/lgi.hpp"
#include "hyblg/macrorealism.hpp"
#include "hyblg/model.hpp"
#include "hyblg/parallel.hpp"
#include "hyblg/spectrum.hpp"
#include "hyblg/version.hpp"

namespace hyblg {
namespace cli {

enum ExitCode : int { kOk = 0, kExtinguished = 2, kUsage = 64, kNumeric = 70 };

/// Bad flag value or flag combination.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;
  bool log = false;

  std::vector<double> values() const { return log ? lgi::logspace(min, max, count) : lgi::linspace(min, max, count); }

  std::string str() const {
    return io::format_double(min) + ":" + io::format_double(max) + ":" + std::to_string(count) + (log ? ":log" : ":lin");
  }
};

/// "min:max:n" or "min:max:n:log" / "min:max:n:lin".
inline GridSpec parse_grid(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() < 3 || parts.size() > 4) throw UsageError("grid spec must be min:max:n[:log|lin], got '" + std::string(text) + "'");
  GridSpec g;
  try {
    std::size_t used = 0;
    g.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    g.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    const long long n = std::stoll(parts[2], &used);
    if (used != parts[2].size() || n < 1) throw std::invalid_argument(parts[2]);
    g.count = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw UsageError("malformed grid spec '" + std::string(text) + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "log") {
      g.log = true;
    } else if (parts[3] != "lin") {
      throw UsageError("grid spacing must be 'log' or 'lin'");
    }
  }
  if (g.log && !(g.min > 0.0 && g.max > 0.0)) throw UsageError("log grid bounds must be positive");
  return g;
}

struct RunConfig {
  std::string command;
  ModelParams params{1.0, std::numbers::pi / 2.0, 0.9905, 1.0};
  dynamics::EvolveConfig evolve;  // method doubles as the correlator engine
  std::optional<double> t;
  std::optional<double> t_max;
  std::size_t samples = 201;
  std::size_t resolution = 2000;
  std::optional<GridSpec> grid_gamma;
  std::optional<GridSpec> grid_q;
  std::string format = "csv";
  std::string out;
  std::string in;
  unsigned workers = 1;
  bool maximize_over_t = false;
  int q0 = +1;
  int q2 = +1;
  std::string log_base = "auto";
  bool allow_extrapolation = false;
  std::optional<BlochState> initial_bloch;

  lgi::OptimizeConfig optimize_config() const {
    lgi::OptimizeConfig c;
    c.t_max = t_max;
    c.resolution = resolution;
    c.evolve = evolve;
    return c;
  }
};

inline io::Json to_json(const RunConfig& c) {
  io::Json j;
  j["command"] = c.command;
  j["J"] = c.params.J;
  j["theta"] = c.params.theta;
  j["gamma"] = c.params.gamma;
  j["q"] = c.params.q;
  j["engine"] = std::string(dynamics::to_string(c.evolve.method));
  j["dt"] = c.evolve.dt;
  j["eps_trace"] = c.evolve.eps_trace;
  j["t"] = c.t ? io::Json(*c.t) : io::Json(nullptr);
  j["t_max"] = c.t_max ? io::Json(*c.t_max) : io::Json(nullptr);
  j["samples"] = c.samples;
  j["resolution"] = c.resolution;
  j["grid_gamma"] = c.grid_gamma ? io::Json(c.grid_gamma->str()) : io::Json(nullptr);
  j["grid_q"] = c.grid_q ? io::Json(c.grid_q->str()) : io::Json(nullptr);
  j["format"] = c.format;
  j["workers"] = c.workers;
  j["maximize_over_t"] = c.maximize_over_t;
  j["q0"] = c.q0;
  j["q2"] = c.q2;
  j["log_base"] = c.log_base;
  j["allow_extrapolation"] = c.allow_extrapolation;
  if (c.initial_bloch) {
    const auto& b = *c.initial_bloch;
    j["initial_bloch"] = {b.R, b.Sx, b.Sy, b.Sz};
  }
  if (!c.in.empty()) j["in"] = c.in;
  return j;
}

inline io::Json base_meta(const RunConfig& c) {
  io::Json m;
  m["tool"] = "hyblg";
  m["version"] = std::string(kVersion);
  m["config"] = to_json(c);
  m["tolerances"] = {{"eps_trace", c.evolve.eps_trace},
                     {"optimize_tolerance_t", lgi::OptimizeConfig{}.tolerance},
                     {"tie_epsilon", lgi::OptimizeConfig{}.tie_epsilon},
                     {"jordan_gap", spectrum::kJordanGapThreshold},
                     {"degeneracy_gap", numerics::kDegeneracyThreshold}};
  return m;
}

/// Keeps free-text cells on one CSV field.
inline std::string status_cell(const std::string& text) {
  std::string out = text;
  for (char& ch : out)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
  return out;
}

inline void emit(const io::Table& table, const io::Json& meta, const RunConfig& c, std::ostream& out) {
  if (c.format == "json") {
    out << table.to_json(meta).dump(2) << '\n';
  } else {
    table.write_csv(out, meta);
  }
}

inline void validate(const RunConfig& c) {
  if (c.format != "csv" && c.format != "json") throw UsageError("--format must be csv or json");
  if (c.workers == 0) throw UsageError("--workers must be >= 1");
  try {
    c.params.validate();
    c.evolve.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (c.q0 != 1 && c.q0 != -1) throw UsageError("--q0 must be +1 or -1");
  if (c.q2 != 1 && c.q2 != -1) throw UsageError("--q2 must be +1 or -1");
  if (c.t && !(*c.t > 0.0)) throw UsageError("--t must be > 0");
  if (c.t_max && !(*c.t_max > 0.0)) throw UsageError("--t-max must be > 0");
}

inline std::vector<double> gamma_values(const RunConfig& c) {
  return c.grid_gamma ? c.grid_gamma->values() : std::vector<double>{c.params.gamma};
}

inline std::vector<double> q_values(const RunConfig& c) {
  return c.grid_q ? c.grid_q->values() : std::vector<double>{c.params.q};
}

// ---------------------------------------------------------------------------

/// Normalized Bloch trajectory from |+y> (or a supplied state).
inline int cmd_evolve(const RunConfig& c, std::ostream& out) {
  if (c.samples < 2) throw UsageError("--samples must be >= 2");
  const double horizon = c.t_max.value_or(20.0 / c.params.J);
  DensityMatrix rho = c.initial_bloch ? bloch_compose(*c.initial_bloch) : initial_state();
  if (c.initial_bloch && !c.initial_bloch->is_physical()) throw UsageError("--bloch0 is not a positive state");

  io::Table table({"t", "rho00_re", "rho00_im", "rho01_re", "rho01_im", "rho10_re", "rho10_im", "rho11_re",
                   "rho11_im", "R", "sx", "sy", "sz"});
  const double dt_sample = horizon / static_cast<double>(c.samples - 1);
  std::optional<dynamics::ExactPropagator> step;
  if (c.evolve.method == dynamics::Method::exact) step.emplace(c.params, dt_sample);

  io::Json meta = base_meta(c);
  int code = kOk;
  for (std::size_t k = 0; k < c.samples; ++k) {
    const double t = horizon * static_cast<double>(k) / static_cast<double>(c.samples - 1);
    if (k > 0) {
      if (step) {
        rho = step->apply(rho);
      } else {
        rho = dynamics::evolve(rho, c.params, dt_sample, c.evolve);
      }
    }
    BlochState s;
    try {
      s = bloch_decompose(normalize(rho, c.evolve.eps_trace));
    } catch (const TrajectoryExtinguished& e) {
      meta["error"] = std::string(e.what()) + " at t=" + io::format_double(t);
      code = kExtinguished;
      break;
    }
    const auto& m = rho.matrix();
    table.add_row({t, m(0, 0).real(), m(0, 0).imag(), m(0, 1).real(), m(0, 1).imag(), m(1, 0).real(), m(1, 0).imag(),
                   m(1, 1).real(), m(1, 1).imag(), rho.trace(), s.Sx, s.Sy, s.Sz});
  }
  emit(table, meta, c, out);
  return code;
}

/// Correlator record at --t, or at the optimal t when --t is absent.
inline int cmd_k3(const RunConfig& c, std::ostream& out) {
  double t = 0.0;
  io::Json meta = base_meta(c);
  if (c.t) {
    t = *c.t;
  } else {
    const auto opt = lgi::optimize_k3(c.params, c.optimize_config());
    if (opt.masked) throw Error("optimization masked: " + opt.error);
    t = opt.t_star;
    meta["k3_max"] = opt.k3_max;
  }
  const auto rec = lgi::correlators(c.params, t, c.evolve);
  io::Table table({"gamma", "q", "t", "c01", "c12", "c02", "k3", "p_plus", "p_minus"});
  table.add_row({c.params.gamma, c.params.q, rec.t, rec.C01, rec.C12, rec.C02, rec.K3, rec.p_plus, rec.p_minus});
  emit(table, meta, c, out);
  return kOk;
}

inline int cmd_sweep(const RunConfig& c, std::ostream& out) {
  const auto gammas = c.grid_gamma ? c.grid_gamma->values() : lgi::linspace(0.05, 5.0, 100);
  const auto qs = c.grid_q ? c.grid_q->values() : lgi::logspace(1e-6, 1.0, 61);
  const auto res = lgi::sweep(gammas, qs, c.params, c.optimize_config(), c.workers);
  io::Table table({"gamma", "q", "k3_max", "t_star", "status"});
  for (const auto& cell : res.cells) {
    table.add_row({cell.gamma, cell.q, cell.result.k3_max, cell.result.t_star,
                   status_cell(cell.result.masked ? "error: " + cell.result.error : std::string("ok"))});
  }
  io::Json meta = base_meta(c);
  meta["grid"] = {{"gamma", gammas}, {"q", qs}, {"order", "gamma-major"}, {"t_max", res.t_max},
                  {"resolution", res.resolution}};
  emit(table, meta, c, out);
  return kOk;
}

inline int cmd_spectrum(const RunConfig& c, std::ostream& out) {
  std::vector<std::string> cols{"gamma", "q"};
  for (int k = 0; k < 4; ++k) {
    cols.push_back("lambda" + std::to_string(k) + "_re");
    cols.push_back("lambda" + std::to_string(k) + "_im");
  }
  for (int k = 0; k < 3; ++k) {
    cols.push_back("x" + std::to_string(k) + "_re");
    cols.push_back("x" + std::to_string(k) + "_im");
  }
  cols.insert(cols.end(), {"exact_root", "jordan_order", "discriminant"});
  io::Table table(cols);
  for (double g : gamma_values(c)) {
    for (double q : q_values(c)) {
      ModelParams p = c.params;
      p.gamma = g;
      p.q = q;
      const auto rep = spectrum::analyze_spectrum(p);
      std::vector<io::Cell> row{g, q};
      for (const auto& ev : rep.eigenvalues) {
        row.emplace_back(ev.real());
        row.emplace_back(ev.imag());
      }
      for (const auto& x : rep.cubic_roots) {
        row.emplace_back(x.real());
        row.emplace_back(x.imag());
      }
      row.emplace_back(static_cast<long long>(rep.exact_root));
      row.emplace_back(static_cast<long long>(rep.jordan_order));
      row.emplace_back(rep.discriminant);
      table.add_row(std::move(row));
    }
  }
  emit(table, base_meta(c), c, out);
  return kOk;
}

inline int cmd_ep_locus(const RunConfig& c, std::ostream& out) {
  const auto qs = c.grid_q ? c.grid_q->values() : lgi::linspace(0.0, 1.0, 101);
  io::Table table({"q", "r_ep", "delta_residual"});
  for (double q : qs) {
    if (!(q >= 0.0 && q <= 1.0)) throw UsageError("ep-locus q values must lie in [0, 1]");
    const auto pt = spectrum::ep_radius(q);
    table.add_row({pt.q, pt.r_ep, pt.residual});
  }
  emit(table, base_meta(c), c, out);
  return kOk;
}

inline int cmd_bloch_traj(const RunConfig& c, std::ostream& out) {
  if (c.samples < 2) throw UsageError("--samples must be >= 2");
  if (!c.params.theta_is_half_pi()) throw UsageError("bloch-traj requires --theta pi/2");
  const double horizon = c.t_max.value_or(20.0 / c.params.J);
  io::Table table({"branch", "t", "R", "sy", "sz", "source"});
  for (auto branch : {blochsol::Branch::plus, blochsol::Branch::minus}) {
    std::optional<blochsol::BranchSolution> sol;
    try {
      sol.emplace(c.params, branch);
    } catch (const DegenerateRoots&) {
    } catch (const SingularCoefficients&) {
    }
    const auto sys = blochsol::reduced_matrix(c.params, blochsol::Variant::exact);
    const blochsol::Reduced v0(1.0, static_cast<double>(blochsol::sign(branch)), 0.0);
    for (std::size_t k = 0; k < c.samples; ++k) {
      const double t = horizon * static_cast<double>(k) / static_cast<double>(c.samples - 1);
      blochsol::Reduced v = sol ? sol->state(t) : blochsol::propagate(sys, v0, t);
      table.add_row({std::string(blochsol::to_string(branch)), t, v(0), v(1) / v(0), v(2) / v(0),
                     std::string(sol ? "analytic" : "numerical")});
    }
  }
  emit(table, base_meta(c), c, out);
  return kOk;
}

inline int cmd_nsit(const RunConfig& c, std::ostream& out) {
  if (!c.t && !c.maximize_over_t) throw UsageError("nsit needs --t or --maximize-over-t");
  if (c.t && c.maximize_over_t) throw UsageError("--t and --maximize-over-t are mutually exclusive");
  const auto gammas = gamma_values(c);
  const auto qs = q_values(c);
  using macrorealism::slot;
  struct Row {
    std::vector<io::Cell> cells;
  };
  const auto opt_cfg = c.optimize_config();
  const auto rows = parallel_map<Row>(gammas.size() * qs.size(), c.workers, [&](std::size_t idx) {
    ModelParams p = c.params;
    p.gamma = gammas[idx / qs.size()];
    p.q = qs[idx % qs.size()];
    const double nan = std::numeric_limits<double>::quiet_NaN();
    double t = c.t.value_or(nan);
    try {
      if (c.maximize_over_t) {
        const auto opt = lgi::optimize_k3(p, opt_cfg);
        if (opt.masked) throw Error("optimization masked: " + opt.error);
        t = opt.t_star;
      }
      const auto tab = macrorealism::joint_probabilities(p, t, c.evolve);
      const auto rep = macrorealism::check_nsit(tab);
      return Row{{p.gamma, p.q, t, rep.delta_0_1_2[slot(c.q0)][slot(c.q2)], rep.delta_1_2[slot(c.q2)],
                  rep.delta_0_2[slot(c.q2)], rep.aot.max(), std::string("ok")}};
    } catch (const Error& e) {
      return Row{{p.gamma, p.q, t, nan, nan, nan, nan, status_cell(std::string("error: ") + e.what())}};
    }
  });
  io::Table table({"gamma", "q", "t", "delta_01_2", "delta_12", "delta_02", "aot_defect", "status"});
  for (const auto& r : rows) table.add_row(r.cells);
  io::Json meta = base_meta(c);
  meta["components"] = {{"delta_01_2", {c.q0, c.q2}}, {"delta_12", c.q2}, {"delta_02", c.q2}};
  emit(table, meta, c, out);
  return kOk;
}

/// Landscape points from a sweep CSV (columns gamma, q, k3_max[, status]).
inline std::vector<fit::LandscapePoint> read_landscape(std::istream& is) {
  const auto doc = io::read_csv(is);
  const std::size_t gi = doc.column("gamma");
  const std::size_t qi = doc.column("q");
  const std::size_t ki = doc.has_column("k3_max") ? doc.column("k3_max") : doc.column("k3");
  const bool has_status = doc.has_column("status");
  const std::size_t si = has_status ? doc.column("status") : 0;
  std::vector<fit::LandscapePoint> pts;
  for (const auto& row : doc.rows) {
    fit::LandscapePoint pt;
    try {
      pt.gamma = std::stod(row[gi]);
      pt.q = std::stod(row[qi]);
      pt.k3 = std::stod(row[ki]);
    } catch (const std::logic_error&) {
      pt.k3 = std::numeric_limits<double>::quiet_NaN();
    }
    pt.masked = (has_status && row[si] != "ok") || !std::isfinite(pt.k3);
    pts.push_back(pt);
  }
  return pts;
}

inline int cmd_fit_check(const RunConfig& c, std::ostream& out) {
  if (c.in.empty()) throw UsageError("fit-check needs --in <sweep.csv>");
  std::ifstream file(c.in);
  if (!file) throw UsageError("cannot open " + c.in);
  std::vector<fit::LandscapePoint> pts;
  try {
    pts = read_landscape(file);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  const auto& coeffs = fit::published_coefficients();
  io::Json meta = base_meta(c);
  fit::LogBase base = fit::kDefaultLogBase;
  if (c.log_base == "auto") {
    const auto sel = fit::select_log_base(pts, coeffs);
    base = sel.chosen;
    meta["log_base_selection"] = {{"median_residual_log10", sel.median_ten}, {"median_residual_ln", sel.median_e},
                                  {"chosen", std::string(fit::to_string(sel.chosen))}};
  } else {
    try {
      base = fit::parse_log_base(c.log_base);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  io::Table table({"gamma", "q", "k3_computed", "k3_fit", "residual", "region"});
  fit::ResidualReport rep;
  if (c.allow_extrapolation) {
    // Evaluate every cell, including the excluded band.
    for (auto& pt : pts) {
      fit::ResidualRow row{pt.gamma, pt.q, pt.k3};
      if (!pt.masked) {
        row.k3_fit = fit::eval_fit(pt.gamma, pt.q, coeffs, base, true).value;
        row.residual = std::abs(row.k3_fit - pt.k3);
      }
      row.region = pt.masked ? fit::Region::masked
                             : (fit::in_domain(pt.gamma) ? fit::classify(row.residual) : fit::Region::excluded);
      rep.rows.push_back(row);
    }
    rep.summary = fit::residual_report(pts, coeffs, base).summary;
  } else {
    rep = fit::residual_report(pts, coeffs, base);
  }
  for (const auto& r : rep.rows) {
    table.add_row({r.gamma, r.q, r.k3_computed, r.k3_fit, r.residual, std::string(fit::to_string(r.region))});
  }
  meta["log_base"] = std::string(fit::to_string(base));
  meta["summary"] = {{"included", rep.summary.included},
                     {"excluded", rep.summary.excluded},
                     {"masked", rep.summary.masked},
                     {"region1", rep.summary.region_counts[0]},
                     {"region2", rep.summary.region_counts[1]},
                     {"outside", rep.summary.region_counts[2]},
                     {"median", rep.summary.median},
                     {"p90", rep.summary.p90},
                     {"max", rep.summary.max}};
  emit(table, meta, c, out);
  return kOk;
}

inline const std::vector<std::string_view>& commands() {
  static const std::vector<std::string_view> names{"evolve", "k3",       "sweep", "spectrum",
                                                   "ep-locus", "bloch-traj", "nsit",  "fit-check"};
  return names;
}

/// Dispatches a parsed configuration and maps errors onto exit codes.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    validate(c);
    if (c.command == "evolve") return cmd_evolve(c, out);
    if (c.command == "k3") return cmd_k3(c, out);
    if (c.command == "sweep") return cmd_sweep(c, out);
    if (c.command == "spectrum") return cmd_spectrum(c, out);
    if (c.command == "ep-locus") return cmd_ep_locus(c, out);
    if (c.command == "bloch-traj") return cmd_bloch_traj(c, out);
    if (c.command == "nsit") return cmd_nsit(c, out);
    if (c.command == "fit-check") return cmd_fit_check(c, out);
    throw UsageError("unknown command '" + c.command + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const TrajectoryExtinguished& e) {
    err << "error: " << e.what() << '\n';
    return kExtinguished;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace cli
}  // namespace hyblg

#endif  // HYBLG_CLI_HPP
