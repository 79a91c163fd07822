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

// Command-line front end. Run `hyblg --help` for the subcommand list.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <string>

#include "hyblg/cli.hpp"

namespace {

using hyblg::cli::RunConfig;
using hyblg::cli::UsageError;

// Accepts plain numbers plus "pi", "pi/N" and "K*pi/N".
double parse_angle(const std::string& text) {
  const auto pos = text.find("pi");
  if (pos == std::string::npos) {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw UsageError("bad angle '" + text + "'");
    return v;
  }
  double k = 1.0;
  if (pos > 0) {
    std::string head = text.substr(0, pos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    k = head == "-" ? -1.0 : std::stod(head);
  }
  double d = 1.0;
  const std::string tail = text.substr(pos + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw UsageError("bad angle '" + text + "'");
    d = std::stod(tail.substr(1));
  }
  return k * std::numbers::pi / d;
}

void add_common(CLI::App* sub, RunConfig& c, std::string& theta, std::string& engine, std::string& grid_gamma,
                std::string& grid_q) {
  sub->add_option("--J", c.params.J, "coupling J (> 0)");
  sub->add_option("--theta", theta, "Hamiltonian angle, number or pi/2 style");
  sub->add_option("--gamma", c.params.gamma, "dissipation rate (>= 0)");
  sub->add_option("--q", c.params.q, "hybrid parameter in [0, 1]");
  sub->add_option("--t", c.t, "measurement time");
  sub->add_option("--t-max", c.t_max, "time horizon");
  sub->add_option("--dt", c.evolve.dt, "step size for rk4 and kraus engines");
  sub->add_option("--grid-gamma", grid_gamma, "min:max:n[:log|lin]");
  sub->add_option("--grid-q", grid_q, "min:max:n[:log|lin]");
  sub->add_option("--engine", engine, "exact | rk4 | kraus");
  sub->add_option("--format", c.format, "csv | json");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--workers", c.workers, "worker threads");
  sub->add_option("--eps-trace", c.evolve.eps_trace, "extinction threshold on Tr rho");
  sub->add_option("--resolution", c.resolution, "optimizer grid points");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leggett-Garg inequalities for a hybrid-Liouvillian qubit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(hyblg::kVersion));

  RunConfig c;
  std::string theta = "pi/2";
  std::string engine = "exact";
  std::string grid_gamma;
  std::string grid_q;
  std::vector<double> bloch0;

  std::vector<CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> descr{
      {"evolve", "density-matrix trajectory from |+y>"},
      {"k3", "K3 and correlators at --t, or optimized over t"},
      {"sweep", "K3max over a (gamma, q) grid"},
      {"spectrum", "Liouvillian eigenvalues and cubic roots"},
      {"ep-locus", "exceptional-point radius r_ep(q)"},
      {"bloch-traj", "analytic R, s_y, s_z for both branches"},
      {"nsit", "no-signaling-in-time and arrow-of-time defects"},
      {"fit-check", "residuals of the published fit against a sweep CSV"}};
  for (const auto& [name, help] : descr) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub, c, theta, engine, grid_gamma, grid_q);
    subs.push_back(sub);
  }
  subs[0]->add_option("--samples", c.samples, "number of output rows");
  subs[0]->add_option("--bloch0", bloch0, "initial R Sx Sy Sz")->expected(4);
  subs[5]->add_option("--samples", c.samples, "number of output rows per branch");
  subs[6]->add_flag("--maximize-over-t", c.maximize_over_t, "evaluate at the K3-optimal t");
  subs[6]->add_option("--q0", c.q0, "outcome at t0 for delta_01_2");
  subs[6]->add_option("--q2", c.q2, "outcome at t2");
  subs[7]->add_option("--in", c.in, "sweep CSV with gamma, q, k3_max columns")->required();
  subs[7]->add_option("--log-base", c.log_base, "auto | 10 | e");
  subs[7]->add_flag("--allow-extrapolation", c.allow_extrapolation, "evaluate inside the excluded band too");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : hyblg::cli::kUsage;
  }

  try {
    for (auto* sub : subs) {
      if (sub->parsed()) c.command = sub->get_name();
    }
    c.params.theta = parse_angle(theta);
    c.evolve.method = hyblg::dynamics::parse_method(engine);
    if (!grid_gamma.empty()) c.grid_gamma = hyblg::cli::parse_grid(grid_gamma);
    if (!grid_q.empty()) c.grid_q = hyblg::cli::parse_grid(grid_q);
    if (!bloch0.empty()) c.initial_bloch = hyblg::BlochState{bloch0[0], bloch0[1], bloch0[2], bloch0[3]};
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return hyblg::cli::kUsage;
  }

  if (c.out.empty()) return hyblg::cli::run(c, std::cout, std::cerr);
  std::ofstream file(c.out);
  if (!file) {
    std::cerr << "usage error: cannot write " << c.out << '\n';
    return hyblg::cli::kUsage;
  }
  return hyblg::cli::run(c, file, std::cerr);
}
