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

#ifndef HYBLG_LGI_HPP
#define HYBLG_LGI_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyblg/dynamics.hpp"
#include "hyblg/errors.hpp"
#include "hyblg/model.hpp"
#include "hyblg/parallel.hpp"

namespace hyblg {
namespace lgi {

using dynamics::EvolveConfig;

/// Unnormalized states needed by the three-time protocol, all started from
/// sigma_y eigenstates: E_t(P+), E_t(P-), E_2t(P+), E_2t(P-).
struct BranchStates {
  DensityMatrix plus_t;
  DensityMatrix minus_t;
  DensityMatrix plus_2t;
  DensityMatrix minus_2t;
};

inline BranchStates evolve_branches(const ModelParams& p, double t, const EvolveConfig& cfg = {}) {
  const DensityMatrix pp(ops::projector(+1));
  const DensityMatrix pm(ops::projector(-1));
  if (cfg.method == dynamics::Method::exact) {
    const dynamics::ExactPropagator once(p, t);
    const BranchStates s{once.apply(pp), once.apply(pm), {}, {}};
    return {s.plus_t, s.minus_t, once.apply(s.plus_t), once.apply(s.minus_t)};
  }
  BranchStates s;
  s.plus_t = dynamics::evolve(pp, p, t, cfg);
  s.minus_t = dynamics::evolve(pm, p, t, cfg);
  s.plus_2t = dynamics::evolve(s.plus_t, p, t, cfg);
  s.minus_2t = dynamics::evolve(s.minus_t, p, t, cfg);
  return s;
}

/// Normalizes a branch state, tagging extinction with the branch name.
inline DensityMatrix normalized_branch(const DensityMatrix& rho, double eps_trace, const char* branch) {
  try {
    return normalize(rho, eps_trace);
  } catch (const TrajectoryExtinguished& e) {
    throw e.with_branch(branch);
  }
}

/// Correlators of the protocol t0 = 0, t1 = t, t2 = 2t for Q = sigma_y.
struct CorrelatorRecord {
  double t = 0.0;
  double C01 = 0.0;
  double C12 = 0.0;
  double C02 = 0.0;
  double K3 = 0.0;
  double p_plus = 0.0;
  double p_minus = 0.0;
};

inline CorrelatorRecord correlators(const ModelParams& p, double t, const EvolveConfig& cfg = {}) {
  p.validate();
  if (!(t > 0.0)) throw InvalidArgument("correlators: t must be > 0");
  const BranchStates s = evolve_branches(p, t, cfg);
  const Matrix2c sy = ops::sigma_y();
  const DensityMatrix rho_t = normalized_branch(s.plus_t, cfg.eps_trace, "rho(t)");
  const DensityMatrix rho_minus = normalized_branch(s.minus_t, cfg.eps_trace, "rho_-(t)");
  const DensityMatrix rho_2t = normalized_branch(s.plus_2t, cfg.eps_trace, "rho(2t)");

  CorrelatorRecord rec;
  rec.t = t;
  rec.C01 = rho_t.expectation(sy).real();
  rec.p_plus = rho_t.expectation(ops::projector(+1)).real();
  rec.p_minus = rho_t.expectation(ops::projector(-1)).real();
  // The post-measurement state for outcome + is E_t(P+) = rho(t) itself.
  rec.C12 = rec.C01 * rec.p_plus - rho_minus.expectation(sy).real() * rec.p_minus;
  rec.C02 = rho_2t.expectation(sy).real();
  rec.K3 = rec.C01 + rec.C12 - rec.C02;
  return rec;
}

inline double k3(const ModelParams& p, double t, const EvolveConfig& cfg = {}) { return correlators(p, t, cfg).K3; }

struct OptimizeConfig {
  std::optional<double> t_max;  // defaults to 20/J
  std::size_t resolution = 2000;
  double tolerance = 1e-6;         // golden-section bracket width in t
  double candidate_margin = 1e-3;  // grid peaks this close to the best are refined too
  std::size_t max_candidates = 16;
  double tie_epsilon = 1e-9;
  EvolveConfig evolve;

  double horizon(const ModelParams& p) const { return t_max.value_or(20.0 / p.J); }
};

struct OptimizeResult {
  double k3_max = std::numeric_limits<double>::quiet_NaN();
  double t_star = std::numeric_limits<double>::quiet_NaN();
  bool masked = false;
  std::string error;
};

namespace detail {

struct Probe {
  double t;
  double value;
};

inline constexpr double kGoldenRatioInv = 0.6180339887498949;

}  // namespace detail

/// Maximizes K3 over t in (0, t_max]: uniform grid, then a 4x re-scan and a
/// golden-section search around every grid peak near the best one. Equal
/// values (within tie_epsilon) resolve toward the smallest t.
inline OptimizeResult optimize_k3(const ModelParams& p, const OptimizeConfig& cfg = {}) {
  p.validate();
  const double horizon = cfg.horizon(p);
  if (!(horizon > 0.0) || cfg.resolution < 2) throw InvalidArgument("optimize_k3: need t_max > 0 and resolution >= 2");
  const double neg_inf = -std::numeric_limits<double>::infinity();
  std::string first_error;
  auto eval = [&](double t) {
    try {
      const double v = k3(p, t, cfg.evolve);
      return std::isfinite(v) ? v : neg_inf;
    } catch (const Error& e) {
      if (first_error.empty()) first_error = e.what();
      return neg_inf;
    }
  };

  const std::size_t n = cfg.resolution;
  const double h = horizon / static_cast<double>(n);
  std::vector<double> grid(n + 2, neg_inf);  // grid[i] at t = i h, padded on both ends
  double best_grid = neg_inf;
  for (std::size_t i = 1; i <= n; ++i) {
    grid[i] = eval(h * static_cast<double>(i));
    best_grid = std::max(best_grid, grid[i]);
  }
  OptimizeResult out;
  if (best_grid == neg_inf) {
    out.masked = true;
    out.error = first_error.empty() ? "no finite K3 value on the grid" : first_error;
    return out;
  }

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i <= n; ++i) {
    if (grid[i] >= grid[i - 1] && grid[i] >= grid[i + 1] && grid[i] >= best_grid - cfg.candidate_margin) {
      candidates.push_back(i);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](std::size_t a, std::size_t b) { return grid[a] > grid[b]; });
  if (candidates.size() > cfg.max_candidates) candidates.resize(cfg.max_candidates);

  const double t_floor = h * 1e-6;
  auto refine = [&](std::size_t i) {
    const double lo = i == 1 ? t_floor : h * static_cast<double>(i - 1);
    const double hi = h * static_cast<double>(std::min(i + 1, n));
    detail::Probe best{h * static_cast<double>(i), grid[i]};
    // Re-scan the cell at 4x resolution.
    constexpr int kSub = 8;
    std::array<detail::Probe, kSub + 1> sub{};
    for (int k = 0; k <= kSub; ++k) {
      const double t = lo + (hi - lo) * static_cast<double>(k) / kSub;
      sub[static_cast<std::size_t>(k)] = {t, eval(t)};
    }
    int kbest = 0;
    for (int k = 1; k <= kSub; ++k)
      if (sub[static_cast<std::size_t>(k)].value > sub[static_cast<std::size_t>(kbest)].value) kbest = k;
    if (sub[static_cast<std::size_t>(kbest)].value > best.value) best = sub[static_cast<std::size_t>(kbest)];

    double a = sub[static_cast<std::size_t>(std::max(kbest - 1, 0))].t;
    double b = sub[static_cast<std::size_t>(std::min(kbest + 1, kSub))].t;
    double c = b - detail::kGoldenRatioInv * (b - a);
    double d = a + detail::kGoldenRatioInv * (b - a);
    double fc = eval(c);
    double fd = eval(d);
    while (b - a > cfg.tolerance) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - detail::kGoldenRatioInv * (b - a);
        fc = eval(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + detail::kGoldenRatioInv * (b - a);
        fd = eval(d);
      }
    }
    const detail::Probe golden = fc >= fd ? detail::Probe{c, fc} : detail::Probe{d, fd};
    if (golden.value > best.value) best = golden;
    return best;
  };

  detail::Probe winner{std::numeric_limits<double>::infinity(), neg_inf};
  for (std::size_t i : candidates) {
    const detail::Probe r = refine(i);
    const bool tie = std::abs(r.value - winner.value) <= cfg.tie_epsilon;
    if ((tie && r.t < winner.t) || (!tie && r.value > winner.value)) winner = r;
  }
  out.k3_max = winner.value;
  out.t_star = winner.t;
  return out;
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw InvalidArgument("grid needs at least one point");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > 0.0)) throw InvalidArgument("log grid bounds must be > 0");
  std::vector<double> v = linspace(std::log10(lo), std::log10(hi), n);
  for (auto& x : v) x = std::pow(10.0, x);
  v.front() = lo;
  if (n > 1) v.back() = hi;
  return v;
}

struct SweepCell {
  double gamma = 0.0;
  double q = 0.0;
  OptimizeResult result;
};

/// K3_max over a (gamma, q) grid; cells are stored gamma-major.
struct SweepResult {
  std::vector<double> gammas;
  std::vector<double> qs;
  std::vector<SweepCell> cells;
  std::size_t resolution = 0;
  double t_max = 0.0;

  const SweepCell& at(std::size_t gi, std::size_t qi) const { return cells[gi * qs.size() + qi]; }
};

inline SweepResult sweep(const std::vector<double>& gammas, const std::vector<double>& qs, const ModelParams& base,
                         const OptimizeConfig& cfg = {}, unsigned workers = 1) {
  if (gammas.empty() || qs.empty()) throw InvalidArgument("sweep grids must be nonempty");
  SweepResult res;
  res.gammas = gammas;
  res.qs = qs;
  res.resolution = cfg.resolution;
  res.t_max = cfg.horizon(base);
  res.cells = parallel_map<SweepCell>(gammas.size() * qs.size(), workers, [&](std::size_t idx) {
    SweepCell cell;
    cell.gamma = gammas[idx / qs.size()];
    cell.q = qs[idx % qs.size()];
    ModelParams p = base;
    p.gamma = cell.gamma;
    p.q = cell.q;
    try {
      cell.result = optimize_k3(p, cfg);
    } catch (const Error& e) {
      cell.result.masked = true;
      cell.result.error = e.what();
    }
    return cell;
  });
  return res;
}

}  // namespace lgi
}  // namespace hyblg

#endif  // HYBLG_LGI_HPP
