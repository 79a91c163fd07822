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

#ifndef HYBLG_DYNAMICS_HPP
#define HYBLG_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>

#include "hyblg/errors.hpp"
#include "hyblg/model.hpp"
#include "hyblg/numerics.hpp"
#include "hyblg/spectrum.hpp"

namespace hyblg {
namespace dynamics {

enum class Method { rk4, exact, kraus };

inline std::string_view to_string(Method m) {
  switch (m) {
    case Method::rk4:
      return "rk4";
    case Method::exact:
      return "exact";
    case Method::kraus:
      return "kraus";
  }
  return "?";
}

inline Method parse_method(std::string_view s) {
  if (s == "rk4") return Method::rk4;
  if (s == "exact") return Method::exact;
  if (s == "kraus") return Method::kraus;
  throw InvalidArgument("unknown evolution method '" + std::string(s) + "'");
}

struct EvolveConfig {
  double dt = 1e-3;       // units of 1/J; also the Kraus step
  double t_max = 20.0;
  double eps_trace = kDefaultTraceGuard;
  Method method = Method::exact;

  void validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be finite and > 0");
    if (!(t_max >= 0.0)) throw InvalidArgument("t_max must be >= 0");
  }
};

/// Right-hand side of the hybrid master equation
///   d rho/dt = -i[H, rho] + 2 gamma (q L rho L^dag - {L^dag L, rho}/2).
inline DensityMatrix rhs(const DensityMatrix& rho, const ModelParams& p) {
  const Matrix2c& m = rho.matrix();
  const Matrix2c h = ops::hamiltonian(p);
  const Matrix2c l = ops::jump();
  const Matrix2c ldl = l.adjoint() * l;
  const cplx i{0.0, 1.0};
  Matrix2c d = -i * (h * m - m * h);
  d += 2.0 * p.gamma * (p.q * (l * m * l.adjoint()) - 0.5 * (ldl * m + m * ldl));
  return DensityMatrix(d);
}

struct Rk4Stats {
  std::size_t steps = 0;
  double max_hermiticity_defect = 0.0;
};

namespace detail {

// Splits [0, t] into whole steps of `dt` plus one shortened final step.
struct StepPlan {
  std::size_t whole = 0;
  double tail = 0.0;
};

inline StepPlan plan_steps(double t, double dt) {
  StepPlan plan;
  const double n = std::floor(t / dt);
  plan.whole = static_cast<std::size_t>(n);
  plan.tail = t - n * dt;
  if (plan.tail <= 1e-12 * dt) plan.tail = 0.0;
  if (plan.tail >= dt * (1.0 - 1e-12)) {
    ++plan.whole;
    plan.tail = 0.0;
  }
  return plan;
}

inline Matrix2c rhs_matrix(const Matrix2c& m, const Matrix2c& h, const Matrix2c& l, const Matrix2c& ldl,
                           const ModelParams& p) {
  const cplx i{0.0, 1.0};
  return -i * (h * m - m * h) + 2.0 * p.gamma * (p.q * (l * m * l.adjoint()) - 0.5 * (ldl * m + m * ldl));
}

}  // namespace detail

/// Classical fourth-order Runge-Kutta on the unnormalized state.
inline DensityMatrix evolve_rk4(const DensityMatrix& rho0, const ModelParams& p, double t, const EvolveConfig& cfg,
                                Rk4Stats* stats = nullptr) {
  cfg.validate();
  if (!(t >= 0.0)) throw InvalidArgument("evolve_rk4: t must be >= 0");
  const Matrix2c h = ops::hamiltonian(p);
  const Matrix2c l = ops::jump();
  const Matrix2c ldl = l.adjoint() * l;
  const auto plan = detail::plan_steps(t, cfg.dt);

  DensityMatrix rho = rho0;
  Rk4Stats local;
  auto step = [&](double hstep) {
    const Matrix2c& y = rho.matrix();
    const Matrix2c k1 = detail::rhs_matrix(y, h, l, ldl, p);
    const Matrix2c k2 = detail::rhs_matrix(y + 0.5 * hstep * k1, h, l, ldl, p);
    const Matrix2c k3 = detail::rhs_matrix(y + 0.5 * hstep * k2, h, l, ldl, p);
    const Matrix2c k4 = detail::rhs_matrix(y + hstep * k3, h, l, ldl, p);
    rho = DensityMatrix(y + (hstep / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    ++local.steps;
    if (!rho.all_finite()) throw IntegrationDiverged(local.steps);
    local.max_hermiticity_defect = std::max(local.max_hermiticity_defect, rho.symmetrize());
  };
  for (std::size_t n = 0; n < plan.whole; ++n) step(cfg.dt);
  if (plan.tail > 0.0) step(plan.tail);
  if (stats) *stats = local;
  return rho;
}

/// e^{L t} as a reusable map on density matrices.
class ExactPropagator {
 public:
  ExactPropagator(const ModelParams& p, double t) : phi_(numerics::expm(spectrum::build_liouvillian(p), t)) {}
  explicit ExactPropagator(const Matrix4c& phi) : phi_(phi) {}

  DensityMatrix apply(const DensityMatrix& rho) const {
    return spectrum::devectorize(phi_ * spectrum::vectorize(rho));
  }
  const Matrix4c& matrix() const { return phi_; }

  /// Propagator over twice the interval.
  ExactPropagator squared() const { return ExactPropagator(Matrix4c(phi_ * phi_)); }

 private:
  Matrix4c phi_;
};

inline DensityMatrix evolve_exact(const DensityMatrix& rho0, const ModelParams& p, double t) {
  if (!(t >= 0.0)) throw InvalidArgument("evolve_exact: t must be >= 0");
  if (t == 0.0) return rho0;
  return ExactPropagator(p, t).apply(rho0);
}

/// No-jump and jump operators of one discrete monitoring step.
struct KrausPair {
  Matrix2c M0;
  Matrix2c M1;
  double dt = 0.0;

  /// max |M0^dag M0 + M1^dag M1 - I|, which is O(dt^2).
  double completeness_defect() const {
    return (M0.adjoint() * M0 + M1.adjoint() * M1 - Matrix2c::Identity()).cwiseAbs().maxCoeff();
  }
};

inline KrausPair make_kraus_pair(const ModelParams& p, double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("Kraus step must be > 0");
  KrausPair k;
  k.dt = dt;
  k.M0 = Matrix2c::Identity() - cplx(0.0, dt) * ops::effective_hamiltonian(p);
  k.M1 = std::sqrt(2.0 * p.gamma * dt) * ops::jump();
  return k;
}

/// rho <- M0 rho M0^dag + q M1 rho M1^dag
inline DensityMatrix kraus_step(const DensityMatrix& rho, const ModelParams& p, double dt) {
  const KrausPair k = make_kraus_pair(p, dt);
  const Matrix2c& m = rho.matrix();
  return DensityMatrix(k.M0 * m * k.M0.adjoint() + p.q * (k.M1 * m * k.M1.adjoint()));
}

inline DensityMatrix evolve_kraus(const DensityMatrix& rho0, const ModelParams& p, double t, double dt) {
  if (!(t >= 0.0)) throw InvalidArgument("evolve_kraus: t must be >= 0");
  const auto plan = detail::plan_steps(t, dt);
  const KrausPair k = make_kraus_pair(p, dt);
  DensityMatrix rho = rho0;
  for (std::size_t n = 0; n < plan.whole; ++n) {
    const Matrix2c& m = rho.matrix();
    rho = DensityMatrix(k.M0 * m * k.M0.adjoint() + p.q * (k.M1 * m * k.M1.adjoint()));
    if (!rho.all_finite()) throw IntegrationDiverged(n + 1);
  }
  if (plan.tail > 0.0) rho = kraus_step(rho, p, plan.tail);
  return rho;
}

inline DensityMatrix evolve(const DensityMatrix& rho0, const ModelParams& p, double t, const EvolveConfig& cfg) {
  switch (cfg.method) {
    case Method::rk4:
      return evolve_rk4(rho0, p, t, cfg);
    case Method::exact:
      return evolve_exact(rho0, p, t);
    case Method::kraus:
      return evolve_kraus(rho0, p, t, cfg.dt);
  }
  throw InvalidArgument("unknown evolution method");
}

}  // namespace dynamics
}  // namespace hyblg

#endif  // HYBLG_DYNAMICS_HPP
