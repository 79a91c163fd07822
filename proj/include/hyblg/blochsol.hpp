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

#ifndef HYBLG_BLOCHSOL_HPP
#define HYBLG_BLOCHSOL_HPP

#include <array>
#include <cmath>
#include <string_view>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hyblg/errors.hpp"
#include "hyblg/model.hpp"
#include "hyblg/numerics.hpp"

// Closed-form solution of the (R, Sy, Sz) equations at theta = pi/2.
//
// Sx decouples (dSx/dt = -gamma Sx), so a state prepared in the y-z plane
// stays there and the remaining three components obey a linear 3x3 system.
// Dropping the gamma q Sz terms gives a system whose shifted spectrum
// x = lambda + gamma solves x^3 - gq x^2 + (J^2 - g^2(1+q)) x - gq J^2 = 0;
// the solution is an eigen-expansion over those three roots.

namespace hyblg {
namespace blochsol {

enum class Variant { exact, approximate };

enum class Branch { plus, minus };

inline int sign(Branch b) { return b == Branch::plus ? +1 : -1; }

inline std::string_view to_string(Branch b) { return b == Branch::plus ? "+" : "-"; }

/// Reduced state (R, Sy, Sz).
using Reduced = Eigen::Vector3d;

struct ReducedSystem {
  Eigen::Matrix3d matrix;
  Variant variant = Variant::exact;
};

inline void require_half_pi(const ModelParams& p) {
  if (!p.theta_is_half_pi()) {
    throw UnsupportedConfiguration("reduced Bloch system requires theta = pi/2");
  }
}

inline ReducedSystem reduced_matrix(const ModelParams& p, Variant variant) {
  p.validate();
  require_half_pi(p);
  const double g = p.gamma;
  const double q = p.q;
  ReducedSystem sys;
  sys.variant = variant;
  if (variant == Variant::exact) {
    sys.matrix << -g * (1.0 - q), 0.0, g * (1.0 - q),  //
        0.0, -g, p.J,                                   //
        g * (1.0 + q), -p.J, -g * (1.0 + q);
  } else {
    sys.matrix << -g * (1.0 - q), 0.0, g,  //
        0.0, -g, p.J,                       //
        g * (1.0 + q), -p.J, -g;
  }
  return sys;
}

/// Numerical solution e^{M t} v0 of a reduced system.
inline Reduced propagate(const ReducedSystem& sys, const Reduced& v0, double t) {
  if (t == 0.0) return v0;
  const Eigen::Matrix3d scaled = sys.matrix * t;
  return scaled.exp() * v0;
}

inline numerics::CubicCoefficients shifted_cubic(const ModelParams& p) {
  const double g = p.gamma;
  const double q = p.q;
  return {-g * q, p.J * p.J - g * g * (1.0 + q), -g * q * p.J * p.J};
}

/// Analytic solution of the approximate reduced system for one
/// post-measurement branch, started from (R, Sy, Sz) = (1, +-1, 0).
class BranchSolution {
 public:
  BranchSolution(const ModelParams& p, Branch branch) : params_(p), branch_(branch) {
    p.validate();
    require_half_pi(p);
    if (!(p.gamma > 0.0)) {
      throw SingularCoefficients("analytic branch solution needs gamma > 0 (coefficients divide by gamma)");
    }
    cubic_ = numerics::solve_cubic_cardano(shifted_cubic(p));
    if (cubic_.degenerate()) {
      throw DegenerateRoots("analytic branch solution: near-degenerate characteristic roots, use the numerical path");
    }
    const double g = p.gamma;
    const double J = p.J;
    const double k = 1.0 + p.q;
    // Eigenvector of root x: (x^2 + J^2, g J (1+q), g (1+q) x). Matching v(0)
    // fixes the moments sum c_j x_j^n for n = 0, 1, 2.
    const cplx m0 = static_cast<double>(sign(branch)) / (g * J * k);
    const cplx m1 = 0.0;
    const cplx m2 = 1.0 - J * J * m0;
    const auto& x = cubic_.roots;
    for (int j = 0; j < 3; ++j) {
      const cplx xj = x[static_cast<std::size_t>(j)];
      const cplx xk = x[static_cast<std::size_t>((j + 1) % 3)];
      const cplx xl = x[static_cast<std::size_t>((j + 2) % 3)];
      coeffs_[static_cast<std::size_t>(j)] = (m2 - (xk + xl) * m1 + xk * xl * m0) / ((xj - xk) * (xj - xl));
    }
  }

  Branch branch() const { return branch_; }
  const std::array<cplx, 3>& roots() const { return cubic_.roots; }
  const std::array<cplx, 3>& coefficients() const { return coeffs_; }
  const numerics::CubicRoots& cubic() const { return cubic_; }

  /// Eigenvector (R, Sy, Sz) paired with root j.
  std::array<cplx, 3> eigenvector(int j) const {
    const cplx x = cubic_.roots[static_cast<std::size_t>(j)];
    const double k = 1.0 + params_.q;
    return {x * x + params_.J * params_.J, params_.gamma * params_.J * k, params_.gamma * k * x};
  }

  /// Unnormalized (R, Sy, Sz) at time t.
  Reduced state(double t) const {
    const auto s = sums(t);
    const double damp = std::exp(-params_.gamma * t);
    return {damp * s[0], damp * s[1], damp * s[2]};
  }

  double R(double t) const { return state(t)(0); }

  /// Normalized components Sy/R and Sz/R.
  double s_y(double t) const {
    const auto s = sums(t);
    return s[1] / s[0];
  }
  double s_z(double t) const {
    const auto s = sums(t);
    return s[2] / s[0];
  }

 private:
  // Sums without the common e^{-gamma t} factor.
  std::array<double, 3> sums(double t) const {
    cplx r{0.0}, sy{0.0}, sz{0.0};
    for (int j = 0; j < 3; ++j) {
      const auto u = eigenvector(j);
      const cplx w = coeffs_[static_cast<std::size_t>(j)] * std::exp(cubic_.roots[static_cast<std::size_t>(j)] * t);
      r += w * u[0];
      sy += w * u[1];
      sz += w * u[2];
    }
    return {r.real(), sy.real(), sz.real()};
  }

  ModelParams params_;
  Branch branch_;
  numerics::CubicRoots cubic_;
  std::array<cplx, 3> coeffs_{};
};

/// K3 from the two analytic branches:
///   s+(t) + (s+(t) - s-(t))/2 + s+(t)(s+(t) + s-(t))/2 - s+(2t).
inline double k3_closed_form(const ModelParams& p, double t) {
  const BranchSolution plus(p, Branch::plus);
  const BranchSolution minus(p, Branch::minus);
  const double sp = plus.s_y(t);
  const double sm = minus.s_y(t);
  return sp + 0.5 * (sp - sm) + 0.5 * sp * (sp + sm) - plus.s_y(2.0 * t);
}

struct K3Estimate {
  double value = 0.0;
  bool numerical_fallback = false;
};

/// k3_closed_form, or the same combination from the exact reduced system when
/// the characteristic roots are degenerate.
inline K3Estimate k3_with_fallback(const ModelParams& p, double t) {
  try {
    return {k3_closed_form(p, t), false};
  } catch (const DegenerateRoots&) {
    const auto sys = reduced_matrix(p, Variant::exact);
    auto sy = [&](double sign_y, double time) {
      const Reduced v = propagate(sys, Reduced(1.0, sign_y, 0.0), time);
      return v(1) / v(0);
    };
    const double sp = sy(1.0, t);
    const double sm = sy(-1.0, t);
    return {sp + 0.5 * (sp - sm) + 0.5 * sp * (sp + sm) - sy(1.0, 2.0 * t), true};
  }
}

}  // namespace blochsol
}  // namespace hyblg

#endif  // HYBLG_BLOCHSOL_HPP
