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

#ifndef HYBLG_MODEL_HPP
#define HYBLG_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hyblg/errors.hpp"
#include "hyblg/numerics.hpp"

namespace hyblg {

/// Qubit with H = -(J/2)(sin(theta) sx + cos(theta) sz), jump operator
/// L = |up><down| at rate gamma, and jump-retention fraction q.
struct ModelParams {
  double J = 1.0;
  double theta = std::numbers::pi / 2.0;
  double gamma = 0.0;
  double q = 1.0;

  void validate() const {
    if (!(J > 0.0) || !std::isfinite(J)) throw InvalidArgument("J must be finite and > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and >= 0");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("q must lie in [0, 1]");
    if (!(theta >= 0.0 && theta < 2.0 * std::numbers::pi)) throw InvalidArgument("theta must lie in [0, 2pi)");
  }

  /// Dimensionless ratio gamma / J.
  double ratio() const { return gamma / J; }

  bool theta_is_half_pi(double tol = 1e-12) const {
    return std::abs(theta - std::numbers::pi / 2.0) <= tol;
  }
};

namespace ops {

// Basis order: index 0 = |up>, index 1 = |down>.
inline Matrix2c identity() { return Matrix2c::Identity(); }

inline Matrix2c sigma_x() {
  Matrix2c m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

inline Matrix2c sigma_y() {
  Matrix2c m;
  m << 0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0;
  return m;
}

inline Matrix2c sigma_z() {
  Matrix2c m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// L = sigma_+ = |up><down|.
inline Matrix2c jump() {
  Matrix2c m = Matrix2c::Zero();
  m(0, 1) = 1.0;
  return m;
}

inline Matrix2c hamiltonian(const ModelParams& p) {
  // The double nearest pi/2 has cos = 6e-17; snap it so H is exactly -J sigma_x / 2.
  const bool half_pi = p.theta_is_half_pi(0.0);
  const double s = half_pi ? 1.0 : std::sin(p.theta);
  const double c = half_pi ? 0.0 : std::cos(p.theta);
  return -(p.J / 2.0) * (s * sigma_x() + c * sigma_z());
}

/// H_eff = H - i gamma L^dagger L.
inline Matrix2c effective_hamiltonian(const ModelParams& p) {
  const Matrix2c l = jump();
  return hamiltonian(p) - cplx(0.0, p.gamma) * (l.adjoint() * l);
}

/// Projector onto the sigma_y eigenstate with eigenvalue `outcome` (+1 or -1).
inline Matrix2c projector(int outcome) {
  if (outcome != 1 && outcome != -1) throw InvalidArgument("outcome must be +1 or -1");
  return 0.5 * (identity() + static_cast<double>(outcome) * sigma_y());
}

}  // namespace ops

/// Possibly unnormalized 2x2 density matrix.
class DensityMatrix {
 public:
  DensityMatrix() : m_(Matrix2c::Zero()) {}
  explicit DensityMatrix(const Matrix2c& m) : m_(m) {}

  const Matrix2c& matrix() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }

  /// max |rho - rho^dagger| entry.
  double hermiticity_defect() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

  /// Replaces rho by (rho + rho^dagger)/2 and returns the defect removed.
  double symmetrize() {
    const double defect = hermiticity_defect();
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
    return defect;
  }

  /// Smallest eigenvalue of the Hermitian part.
  double min_eigenvalue() const {
    const Matrix2c h = 0.5 * (m_ + m_.adjoint());
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double off = std::abs(h(0, 1));
    return 0.5 * (a + d) - std::hypot(0.5 * (a - d), off);
  }

  /// Tr[rho O].
  cplx expectation(const Matrix2c& op) const { return (m_ * op).trace(); }

  bool all_finite() const { return m_.allFinite(); }

 private:
  Matrix2c m_;
};

/// Trace R and unnormalized Bloch vector S = Tr[rho sigma].
struct BlochState {
  double R = 0.0;
  double Sx = 0.0;
  double Sy = 0.0;
  double Sz = 0.0;

  double norm() const { return std::sqrt(Sx * Sx + Sy * Sy + Sz * Sz); }
  bool is_physical(double slack = 1e-9) const { return Sx * Sx + Sy * Sy + Sz * Sz <= R * R + slack; }
};

inline BlochState bloch_decompose(const DensityMatrix& rho) {
  return {rho.trace(), rho.expectation(ops::sigma_x()).real(), rho.expectation(ops::sigma_y()).real(),
          rho.expectation(ops::sigma_z()).real()};
}

/// rho = (R/2) I + (1/2) S.sigma
inline DensityMatrix bloch_compose(const BlochState& b) {
  return DensityMatrix(0.5 * (b.R * ops::identity() + b.Sx * ops::sigma_x() + b.Sy * ops::sigma_y() +
                              b.Sz * ops::sigma_z()));
}

inline constexpr double kDefaultTraceGuard = 1e-12;

/// rho / Tr[rho]; throws TrajectoryExtinguished when the trace is below `eps_trace`.
inline DensityMatrix normalize(const DensityMatrix& rho, double eps_trace = kDefaultTraceGuard) {
  const double tr = rho.trace();
  if (!(tr >= eps_trace)) throw TrajectoryExtinguished(tr);
  return DensityMatrix(rho.matrix() / tr);
}

/// |+y><+y|, the prepared state.
inline DensityMatrix initial_state() { return DensityMatrix(ops::projector(+1)); }

}  // namespace hyblg

#endif  // HYBLG_MODEL_HPP
