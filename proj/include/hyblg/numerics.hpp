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

#ifndef HYBLG_NUMERICS_HPP
#define HYBLG_NUMERICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "hyblg/errors.hpp"

namespace hyblg {

using cplx = std::complex<double>;

/// Dense complex square matrix of compile-time dimension 2, 3 or 4.
template <int N>
using ComplexMatrix = Eigen::Matrix<cplx, N, N>;

template <int N>
using ComplexVector = Eigen::Matrix<cplx, N, 1>;

using Matrix2c = ComplexMatrix<2>;
using Matrix3c = ComplexMatrix<3>;
using Matrix4c = ComplexMatrix<4>;
using Vector4c = ComplexVector<4>;

namespace numerics {

inline const cplx kOmega{-0.5, std::numbers::sqrt3 / 2.0};  // e^{i 2pi/3}

/// Monic cubic x^3 + a x^2 + b x + c.
struct CubicCoefficients {
  cplx a;
  cplx b;
  cplx c;

  cplx evaluate(cplx x) const { return ((x + a) * x + b) * x + c; }
  cplx derivative(cplx x) const { return (3.0 * x + 2.0 * a) * x + b; }
};

/// Depressed-cubic quantities of Cardano's construction.
struct CardanoIntermediates {
  cplx P;
  cplx Q;
  cplx u;
  cplx v;
  cplx omega = kOmega;
};

struct CubicRoots {
  std::array<cplx, 3> roots{};
  // Flags for the sorted pairs (0,1), (0,2), (1,2).
  std::array<bool, 3> close_pairs{};
  CardanoIntermediates cardano;

  bool degenerate() const { return close_pairs[0] || close_pairs[1] || close_pairs[2]; }

  double min_gap() const {
    return std::min({std::abs(roots[0] - roots[1]), std::abs(roots[0] - roots[2]),
                     std::abs(roots[1] - roots[2])});
  }
};

inline constexpr double kDegeneracyThreshold = 1e-7;

namespace detail {

inline bool all_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Real part first, imaginary part second. Real parts within `tol` count as equal
// so conjugate pairs order by imaginary part regardless of rounding noise.
inline bool precedes(cplx lhs, cplx rhs, double tol) {
  if (std::abs(lhs.real() - rhs.real()) > tol) return lhs.real() < rhs.real();
  if (std::abs(lhs.imag() - rhs.imag()) > tol) return lhs.imag() < rhs.imag();
  return false;
}

}  // namespace detail

/// Stable insertion sort into the (real, imaginary) total order. Ties keep input order.
template <std::size_t N>
void sort_spectrum(std::array<cplx, N>& values) {
  double scale = 1.0;
  for (const auto& z : values) scale = std::max(scale, std::abs(z));
  const double tol = 1e-9 * scale;
  for (std::size_t i = 1; i < N; ++i) {
    cplx key = values[i];
    std::size_t j = i;
    while (j > 0 && detail::precedes(key, values[j - 1], tol)) {
      values[j] = values[j - 1];
      --j;
    }
    values[j] = key;
  }
}

/// Roots of a monic cubic by Cardano's formulas, polished by Newton steps.
///
/// The cube root u is taken on the principal branch from whichever of
/// -Q/2 +- sqrt(Q^2/4 + P^3/27) has the larger magnitude; v is then fixed by
/// the pairing u v = -P/3, which selects the correct cube root of the
/// conjugate radicand. Roots are returned in (real, imaginary) order.
inline CubicRoots solve_cubic_cardano(const CubicCoefficients& k) {
  if (!detail::all_finite(k.a) || !detail::all_finite(k.b) || !detail::all_finite(k.c)) {
    throw InvalidArgument("solve_cubic_cardano: non-finite coefficient");
  }
  const cplx a = k.a;
  const cplx b = k.b;
  const cplx c = k.c;

  CubicRoots out;
  CardanoIntermediates& ci = out.cardano;
  ci.P = (3.0 * b - a * a) / 3.0;
  ci.Q = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 27.0;

  const cplx disc = std::sqrt(ci.Q * ci.Q / 4.0 + ci.P * ci.P * ci.P / 27.0);
  const cplx plus = -ci.Q / 2.0 + disc;
  const cplx minus = -ci.Q / 2.0 - disc;
  const cplx radicand = std::abs(plus) >= std::abs(minus) ? plus : minus;

  if (radicand == cplx{0.0, 0.0}) {
    ci.u = 0.0;
    ci.v = 0.0;
  } else {
    ci.u = std::pow(radicand, 1.0 / 3.0);
    ci.v = -ci.P / (3.0 * ci.u);
  }

  const cplx w = ci.omega;
  const cplx w2 = w * w;
  const cplx shift = a / 3.0;
  out.roots = {ci.u + ci.v - shift, w * ci.u + w2 * ci.v - shift, w2 * ci.u + w * ci.v - shift};

  for (auto& x : out.roots) {
    double residual = std::abs(k.evaluate(x));
    for (int iter = 0; iter < 4 && residual > 0.0; ++iter) {
      const cplx d = k.derivative(x);
      if (d == cplx{0.0, 0.0}) break;
      const cplx next = x - k.evaluate(x) / d;
      const double r = std::abs(k.evaluate(next));
      if (!(r < residual)) break;
      x = next;
      residual = r;
    }
  }

  sort_spectrum(out.roots);

  double scale = 1.0;
  for (const auto& x : out.roots) scale = std::max(scale, std::abs(x));
  const double gap_tol = kDegeneracyThreshold * scale;
  out.close_pairs = {std::abs(out.roots[0] - out.roots[1]) < gap_tol,
                     std::abs(out.roots[0] - out.roots[2]) < gap_tol,
                     std::abs(out.roots[1] - out.roots[2]) < gap_tol};
  return out;
}

template <int N>
std::string describe(const ComplexMatrix<N>& m) {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (int i = 0; i < N; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < N; ++j) os << (j ? ", " : "") << m(i, j);
  }
  os << "]";
  return os.str();
}

/// Eigenvalues of a 4x4 complex matrix in (real, imaginary) order.
inline std::array<cplx, 4> eigenvalues_4x4(const Matrix4c& m) {
  if (!m.allFinite()) throw InvalidArgument("eigenvalues_4x4: non-finite entry in " + describe(m));
  Eigen::ComplexEigenSolver<Matrix4c> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eigenvalues_4x4: QR iteration did not converge for " + describe(m));
  }
  std::array<cplx, 4> out;
  for (int i = 0; i < 4; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  sort_spectrum(out);
  return out;
}

/// e^{M t}. Exactly the identity at t = 0.
template <int N>
ComplexMatrix<N> expm(const ComplexMatrix<N>& m, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidArgument("expm: t must be finite and >= 0");
  if (t == 0.0) return ComplexMatrix<N>::Identity();
  const ComplexMatrix<N> scaled = m * t;
  return scaled.exp();
}

}  // namespace numerics
}  // namespace hyblg

#endif  // HYBLG_NUMERICS_HPP
