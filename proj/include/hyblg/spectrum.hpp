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

#ifndef HYBLG_SPECTRUM_HPP
#define HYBLG_SPECTRUM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "hyblg/model.hpp"
#include "hyblg/numerics.hpp"

namespace hyblg {
namespace spectrum {

// Column-stacking vectorization |rho>> = (rho00, rho10, rho01, rho11).
// With this ordering vec(A X B) = (B^T kron A) vec(X), and the theta = pi/2
// generator reproduces the textbook matrix
//   [ 0     iJ/2  -iJ/2  2q g ]
//   [ iJ/2  -g     0     -iJ/2]
//   [-iJ/2   0    -g      iJ/2]
//   [ 0    -iJ/2  iJ/2   -2g  ]
inline constexpr int vec_index(int row, int col) { return row + 2 * col; }

inline Vector4c vectorize(const DensityMatrix& rho) {
  Vector4c v;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) v(vec_index(i, j)) = rho(i, j);
  return v;
}

inline DensityMatrix devectorize(const Vector4c& v) {
  Matrix2c m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = v(vec_index(i, j));
  return DensityMatrix(m);
}

inline Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

/// Superoperator of X -> A X B.
inline Matrix4c sandwich(const Matrix2c& left, const Matrix2c& right) {
  return kron(right.transpose(), left);
}

/// Generator of d|rho>>/dt = L |rho>> for arbitrary theta.
inline Matrix4c build_liouvillian(const ModelParams& p) {
  const Matrix2c id = ops::identity();
  const Matrix2c h = ops::hamiltonian(p);
  const Matrix2c l = ops::jump();
  const Matrix2c ldl = l.adjoint() * l;
  const cplx minus_i{0.0, -1.0};
  Matrix4c gen = minus_i * (sandwich(h, id) - sandwich(id, h));
  gen += 2.0 * p.gamma * (p.q * sandwich(l, l.adjoint()) - 0.5 * (sandwich(ldl, id) + sandwich(id, ldl)));
  return gen;
}

/// Monic cubic x^3 + 3r x^2 + (2r^2+1) x + r(1-q) in x = lambda / J.
inline numerics::CubicCoefficients characteristic_cubic(double r, double q) {
  return {3.0 * r, 2.0 * r * r + 1.0, r * (1.0 - q)};
}

/// 4(r^2-1)^3 - 27 q^2 r^2.
inline double discriminant(double r, double q) {
  const double s = r * r - 1.0;
  return 4.0 * s * s * s - 27.0 * q * q * r * r;
}

/// Same locus in dimensional form 4(g^2-J^2)^3 - 27 q^2 g^2 J^4.
inline double discriminant_dimensional(double gamma, double J, double q) {
  const double s = gamma * gamma - J * J;
  return 4.0 * s * s * s - 27.0 * q * q * gamma * gamma * J * J * J * J;
}

struct EpLocusPoint {
  double q = 0.0;
  double r_ep = 1.0;
  double residual = 0.0;
};

/// Unique r >= 1 on the exceptional-point locus for efficiency q.
inline EpLocusPoint ep_radius(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("ep_radius: q must lie in [0, 1]");
  double lo = 1.0;
  if (discriminant(lo, q) == 0.0) return {q, lo, 0.0};
  double hi = 1.0 + std::cbrt(108.0 * q * q);
  while (discriminant(hi, q) <= 0.0) hi = 1.0 + 2.0 * (hi - 1.0);
  // Bisect to exhaustion of double precision.
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (discriminant(mid, q) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const double r = std::abs(discriminant(lo, q)) <= std::abs(discriminant(hi, q)) ? lo : hi;
  return {q, r, std::abs(discriminant(r, q))};
}

inline constexpr double kJordanGapThreshold = 1e-6;

struct SpectrumReport {
  std::array<cplx, 4> eigenvalues{};        // units of J
  bool exact_root = false;                  // -gamma is in the spectrum
  std::array<cplx, 3> cubic_roots{};        // dimensionless x = lambda / J
  std::array<bool, 3> degenerate_pairs{};   // cubic root pairs (0,1), (0,2), (1,2) closer than 1e-6
  int jordan_order = 1;                     // size of the largest coalescing cluster of cubic roots
  double discriminant = 0.0;
};

inline SpectrumReport analyze_spectrum(const ModelParams& p) {
  p.validate();
  SpectrumReport rep;
  const Matrix4c gen = build_liouvillian(p);
  rep.eigenvalues = numerics::eigenvalues_4x4(gen);

  const double scale = std::max(1.0, gen.cwiseAbs().rowwise().sum().maxCoeff());
  for (const auto& ev : rep.eigenvalues) {
    if (std::abs(ev + p.gamma) <= 1e-10 * scale) rep.exact_root = true;
  }

  const double r = p.ratio();
  const auto roots = numerics::solve_cubic_cardano(characteristic_cubic(r, p.q));
  rep.cubic_roots = roots.roots;
  const auto& x = rep.cubic_roots;
  rep.degenerate_pairs = {std::abs(x[0] - x[1]) < kJordanGapThreshold,
                          std::abs(x[0] - x[2]) < kJordanGapThreshold,
                          std::abs(x[1] - x[2]) < kJordanGapThreshold};
  const int close = static_cast<int>(rep.degenerate_pairs[0]) + static_cast<int>(rep.degenerate_pairs[1]) +
                    static_cast<int>(rep.degenerate_pairs[2]);
  rep.jordan_order = close == 0 ? 1 : (close == 1 ? 2 : 3);
  rep.discriminant = discriminant(r, p.q);
  return rep;
}

/// The three eigenvalues of `spectrum` left after removing the one closest to -gamma.
inline std::array<cplx, 3> without_exact_root(const std::array<cplx, 4>& spectrum, double gamma) {
  std::size_t drop = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = std::abs(spectrum[i] + gamma);
    if (d < best) {
      best = d;
      drop = i;
    }
  }
  std::array<cplx, 3> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (i != drop) out[k++] = spectrum[i];
  return out;
}

}  // namespace spectrum
}  // namespace hyblg

#endif  // HYBLG_SPECTRUM_HPP
