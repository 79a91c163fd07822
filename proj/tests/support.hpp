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

// Deterministic generators and independent oracles shared by the suites.

#ifndef HYBLG_TESTS_SUPPORT_HPP
#define HYBLG_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "hyblg/model.hpp"
#include "hyblg/numerics.hpp"

namespace hyblg::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed = 20260418) : eng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }

  // Log-uniform on [lo, hi], both > 0.
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  cplx complex_in_disk(double radius) {
    const double r = radius * std::sqrt(uniform(0.0, 1.0));
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, phi);
  }

  // Positive semidefinite 2x2 matrix with trace in [0.1, 2].
  DensityMatrix density() {
    Matrix2c a;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) = cplx(uniform(-1, 1), uniform(-1, 1));
    Matrix2c rho = a * a.adjoint();
    rho *= uniform(0.1, 2.0) / rho.trace().real();
    return DensityMatrix(rho);
  }

  ModelParams params(double gamma_max = 3.0) {
    ModelParams p;
    p.gamma = uniform(0.0, gamma_max);
    p.q = uniform(0.0, 1.0);
    return p;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

inline double max_abs(const Matrix2c& a, const Matrix2c& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Scaling-and-squaring Taylor series, written independently of Eigen's Pade code.
template <int N>
ComplexMatrix<N> taylor_expm(const ComplexMatrix<N>& m, double t) {
  ComplexMatrix<N> a = m * t;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.25) ++squarings;
  a /= std::ldexp(1.0, squarings);
  ComplexMatrix<N> term = ComplexMatrix<N>::Identity();
  ComplexMatrix<N> sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

/// Unitary rotation from |+y> at theta = pi/2: (Sy, Sz) = (cos Jt, -sin Jt).
inline double unitary_sy(double J, double t) { return std::cos(J * t); }
inline double unitary_sz(double J, double t) { return -std::sin(J * t); }

}  // namespace hyblg::testing

#endif  // HYBLG_TESTS_SUPPORT_HPP
