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

// K3 of the closed system (gamma = 0) against the textbook curve
// 2 cos(Jt) - cos(2Jt); the maximum 3/2 sits at Jt = pi/3.

#include <cmath>
#include <cstdio>

#include "hyblg/hyblg.hpp"

int main() {
  hyblg::ModelParams p;
  p.J = 1.0;
  p.gamma = 0.0;
  p.q = 1.0;
  std::printf("t,k3,k3_textbook\n");
  for (int i = 1; i <= 40; ++i) {
    const double t = 0.1 * i;
    std::printf("%.3f,%.12f,%.12f\n", t, hyblg::lgi::k3(p, t), 2.0 * std::cos(t) - std::cos(2.0 * t));
  }
  const auto best = hyblg::lgi::optimize_k3(p);
  std::printf("# k3_max=%.15f t_star=%.15f (pi/3=%.15f)\n", best.k3_max, best.t_star, std::acos(-1.0) / 3.0);
  return 0;
}
