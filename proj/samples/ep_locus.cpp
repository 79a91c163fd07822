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

// Exceptional-point ratio r = gamma/J as the detector efficiency drops from
// the Lindblad limit to pure post-selection.

#include <cstdio>

#include "hyblg/hyblg.hpp"

int main() {
  std::printf("q,r_ep,residual\n");
  for (int i = 0; i <= 10; ++i) {
    const auto pt = hyblg::spectrum::ep_radius(0.1 * i);
    std::printf("%.1f,%.15f,%.3e\n", pt.q, pt.r_ep, pt.residual);
  }
  return 0;
}
