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

#ifndef HYBLG_MACROREALISM_HPP
#define HYBLG_MACROREALISM_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

#include "hyblg/errors.hpp"
#include "hyblg/lgi.hpp"
#include "hyblg/model.hpp"

namespace hyblg {
namespace macrorealism {

/// Outcome +1 maps to slot 0, -1 to slot 1.
inline std::size_t slot(int outcome) {
  if (outcome == 1) return 0;
  if (outcome == -1) return 1;
  throw InvalidArgument("outcome must be +1 or -1");
}

inline constexpr std::array<int, 2> kOutcomes{+1, -1};

using Dist1 = std::array<double, 2>;
using Dist2 = std::array<std::array<double, 2>, 2>;
using Dist3 = std::array<Dist2, 2>;

/// Single, pair and triple outcome distributions of sigma_y measured at
/// t0 = 0, t1 = t, t2 = 2t. Raw values: nothing is clamped.
struct JointProbTable {
  double t = 0.0;
  std::array<Dist1, 3> singles{};  // singles[i][slot(q_i)]
  Dist2 pair01{};                  // [slot(q0)][slot(q1)]
  Dist2 pair02{};                  // [slot(q0)][slot(q2)]
  Dist2 pair12{};                  // [slot(q1)][slot(q2)]
  Dist3 triple{};                  // [slot(q0)][slot(q1)][slot(q2)]

  double single(int time, int q) const { return singles.at(static_cast<std::size_t>(time))[slot(q)]; }

  double pair(int i, int j, int qi, int qj) const {
    if (i == 0 && j == 1) return pair01[slot(qi)][slot(qj)];
    if (i == 0 && j == 2) return pair02[slot(qi)][slot(qj)];
    if (i == 1 && j == 2) return pair12[slot(qi)][slot(qj)];
    throw InvalidArgument("pair times must be (0,1), (0,2) or (1,2)");
  }

  double triple_at(int q0, int q1, int q2) const { return triple[slot(q0)][slot(q1)][slot(q2)]; }

  /// Largest |sum - 1| over the six distributions.
  double normalization_defect() const {
    double worst = 0.0;
    for (const auto& d : singles) worst = std::max(worst, std::abs(d[0] + d[1] - 1.0));
    for (const Dist2* d : {&pair01, &pair02, &pair12}) {
      worst = std::max(worst, std::abs((*d)[0][0] + (*d)[0][1] + (*d)[1][0] + (*d)[1][1] - 1.0));
    }
    double s = 0.0;
    for (const auto& a : triple)
      for (const auto& b : a)
        for (double v : b) s += v;
    return std::max(worst, std::abs(s - 1.0));
  }
};

inline JointProbTable joint_probabilities(const ModelParams& p, double t, const lgi::EvolveConfig& cfg = {}) {
  p.validate();
  if (!(t > 0.0)) throw InvalidArgument("joint_probabilities: t must be > 0");
  const lgi::BranchStates s = lgi::evolve_branches(p, t, cfg);
  const DensityMatrix rho0 = initial_state();
  // Post-measurement states, evolved by t and 2t, indexed by slot.
  const std::array<DensityMatrix, 2> post_t{lgi::normalized_branch(s.plus_t, cfg.eps_trace, "rho_+(t)"),
                                            lgi::normalized_branch(s.minus_t, cfg.eps_trace, "rho_-(t)")};
  const std::array<DensityMatrix, 2> post_2t{lgi::normalized_branch(s.plus_2t, cfg.eps_trace, "rho_+(2t)"),
                                             lgi::normalized_branch(s.minus_2t, cfg.eps_trace, "rho_-(2t)")};
  // The prepared state is P+, so the unmeasured evolution coincides with the + branch.
  const DensityMatrix& free_t = post_t[0];
  const DensityMatrix& free_2t = post_2t[0];

  auto prob = [](const DensityMatrix& rho, int outcome) { return rho.expectation(ops::projector(outcome)).real(); };

  JointProbTable tab;
  tab.t = t;
  for (int a : kOutcomes) {
    tab.singles[0][slot(a)] = prob(rho0, a);
    tab.singles[1][slot(a)] = prob(free_t, a);
    tab.singles[2][slot(a)] = prob(free_2t, a);
  }
  for (int q0 : kOutcomes) {
    const double p0 = prob(rho0, q0);
    for (int q1 : kOutcomes) {
      const double p10 = prob(post_t[slot(q0)], q1);
      tab.pair01[slot(q0)][slot(q1)] = p10 * p0;
      for (int q2 : kOutcomes) {
        tab.triple[slot(q0)][slot(q1)][slot(q2)] = prob(post_t[slot(q1)], q2) * p10 * p0;
      }
    }
    for (int q2 : kOutcomes) tab.pair02[slot(q0)][slot(q2)] = prob(post_2t[slot(q0)], q2) * p0;
  }
  for (int q1 : kOutcomes)
    for (int q2 : kOutcomes) tab.pair12[slot(q1)][slot(q2)] = prob(post_t[slot(q1)], q2) * prob(free_t, q1);
  return tab;
}

/// Arrow-of-time defects: later measurements must not change earlier statistics.
struct AotReport {
  double aot_0_1 = 0.0;   // P(q0) vs sum_q1 P(q0,q1)
  double aot_0_2 = 0.0;   // P(q0) vs sum_q2 P(q0,q2)
  double aot_1_2 = 0.0;   // P(q1) vs sum_q2 P(q1,q2)
  double aot_01_2 = 0.0;  // P(q0,q1) vs sum_q2 P(q0,q1,q2)

  double max() const { return std::max({aot_0_1, aot_0_2, aot_1_2, aot_01_2}); }
};

inline AotReport check_aot(const JointProbTable& tab) {
  AotReport r;
  for (int a : kOutcomes) {
    double s01 = 0.0, s02 = 0.0, s12 = 0.0;
    for (int b : kOutcomes) {
      s01 += tab.pair(0, 1, a, b);
      s02 += tab.pair(0, 2, a, b);
      s12 += tab.pair(1, 2, a, b);
    }
    r.aot_0_1 = std::max(r.aot_0_1, std::abs(tab.single(0, a) - s01));
    r.aot_0_2 = std::max(r.aot_0_2, std::abs(tab.single(0, a) - s02));
    r.aot_1_2 = std::max(r.aot_1_2, std::abs(tab.single(1, a) - s12));
    for (int b : kOutcomes) {
      double s = 0.0;
      for (int c : kOutcomes) s += tab.triple_at(a, b, c);
      r.aot_01_2 = std::max(r.aot_01_2, std::abs(tab.pair(0, 1, a, b) - s));
    }
  }
  return r;
}

/// No-signalling-in-time violations, per outcome and as maxima.
struct MacrorealismReport {
  AotReport aot;
  Dist1 delta_0_1{};    // Delta_(0)1 indexed by slot(q1)
  Dist1 delta_0_2{};    // Delta_(0)2 indexed by slot(q2)
  Dist1 delta_1_2{};    // Delta_(1)2 indexed by slot(q2)
  Dist2 delta_0_1_2{};  // Delta_0(1)2 indexed by [slot(q0)][slot(q2)]
  Dist2 delta_0_12{};   // Delta_(0)12 indexed by [slot(q1)][slot(q2)]

  static double max_of(const Dist1& d) { return std::max(d[0], d[1]); }
  static double max_of(const Dist2& d) { return std::max({d[0][0], d[0][1], d[1][0], d[1][1]}); }
};

inline MacrorealismReport check_nsit(const JointProbTable& tab) {
  MacrorealismReport r;
  r.aot = check_aot(tab);
  for (int b : kOutcomes) {
    double s01 = 0.0, s02 = 0.0, s12 = 0.0;
    for (int a : kOutcomes) {
      s01 += tab.pair(0, 1, a, b);
      s02 += tab.pair(0, 2, a, b);
      s12 += tab.pair(1, 2, a, b);
    }
    r.delta_0_1[slot(b)] = std::abs(tab.single(1, b) - s01);
    r.delta_0_2[slot(b)] = std::abs(tab.single(2, b) - s02);
    r.delta_1_2[slot(b)] = std::abs(tab.single(2, b) - s12);
  }
  for (int a : kOutcomes) {
    for (int c : kOutcomes) {
      double over_q1 = 0.0;
      double over_q0 = 0.0;
      for (int m : kOutcomes) {
        over_q1 += tab.triple_at(a, m, c);
        over_q0 += tab.triple_at(m, a, c);
      }
      r.delta_0_1_2[slot(a)][slot(c)] = std::abs(tab.pair(0, 2, a, c) - over_q1);
      r.delta_0_12[slot(a)][slot(c)] = std::abs(tab.pair(1, 2, a, c) - over_q0);
    }
  }
  return r;
}

/// Probability clamped to [0, 1] for display only.
inline double clamp_probability(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace macrorealism
}  // namespace hyblg

#endif  // HYBLG_MACROREALISM_HPP
