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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hyblg/lgi.hpp"
#include "hyblg/macrorealism.hpp"
#include "support.hpp"

namespace hyblg {
namespace {

using lgi::EvolveConfig;
using lgi::OptimizeConfig;

ModelParams make(double gamma, double q, double J = 1.0) {
  ModelParams p;
  p.J = J;
  p.gamma = gamma;
  p.q = q;
  return p;
}

double unitary_k3(double t) { return 2.0 * std::cos(t) - std::cos(2.0 * t); }

TEST(Correlators, UnitaryClosedForm) {
  const auto p = make(0.0, 1.0);
  for (double t : {0.1, 0.5, 1.0, 2.0, 3.0, 4.5}) {
    const auto rec = lgi::correlators(p, t);
    EXPECT_NEAR(rec.C01, std::cos(t), 1e-12);
    EXPECT_NEAR(rec.C12, std::cos(t), 1e-12);
    EXPECT_NEAR(rec.C02, std::cos(2 * t), 1e-12);
    EXPECT_NEAR(rec.K3, unitary_k3(t), 1e-12);
  }
}

TEST(Correlators, ShortTimeLimit) {
  const auto rec = lgi::correlators(make(0.8, 0.3), 1e-6);
  EXPECT_NEAR(rec.C01, 1.0, 1e-5);
  EXPECT_NEAR(rec.C12, 1.0, 1e-5);
  EXPECT_NEAR(rec.C02, 1.0, 1e-5);
  EXPECT_NEAR(rec.K3, 1.0, 1e-5);
}

TEST(Correlators, RejectsNonPositiveTime) { EXPECT_THROW(lgi::correlators(make(0.5, 0.5), 0.0), InvalidArgument); }

TEST(Correlators, EngineCrossValidation) {
  EvolveConfig rk4;
  rk4.method = dynamics::Method::rk4;
  rk4.dt = 1e-4;
  const auto p = make(0.9905, 1.0);
  const auto a = lgi::correlators(p, 1.0);
  const auto b = lgi::correlators(p, 1.0, rk4);
  EXPECT_NEAR(a.C01, b.C01, 1e-7);
  EXPECT_NEAR(a.C12, b.C12, 1e-7);
  EXPECT_NEAR(a.C02, b.C02, 1e-7);
  EXPECT_NEAR(a.K3, b.K3, 1e-7);
}

TEST(Correlators, ExtinctionNamesBranch) {
  EvolveConfig cfg;
  cfg.eps_trace = 0.5;
  try {
    lgi::correlators(make(3.0, 0.0), 2.0, cfg);
    FAIL() << "expected extinction";
  } catch (const TrajectoryExtinguished& e) {
    EXPECT_FALSE(e.branch().empty());
    EXPECT_NE(std::string(e.what()).find(e.branch()), std::string::npos);
  }
}

TEST(K3, ReferenceValues) {
  const auto p = make(0.0, 1.0);
  EXPECT_NEAR(lgi::k3(p, std::numbers::pi / 3), 1.5, 1e-12);
  EXPECT_NEAR(lgi::k3(p, std::numbers::pi), -3.0, 1e-12);
}

TEST(K3, StrongViolationWithoutJumps) {
  const auto opt = lgi::optimize_k3(make(0.9905, 0.0));
  EXPECT_GT(opt.k3_max, 2.5);
  EXPECT_LE(opt.k3_max, 3.0);
}

TEST(Optimize, UnitaryOptimum) {
  const auto opt = lgi::optimize_k3(make(0.0, 1.0));
  EXPECT_NEAR(opt.k3_max, 1.5, 1e-6);
  EXPECT_NEAR(opt.t_star, std::numbers::pi / 3, 1e-4);
}

TEST(Optimize, LudersBoundAtUnitEfficiency) {
  const auto opt = lgi::optimize_k3(make(5.0, 1.0));
  EXPECT_LE(opt.k3_max, 1.5 + 1e-9);
}

TEST(Optimize, DominatesGrid) {
  const auto p = make(0.6, 0.05);
  OptimizeConfig cfg;
  cfg.resolution = 400;
  const auto opt = lgi::optimize_k3(p, cfg);
  const double h = cfg.horizon(p) / 400.0;
  for (int i = 1; i <= 400; ++i) ASSERT_GE(opt.k3_max, lgi::k3(p, h * i)) << i;
}

TEST(Optimize, MasksWhenEverythingFails) {
  OptimizeConfig cfg;
  cfg.evolve.eps_trace = 10.0;  // no trace ever reaches it
  cfg.resolution = 10;
  const auto opt = lgi::optimize_k3(make(0.5, 0.5), cfg);
  EXPECT_TRUE(opt.masked);
  EXPECT_FALSE(opt.error.empty());
  EXPECT_TRUE(std::isnan(opt.k3_max));
}

TEST(Optimize, Deterministic) {
  const auto p = make(1.3, 0.01);
  const auto a = lgi::optimize_k3(p);
  const auto b = lgi::optimize_k3(p);
  EXPECT_EQ(a.k3_max, b.k3_max);
  EXPECT_EQ(a.t_star, b.t_star);
}

TEST(Grids, LinAndLog) {
  const auto lin = lgi::linspace(0.0, 1.0, 5);
  EXPECT_EQ(lin, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  const auto lg = lgi::logspace(1e-6, 1.0, 7);
  ASSERT_EQ(lg.size(), 7u);
  EXPECT_EQ(lg.front(), 1e-6);
  EXPECT_EQ(lg.back(), 1.0);
  for (std::size_t i = 0; i < 7; ++i) EXPECT_NEAR(std::log10(lg[i]), -6.0 + static_cast<double>(i), 1e-12);
  EXPECT_THROW(lgi::logspace(0.0, 1.0, 3), InvalidArgument);
  EXPECT_THROW(lgi::linspace(0.0, 1.0, 0), InvalidArgument);
}

TEST(Sweep, SingleCellEqualsOptimizer) {
  const auto p = make(0.4, 0.2);
  const auto res = lgi::sweep({0.4}, {0.2}, p);
  const auto opt = lgi::optimize_k3(p);
  ASSERT_EQ(res.cells.size(), 1u);
  EXPECT_EQ(res.at(0, 0).result.k3_max, opt.k3_max);
  EXPECT_EQ(res.at(0, 0).result.t_star, opt.t_star);
}

TEST(Sweep, WorkerCountDoesNotChangeOutput) {
  OptimizeConfig cfg;
  cfg.resolution = 300;
  const std::vector<double> gs{0.2, 0.9, 1.7};
  const std::vector<double> qs{1e-4, 0.1, 1.0};
  const auto a = lgi::sweep(gs, qs, ModelParams{}, cfg, 1);
  const auto b = lgi::sweep(gs, qs, ModelParams{}, cfg, 4);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    EXPECT_EQ(a.cells[i].gamma, b.cells[i].gamma);
    EXPECT_EQ(a.cells[i].q, b.cells[i].q);
    EXPECT_EQ(a.cells[i].result.k3_max, b.cells[i].result.k3_max);
    EXPECT_EQ(a.cells[i].result.t_star, b.cells[i].result.t_star);
  }
  EXPECT_EQ(a.at(1, 2).gamma, 0.9);
  EXPECT_EQ(a.at(1, 2).q, 1.0);
}

TEST(Sweep, UnitEfficiencyColumnObeysLuders) {
  OptimizeConfig cfg;
  cfg.resolution = 500;
  const auto res = lgi::sweep(lgi::linspace(0.05, 5.0, 8), {1.0}, ModelParams{}, cfg, 4);
  for (const auto& c : res.cells) EXPECT_LE(c.result.k3_max, 1.5 + 1e-9) << c.gamma;
}

TEST(Sweep, FragilityRowNonIncreasing) {
  OptimizeConfig cfg;
  const auto res = lgi::sweep({0.9905}, lgi::logspace(1e-6, 1.0, 13), ModelParams{}, cfg, 4);
  for (std::size_t i = 1; i < res.cells.size(); ++i) {
    EXPECT_LE(res.cells[i].result.k3_max, res.cells[i - 1].result.k3_max + 1e-9) << res.cells[i].q;
  }
}

TEST(Sweep, RejectsEmptyGrid) { EXPECT_THROW(lgi::sweep({}, {1.0}, ModelParams{}), InvalidArgument); }

TEST(LgiProperty, RecordInvariants) {
  testing::Gen gen(51);
  for (int n = 0; n < 100; ++n) {
    const ModelParams p = gen.params();
    const double t = gen.uniform(1e-3, 10.0);
    const auto r = lgi::correlators(p, t);
    ASSERT_NEAR(r.p_plus + r.p_minus, 1.0, 1e-10);
    for (double c : {r.C01, r.C12, r.C02}) ASSERT_LE(std::abs(c), 1.0 + 1e-9);
    ASSERT_EQ(r.K3, r.C01 + r.C12 - r.C02);
    ASSERT_GE(r.K3, -3.0);
    ASSERT_LE(r.K3, 3.0);
  }
}

TEST(LgiProperty, ShortTimeLimit) {
  testing::Gen gen(52);
  for (int n = 0; n < 100; ++n) ASSERT_NEAR(lgi::k3(gen.params(), 1e-4), 1.0, 1e-6);
}

TEST(LgiProperty, EngineIndependence) {
  testing::Gen gen(53);
  EvolveConfig rk4;
  rk4.method = dynamics::Method::rk4;
  rk4.dt = 1e-4;
  for (int n = 0; n < 20; ++n) {
    const ModelParams p = gen.params();
    const double t = gen.uniform(0.05, 4.0);
    const auto a = lgi::correlators(p, t);
    const auto b = lgi::correlators(p, t, rk4);
    ASSERT_NEAR(a.C01, b.C01, 1e-7);
    ASSERT_NEAR(a.C12, b.C12, 1e-7);
    ASSERT_NEAR(a.C02, b.C02, 1e-7);
    ASSERT_NEAR(a.p_plus, b.p_plus, 1e-7);
  }
}

TEST(LgiProperty, LudersBoundAtUnitEfficiency) {
  testing::Gen gen(54);
  OptimizeConfig cfg;
  cfg.resolution = 600;
  for (int n = 0; n < 10; ++n) {
    ModelParams p = make(gen.uniform(0.0, 5.0), 1.0);
    ASSERT_LE(lgi::optimize_k3(p, cfg).k3_max, 1.5 + 1e-9) << p.gamma;
  }
}

// C12 = sum_{a,b} a b P(q1 = a, q2 = b) from the joint-probability module.
TEST(LgiProperty, C12FromJointProbabilities) {
  testing::Gen gen(55);
  for (int n = 0; n < 100; ++n) {
    const ModelParams p = gen.params();
    const double t = gen.uniform(0.01, 5.0);
    const auto tab = macrorealism::joint_probabilities(p, t);
    double c12 = 0.0;
    for (int a : macrorealism::kOutcomes)
      for (int b : macrorealism::kOutcomes) c12 += a * b * tab.pair(1, 2, a, b);
    ASSERT_NEAR(c12, lgi::correlators(p, t).C12, 1e-10);
  }
}

}  // namespace
}  // namespace hyblg
