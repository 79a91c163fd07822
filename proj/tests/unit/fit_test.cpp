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
#include <fstream>
#include <regex>
#include <sstream>

#include "hyblg/fit.hpp"
#include "hyblg/lgi.hpp"
#include "support.hpp"

#ifndef HYBLG_COEFFICIENT_SOURCE
#define HYBLG_COEFFICIENT_SOURCE ""
#endif

namespace hyblg {
namespace {

using fit::LogBase;

// Parses the coefficient table rows "n & $v$ & $v$ & $v$ & $v$ \\" from the
// LaTeX source; the first complete 0..20 block wins.
bool parse_table(const std::string& path, fit::FitCoefficients& out) {
  std::ifstream in(path);
  if (!in) return false;
  const std::regex row(R"(^\s*(\d+)\s*&(.*)\\\\)");
  const std::regex cell(R"(\$([+-]?[0-9.]+)(?:\\times\s*10\^\{([+-]?\d+)\})?\$)");
  std::array<bool, fit::kTerms> seen{};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_search(line, m, row)) continue;
    const std::size_t n = std::stoul(m[1]);
    if (n >= fit::kTerms || seen[n]) continue;
    const std::string rest = m[2];
    std::vector<double> vals;
    for (auto it = std::sregex_iterator(rest.begin(), rest.end(), cell); it != std::sregex_iterator(); ++it) {
      const int ex = (*it)[2].matched ? std::stoi((*it)[2]) : 0;
      vals.push_back(std::stod((*it)[1].str() + "e" + std::to_string(ex)));
    }
    if (vals.size() != 4) continue;
    out.a[n] = vals[0];
    out.b[n] = vals[1];
    out.c[n] = vals[2];
    out.d[n] = vals[3];
    seen[n] = true;
    if (std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) return true;
  }
  return false;
}

TEST(Coefficients, MatchPublishedTable) {
  fit::FitCoefficients parsed;
  if (!parse_table(HYBLG_COEFFICIENT_SOURCE, parsed)) GTEST_SKIP() << "source table not available";
  const auto& k = fit::published_coefficients();
  for (std::size_t n = 0; n < fit::kTerms; ++n) {
    EXPECT_EQ(k.a[n], parsed.a[n]) << n;
    EXPECT_EQ(k.b[n], parsed.b[n]) << n;
    EXPECT_EQ(k.c[n], parsed.c[n]) << n;
    EXPECT_EQ(k.d[n], parsed.d[n]) << n;
  }
}

TEST(Coefficients, SpotAnchors) {
  const auto& k = fit::published_coefficients();
  EXPECT_EQ(k.a[0], 6.2848e-1);
  EXPECT_EQ(k.b[0], -4.9415e-1);
  EXPECT_EQ(k.c[0], 1.7521);
  EXPECT_EQ(k.d[0], 8.7271e-1);
}

TEST(Coefficients, FileRoundTripIsExact) {
  std::stringstream ss;
  fit::write_coefficients(ss, fit::published_coefficients());
  EXPECT_EQ(fit::read_coefficients(ss), fit::published_coefficients());
}

TEST(Coefficients, RejectsIncompleteFile) {
  std::stringstream ss("n,a,b,c,d\n0,1,2,3,4\n");
  EXPECT_THROW(fit::read_coefficients(ss), InvalidArgument);
  std::stringstream bad("x,y\n");
  EXPECT_THROW(fit::read_coefficients(bad), InvalidArgument);
}

TEST(EvalPolynomials, AtZeroGivesConstantTerms) {
  const auto f = fit::eval_polynomials(0.0);
  EXPECT_EQ(f.A, 0.62848);
  EXPECT_EQ(f.B, -0.49415);
  EXPECT_EQ(f.C, 1.7521);
  EXPECT_EQ(f.D, 0.87271);
}

TEST(EvalPolynomials, AtOneGivesColumnSums) {
  const auto& k = fit::published_coefficients();
  double sa = 0.0;
  for (double v : k.a) sa += v;
  // gamma = 1 lies in the excluded band.
  EXPECT_THROW(fit::eval_polynomials(1.0), OutOfDomain);
  EXPECT_NEAR(fit::eval_polynomials(1.0, k, true).A, sa, 1e-12 * std::abs(sa) + 1e-12);
}

TEST(EvalPolynomials, DomainEdges) {
  EXPECT_NO_THROW(fit::eval_polynomials(0.999));
  EXPECT_THROW(fit::eval_polynomials(1.5), OutOfDomain);
  EXPECT_THROW(fit::eval_polynomials(2.0), OutOfDomain);
  EXPECT_NO_THROW(fit::eval_polynomials(2.001));
  EXPECT_NO_THROW(fit::eval_polynomials(5.0));
  EXPECT_THROW(fit::eval_polynomials(5.001), OutOfDomain);
  EXPECT_THROW(fit::eval_polynomials(-0.1), OutOfDomain);
}

TEST(EvalPolynomialsProperty, HornerMatchesNaiveSum) {
  testing::Gen gen(71);
  const auto& k = fit::published_coefficients();
  for (int n = 0; n < 500; ++n) {
    const double g = gen.uniform(0.0, 5.0);
    for (const auto* p : {&k.a, &k.b, &k.c, &k.d}) {
      const double h = fit::horner(*p, g);
      const double s = fit::naive_sum(*p, g);
      // Relative to the term magnitudes; cancellation is severe for large gamma.
      double mag = 0.0;
      for (std::size_t i = 0; i < fit::kTerms; ++i) mag += std::abs((*p)[i]) * std::pow(g, static_cast<double>(i));
      ASSERT_LE(std::abs(h - s), 1e-9 * std::max(std::abs(s), 1e-6 * mag)) << g;
    }
  }
}

TEST(EvalFit, UnitEfficiency) {
  const auto f = fit::eval_polynomials(0.5);
  EXPECT_NEAR(fit::eval_fit(0.5, 1.0).value, f.A * std::tanh(f.C) + f.D, 1e-15);
}

TEST(EvalFit, SaturatesAtZeroEfficiency) {
  for (double g : {0.1, 0.5, 0.9, 3.0}) {
    const auto f = fit::eval_polynomials(g);
    const auto v = fit::eval_fit(g, 0.0);
    EXPECT_TRUE(v.saturated);
    EXPECT_EQ(v.value, f.B > 0 ? f.D - f.A : f.D + f.A);
    // Approaches the asymptote from small q.
    EXPECT_NEAR(fit::eval_fit(g, 1e-300).value, v.value, 1e-6);
  }
}

TEST(EvalFit, LogBaseMatters) {
  EXPECT_NE(fit::eval_fit(0.5, 1e-3, fit::published_coefficients(), LogBase::ten).value,
            fit::eval_fit(0.5, 1e-3, fit::published_coefficients(), LogBase::e).value);
  EXPECT_EQ(fit::parse_log_base("e"), LogBase::e);
  EXPECT_EQ(fit::parse_log_base("10"), LogBase::ten);
  EXPECT_THROW(fit::parse_log_base("2"), InvalidArgument);
}

TEST(EvalFit, AgreesWithComputedLandscape) {
  ModelParams p;
  p.gamma = 0.5;
  p.q = 1e-4;
  const double computed = lgi::optimize_k3(p).k3_max;
  EXPECT_LE(std::abs(fit::eval_fit(0.5, 1e-4).value - computed), 0.1);
}

// tanh(B log q + C) is monotone in q with the sign of A B.
TEST(EvalFitProperty, MonotoneWithFixedSign) {
  for (const double g : lgi::linspace(0.05, 0.95, 19)) {
    const auto f = fit::eval_polynomials(g);
    const double sgn = f.A * f.B;
    const auto qs = lgi::logspace(1e-6, 1.0, 40);
    for (std::size_t i = 1; i < qs.size(); ++i) {
      const double d = fit::eval_fit(g, qs[i]).value - fit::eval_fit(g, qs[i - 1]).value;
      ASSERT_GE(d * sgn, -1e-15) << g;
    }
  }
}

TEST(Residuals, SelfTestIsZero) {
  std::vector<fit::LandscapePoint> pts;
  for (double g : {0.1, 0.5, 2.5, 4.0})
    for (double q : {1e-5, 1e-2, 1.0}) pts.push_back({g, q, fit::eval_fit(g, q).value, false});
  const auto rep = fit::residual_report(pts);
  EXPECT_EQ(rep.summary.included, pts.size());
  EXPECT_EQ(rep.summary.max, 0.0);
  for (const auto& r : rep.rows) EXPECT_EQ(r.region, fit::Region::region1);
}

TEST(Residuals, ExcludedBandAndMasking) {
  std::vector<fit::LandscapePoint> pts{{1.5, 0.1, 2.0, false}, {0.5, 0.1, 0.0, true}, {0.5, 0.1, 1.0, false}};
  const auto rep = fit::residual_report(pts);
  EXPECT_EQ(rep.rows[0].region, fit::Region::excluded);
  EXPECT_EQ(rep.rows[1].region, fit::Region::masked);
  EXPECT_EQ(rep.summary.excluded, 1u);
  EXPECT_EQ(rep.summary.masked, 1u);
  EXPECT_EQ(rep.summary.included, 1u);
}

TEST(Residuals, Classification) {
  EXPECT_EQ(fit::classify(5e-3), fit::Region::region1);
  EXPECT_EQ(fit::classify(5e-2), fit::Region::region2);
  EXPECT_EQ(fit::classify(0.5), fit::Region::outside);
}

TEST(Residuals, Quantiles) {
  EXPECT_EQ(fit::quantile({3, 1, 2}, 0.5), 2.0);
  EXPECT_EQ(fit::quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_TRUE(std::isnan(fit::quantile({}, 0.5)));
}

TEST(BaseSelection, PrefersStrictWinner) {
  // Landscape generated with the natural log: e must win.
  std::vector<fit::LandscapePoint> pts;
  for (double g : {0.2, 0.6})
    for (double q : {1e-5, 1e-3, 1e-1}) {
      pts.push_back({g, q, fit::eval_fit(g, q, fit::published_coefficients(), LogBase::e).value, false});
    }
  EXPECT_EQ(fit::select_log_base(pts).chosen, LogBase::e);
  for (auto& pt : pts) pt.k3 = fit::eval_fit(pt.gamma, pt.q, fit::published_coefficients(), LogBase::ten).value;
  EXPECT_EQ(fit::select_log_base(pts).chosen, LogBase::ten);
}

}  // namespace
}  // namespace hyblg
