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

#ifndef HYBLG_FIT_HPP
#define HYBLG_FIT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyblg/errors.hpp"
#include "hyblg/lgi.hpp"

// Universal landscape K3_max(g, q) = A(g) tanh(B(g) log q + C(g)) + D(g)
// with degree-20 polynomials A..D from the published coefficient table.

namespace hyblg {
namespace fit {

inline constexpr std::size_t kTerms = 21;
using Poly = std::array<double, kTerms>;  // index n multiplies gamma^n

struct FitCoefficients {
  Poly a{};
  Poly b{};
  Poly c{};
  Poly d{};

  friend bool operator==(const FitCoefficients&, const FitCoefficients&) = default;
};

inline const FitCoefficients& published_coefficients() {
  static const FitCoefficients table{
      {+6.2848e-1, -4.5638, +2.8757e1, -8.5770e1, +1.2011e2, -3.5672e1, -5.3469e1, -1.8958e1, +3.3930e1, +6.0866e1,
       +2.9117e1, -3.4865e1, -7.6905e1, -5.8861e1, +1.1570e1, +7.9796e1, +9.6074e1, +2.7423e1, -9.1780e1, -1.3767e2,
       +1.1125e2},
      {-4.9415e-1, +1.9172e-1, -2.1947, -5.1790, +5.0647e1, -6.9839e1, -8.1141e1, +1.5617e2, +5.8249e1, -4.2615e1,
       -5.0256e1, -6.9025e1, -9.0190e1, -6.9937e1, +1.8094e2, +2.6833e2, -3.1101e1, -8.2974e1, -1.5270e2, -1.8439e2,
       +2.1707e2},
      {+1.7521, -2.9259e1, +1.9281e2, -8.1818e2, +1.8487e3, -1.6438e3, -9.1085e2, +1.8993e3, +6.5620e2, -6.3958e2,
       -8.8019e2, -7.0012e2, -1.3577e2, +9.7489e2, +9.5807e2, +2.4773e2, -4.4073e2, -7.7988e2, -3.6510e2, +3.9330e2,
       +1.6410e2},
      {+8.7271e-1, +4.8657, -2.7083e1, +7.6357e1, -7.9859e1, -4.6756e1, +1.2943e2, +2.6552e1, -9.2305e1, -6.9517e1,
       +1.6402e1, +7.2005e1, +4.8539e1, +2.0108, -2.0942e1, -5.7441e1, -4.8891e1, +4.1577e1, -1.7906e1, +1.1761e2,
       -7.3519e1}};
  return table;
}

enum class LogBase { ten, e };

inline std::string_view to_string(LogBase b) { return b == LogBase::ten ? "10" : "e"; }

inline LogBase parse_log_base(std::string_view s) {
  if (s == "10") return LogBase::ten;
  if (s == "e") return LogBase::e;
  throw InvalidArgument("log base must be '10' or 'e'");
}

// ln q tracks computed landscapes far better than log10 q; see select_log_base.
inline constexpr LogBase kDefaultLogBase = LogBase::e;

inline double log_in(LogBase base, double q) { return base == LogBase::ten ? std::log10(q) : std::log(q); }

/// gamma in [0, 1) or (2, 5]; the band [1, 2] was left out of the fit.
inline bool in_domain(double gamma) { return (gamma >= 0.0 && gamma < 1.0) || (gamma > 2.0 && gamma <= 5.0); }

inline bool in_excluded_band(double gamma) { return gamma >= 1.0 && gamma <= 2.0; }

inline double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t n = kTerms; n-- > 0;) acc = acc * x + p[n];
  return acc;
}

inline double naive_sum(const Poly& p, double x) {
  double acc = 0.0;
  for (std::size_t n = 0; n < kTerms; ++n) acc += p[n] * std::pow(x, static_cast<double>(n));
  return acc;
}

struct Profile {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
};

inline Profile eval_polynomials(double gamma, const FitCoefficients& k = published_coefficients(),
                                bool allow_extrapolation = false) {
  if (!std::isfinite(gamma)) throw InvalidArgument("gamma must be finite");
  if (!allow_extrapolation && !in_domain(gamma)) {
    throw OutOfDomain("gamma = " + std::to_string(gamma) + " is outside the fit domain [0,1) u (2,5]");
  }
  return {horner(k.a, gamma), horner(k.b, gamma), horner(k.c, gamma), horner(k.d, gamma)};
}

struct FitValue {
  double value = 0.0;
  bool saturated = false;  // q = 0: tanh taken at its asymptote
};

inline FitValue eval_fit(double gamma, double q, const FitCoefficients& k = published_coefficients(),
                         LogBase base = kDefaultLogBase, bool allow_extrapolation = false) {
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("q must lie in [0, 1]");
  const Profile f = eval_polynomials(gamma, k, allow_extrapolation);
  if (q == 0.0) {
    // log q -> -inf, so the tanh argument tends to -sign(B) infinity.
    const double lim = f.B > 0.0 ? -1.0 : (f.B < 0.0 ? 1.0 : std::tanh(f.C));
    return {f.A * lim + f.D, true};
  }
  return {f.A * std::tanh(f.B * log_in(base, q) + f.C) + f.D, false};
}

enum class Region { region1, region2, outside, excluded, masked };

inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::region1:
      return "region1";
    case Region::region2:
      return "region2";
    case Region::outside:
      return "outside";
    case Region::excluded:
      return "excluded";
    case Region::masked:
      return "masked";
  }
  return "?";
}

/// region1 below 1e-2, region2 in [1e-2, 1e-1), outside from 1e-1 up.
inline Region classify(double residual) {
  if (residual < 1e-2) return Region::region1;
  if (residual < 1e-1) return Region::region2;
  return Region::outside;
}

/// One computed landscape value.
struct LandscapePoint {
  double gamma = 0.0;
  double q = 0.0;
  double k3 = 0.0;
  bool masked = false;
};

struct ResidualRow {
  double gamma = 0.0;
  double q = 0.0;
  double k3_computed = 0.0;
  double k3_fit = std::numeric_limits<double>::quiet_NaN();
  double residual = std::numeric_limits<double>::quiet_NaN();
  Region region = Region::excluded;
};

struct ResidualSummary {
  std::size_t included = 0;
  std::size_t excluded = 0;
  std::size_t masked = 0;
  std::array<std::size_t, 3> region_counts{};  // region1, region2, outside
  double median = std::numeric_limits<double>::quiet_NaN();
  double p90 = std::numeric_limits<double>::quiet_NaN();
  double max = std::numeric_limits<double>::quiet_NaN();
};

struct ResidualReport {
  LogBase base = kDefaultLogBase;
  std::vector<ResidualRow> rows;
  ResidualSummary summary;
};

/// Nearest-rank quantile of an unsorted sample.
inline double quantile(std::vector<double> v, double f) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = f * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = static_cast<std::size_t>(std::ceil(pos));
  return v[lo] + (v[hi] - v[lo]) * (pos - static_cast<double>(lo));
}

inline ResidualReport residual_report(std::span<const LandscapePoint> points,
                                      const FitCoefficients& k = published_coefficients(),
                                      LogBase base = kDefaultLogBase) {
  ResidualReport rep;
  rep.base = base;
  std::vector<double> residuals;
  for (const auto& pt : points) {
    ResidualRow row;
    row.gamma = pt.gamma;
    row.q = pt.q;
    row.k3_computed = pt.k3;
    if (!in_domain(pt.gamma)) {
      row.region = Region::excluded;
      ++rep.summary.excluded;
    } else if (pt.masked || !std::isfinite(pt.k3)) {
      row.region = Region::masked;
      ++rep.summary.masked;
    } else {
      row.k3_fit = eval_fit(pt.gamma, pt.q, k, base).value;
      row.residual = std::abs(row.k3_fit - pt.k3);
      if (!std::isfinite(row.residual)) row.residual = std::numeric_limits<double>::infinity();
      row.region = classify(row.residual);
      ++rep.summary.region_counts[static_cast<std::size_t>(row.region)];
      ++rep.summary.included;
      residuals.push_back(row.residual);
    }
    rep.rows.push_back(row);
  }
  if (!residuals.empty()) {
    rep.summary.median = quantile(residuals, 0.5);
    rep.summary.p90 = quantile(residuals, 0.9);
    rep.summary.max = *std::max_element(residuals.begin(), residuals.end());
  }
  return rep;
}

inline std::vector<LandscapePoint> landscape_points(const lgi::SweepResult& s) {
  std::vector<LandscapePoint> pts;
  pts.reserve(s.cells.size());
  for (const auto& c : s.cells) pts.push_back({c.gamma, c.q, c.result.k3_max, c.result.masked});
  return pts;
}

inline ResidualReport residual_report(const lgi::SweepResult& s, const FitCoefficients& k = published_coefficients(),
                                      LogBase base = kDefaultLogBase) {
  const auto pts = landscape_points(s);
  return residual_report(std::span<const LandscapePoint>(pts), k, base);
}

struct BaseSelection {
  LogBase chosen = LogBase::ten;
  double median_ten = std::numeric_limits<double>::quiet_NaN();
  double median_e = std::numeric_limits<double>::quiet_NaN();
};

/// Residual medians under both bases. Base 10 is kept unless ln strictly wins.
inline BaseSelection select_log_base(std::span<const LandscapePoint> points,
                                     const FitCoefficients& k = published_coefficients()) {
  BaseSelection sel;
  sel.median_ten = residual_report(points, k, LogBase::ten).summary.median;
  sel.median_e = residual_report(points, k, LogBase::e).summary.median;
  sel.chosen = (sel.median_e < sel.median_ten) ? LogBase::e : LogBase::ten;
  return sel;
}

/// CSV "n,a,b,c,d" with round-trip exact formatting.
inline void write_coefficients(std::ostream& os, const FitCoefficients& k) {
  os << "n,a,b,c,d\n";
  char buf[160];
  for (std::size_t n = 0; n < kTerms; ++n) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", n, k.a[n], k.b[n], k.c[n], k.d[n]);
    os << buf;
  }
}

inline FitCoefficients read_coefficients(std::istream& is) {
  FitCoefficients k;
  std::string line;
  if (!std::getline(is, line) || line.rfind("n,a,b,c,d", 0) != 0) {
    throw InvalidArgument("coefficient file must start with header n,a,b,c,d");
  }
  std::array<bool, kTerms> seen{};
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::array<std::string, 5> f;
    for (auto& s : f) {
      if (!std::getline(row, s, ',')) throw InvalidArgument("malformed coefficient row: " + line);
    }
    const std::size_t n = std::stoul(f[0]);
    if (n >= kTerms) throw InvalidArgument("coefficient index out of range: " + f[0]);
    k.a[n] = std::stod(f[1]);
    k.b[n] = std::stod(f[2]);
    k.c[n] = std::stod(f[3]);
    k.d[n] = std::stod(f[4]);
    seen[n] = true;
  }
  for (bool s : seen)
    if (!s) throw InvalidArgument("coefficient file is missing rows");
  return k;
}

}  // namespace fit
}  // namespace hyblg

#endif  // HYBLG_FIT_HPP
