// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "phyllo/diophantine.hpp"
#include "phyllo/linlattice.hpp"
#include "phyllo/spiral.hpp"
#include "phyllo/tessellation.hpp"
#include "phyllo/verify.hpp"
#include "support/oracles.hpp"

using namespace phyllo;

namespace {

// Tolerances.
constexpr double kLimitTol = 0.05;          // criteria 1, 2
constexpr double kTrendRatio = 1.0 / 3.0;   // criterion 1
constexpr double kDecadeGrowth = 2.0;       // criterion 2, "no upward trend"
constexpr double kAreaIdentityTol = 1e-9;   // criterion 3
constexpr double kThresholdGap = 1e-6;      // criterion 4
constexpr double kGradientTol = 1e-5;       // criterion 7
constexpr double kGradientStep = 1e-6;
constexpr double kScalingTol = 1e-6;        // criterion 8

constexpr std::uint64_t kSeed = 20240601;
constexpr double kPi = std::numbers::pi;

SpiralConfig golden(double alpha) { return SpiralConfig::from_turns(alpha, golden_ratio()); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %d %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_dev(const std::vector<CellRecord>& cells, std::int64_t lo, std::int64_t hi, double limit) {
  double m = 0.0;
  for (const auto& c : cells)
    if (c.j >= lo && c.j <= hi) m = std::max(m, std::fabs(c.normalized_area / limit - 1.0));
  return m;
}

Outcome fermat_limit() {
  const auto cells = area_sweep(golden(0.5), 1, 10000, SweepOptions{0, false});
  const double high = max_dev(cells, 9000, 10000, kPi);
  const double low = max_dev(cells, 90, 110, kPi);
  const bool pass = high <= kLimitTol && high <= kTrendRatio * low;
  return {pass, fmt("max|area/pi-1| on [9000,10000] = %.4g (<= %.2g); on [90,110] = %.4g; ratio %.3g (<= %.3g)", high,
                    kLimitTol, low, high / low, kTrendRatio)};
}

Outcome normalized_limits() {
  bool pass = true;
  std::string detail;
  for (double alpha : {1.0, 0.5, 0.25}) {
    const double limit = 2 * kPi * alpha;
    const auto cells = area_sweep(golden(alpha), 100, 10000, SweepOptions{0, false});
    const double high = max_dev(cells, 9000, 10000, limit);
    // sup sqrt(j)|dev| per decade
    double sup1 = 0.0, sup2 = 0.0;
    for (const auto& c : cells) {
      const double s = std::sqrt(static_cast<double>(c.j)) * std::fabs(c.normalized_area / limit - 1.0);
      (c.j < 1000 ? sup1 : sup2) = std::max(c.j < 1000 ? sup1 : sup2, s);
    }
    const bool ok = high <= kLimitTol && sup2 <= kDecadeGrowth * sup1;
    pass = pass && ok;
    detail += fmt("%salpha=%g: max dev %.4g, decade sup sqrt(j)|dev| %.3g -> %.3g", detail.empty() ? "" : "; ", alpha,
                  high, sup1, sup2);
  }
  return {pass, detail};
}

Outcome area_identity() {
  std::mt19937_64 rng(kSeed + 3);
  std::uniform_real_distribution<double> ux(0.0, 1.0), ly(std::log(1e-3), std::log(0.5));
  double worst = 0.0;
  for (int n = 0; n < 500; ++n) {
    const double x = ux(rng), y = std::exp(ly(rng));
    const double a = area(voronoi_cell_origin(LinearLattice::from_point(x, y)).polygon);
    worst = std::max(worst, std::fabs(a - y) / y);
  }
  return {worst <= kAreaIdentityTol, fmt("500 lattices, worst relative error %.3g (<= %.0e)", worst, kAreaIdentityTol)};
}

Outcome parastichy_prediction() {
  std::mt19937_64 rng(kSeed + 4);
  std::uniform_real_distribution<double> ux(0.0, 1.0), ly(std::log(1e-3), std::log(0.5));
  int tested = 0, agree = 0, by_i0 = 0;
  while (tested < 200) {
    const double x = ux(rng), y = std::exp(ly(rng));
    const auto lat = LinearLattice::from_point(x, y);
    ParastichyState st;
    try {
      st = parastichy_state(lat);
    } catch (const std::domain_error&) {
      continue;  // above every threshold
    }
    if (std::fabs(y - st.eta_hi) < kThresholdGap || std::fabs(y - st.eta_lo) < kThresholdGap) continue;
    ++tested;
    by_i0 += st.i == 0;
    const auto geo = geometric_parastichy_indices(voronoi_cell_origin(lat));
    bool same = geo.size() == st.indices.size();
    for (std::size_t k = 0; same && k < geo.size(); ++k)
      same = geo[k].num == st.indices[k].num && geo[k].den == st.indices[k].den;
    agree += same;
  }
  return {agree == tested, fmt("%d/%d lattices agree (%d in the i = 0 regime)", agree, tested, by_i0)};
}

Outcome farey_oracle() {
  std::mt19937_64 rng(kSeed + 5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  long checks = 0, mismatches = 0;
  auto eq = [](const Fraction& f, const oracle::Frac& g) { return f.num == g.num && f.den == g.den; };
  for (int n = 0; n < 200; ++n) {
    const double x = u(rng);
    for (Int k = 1; k <= 50; ++k) {
      const auto [lo, hi] = oracle::farey_neighbors(x, static_cast<oracle::i64>(k));
      const auto fi = farey_interval_containing(x, k);
      const auto inside = oracle::fractions_between(lo, hi, static_cast<oracle::i64>(fi.left.den + fi.right.den));
      const bool ok = eq(fi.left, lo) && eq(fi.right, hi) && inside.size() == 1 &&
                      eq(mediant(fi.left, fi.right), inside[0]) &&
                      eq(best_approximation(x, Side::left, k), oracle::best_one_sided(x, true, static_cast<oracle::i64>(k))) &&
                      eq(best_approximation(x, Side::right, k), oracle::best_one_sided(x, false, static_cast<oracle::i64>(k)));
      ++checks;
      mismatches += !ok;
    }
  }
  return {mismatches == 0, fmt("%ld (x, order) pairs, %ld mismatches", checks, mismatches)};
}

Outcome perturbation_bounds() {
  VerifyOptions o;
  o.seed = kSeed;
  o.samples = 1000;
  const std::vector<std::function<CheckReport(const VerifyOptions&)>> suites = {
      run_gradient_bound, run_circumcenter_box, run_empty_disk, run_adjacency_window,
      run_containment,    run_strip_symdiff,    run_cell_symdiff};
  bool pass = true;
  std::string detail;
  for (const auto& suite : suites) {
    const CheckReport r = suite(o);
    pass = pass && r.passed && r.violations == 0 && r.samples >= 1000;
    detail += fmt("%s%s %zu/%zu margin %.3g", detail.empty() ? "" : "; ", r.name.c_str(), r.violations, r.samples,
                  r.worst_margin);
  }
  return {pass, detail};
}

Outcome gradient_identity() {
  std::mt19937_64 rng(kSeed + 7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int tested = 0;
  double worst = 0.0;
  while (tested < 1000) {
    const PlanarPoint a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double s = std::max({norm(b - a), norm(c - a), norm(c - b)});
    if (std::fabs(cross(b - a, c - a)) < 1e-2 * s * s) continue;
    ++tested;
    const double fd = oracle::cot_gradient_fd({a.re, a.im}, {b.re, b.im}, {c.re, c.im}, kGradientStep * s);
    worst = std::max(worst, std::fabs(cot_gradient_norm(a, b, c) - fd) / fd);
  }
  return {worst <= kGradientTol, fmt("1000 triangles, worst relative gap %.3g (<= %.0e)", worst, kGradientTol)};
}

Outcome scaling_identity() {
  std::mt19937_64 rng(kSeed + 8);
  std::uniform_real_distribution<double> lmu(std::log(10.0), std::log(1e4));
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 0.25}) {
    const auto cfg = golden(alpha);
    for (int n = 0; n < 20; ++n) {
      const double mu = std::exp(lmu(rng));
      const double lhs = cell_in_set(SpiralPointSet::shifted(cfg, mu), 0).area;
      const double rhs = std::pow(mu, 2 * alpha) * cell_in_set(SpiralPointSet::normalized(cfg, mu), 0).area;
      worst = std::max(worst, std::fabs(lhs - rhs) / lhs);
    }
  }
  return {worst <= kScalingTol, fmt("20 mu in [10, 1e4] per alpha in {1/2, 1, 1/4}, worst relative gap %.3g (<= %.0e)",
                                    worst, kScalingTol)};
}

}  // namespace

int main() {
  report(1, "Fermat limit", fermat_limit);
  report(2, "normalized limits", normalized_limits);
  report(3, "area identity", area_identity);
  report(4, "parastichy prediction", parastichy_prediction);
  report(5, "Farey oracle equivalence", farey_oracle);
  report(6, "perturbation bounds", perturbation_bounds);
  report(7, "gradient identity", gradient_identity);
  report(8, "scaling identity", scaling_identity);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
