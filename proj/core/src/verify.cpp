#include "phyllo/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phyllo/linlattice.hpp"
#include "phyllo/parallel.hpp"
#include "phyllo/tessellation.hpp"

namespace phyllo {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;
constexpr double kPi = std::numbers::pi;

double uniform(SampleEngine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double perturbation_epsilon(double v) { return 1.0 / (45.0 + 10.0 * v); }

// Strictly below epsilon after rounding.
double just_below(double eps) { return eps * (1.0 - 1e-12); }

SampleOutcome worse(SampleOutcome a, SampleOutcome b) {
  return {std::min(a.margin, b.margin), a.ok && b.ok};
}

SampleOutcome upper_bound(double value, double bound, bool strict = false) {
  const bool ok = strict ? value < bound : value <= bound;
  if (bound == 0.0) return {ok ? 0.0 : -1.0, ok};
  return {(bound - value) / std::fabs(bound), ok};
}

enum CheckId : std::uint64_t {
  kGradientBound = 1,
  kGradientIdentity,
  kLipschitz,
  kCircumcenterBox,
  kEmptyDisk,
  kAdjacency,
  kContainment,
  kStrip,
  kCellSymdiff,
  kLocalPerturbation,
  kLinearizationRate,
  kConvergenceRate,
};

template <class Fn>
CheckReport aggregate(const std::string& name, CheckId id, const VerifyOptions& o, std::size_t n, Fn&& fn) {
  const auto outcomes = parallel_map(n, o.threads, [&](std::size_t i) {
    SampleEngine rng = sample_engine(o.seed, id, i);
    return fn(rng, i);
  });
  CheckReport r;
  r.name = name;
  r.seed = o.seed;
  r.samples = n;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& s : outcomes) {
    r.worst_margin = std::min(r.worst_margin, s.margin);
    if (!s.ok) ++r.violations;
  }
  r.passed = r.violations == 0 && n > 0;
  return r;
}

Displacement displacement_of(const PerturbationSample& s) {
  return [&s](std::int64_t m, std::int64_t n) {
    const auto it = s.displacement.find({m, n});
    return it == s.displacement.end() ? PlanarPoint{} : it->second;
  };
}

const std::array<PlanarPoint, 5> kGridD0 = {
    PlanarPoint{0.0, 1.0}, PlanarPoint{0.5, kSqrt3 / 2.0}, PlanarPoint{0.25, 1.2}, PlanarPoint{0.5, 2.0},
    PlanarPoint{0.0, 3.0}};

}  // namespace

PlanarPoint PerturbationSample::lattice_point(std::int64_t m, std::int64_t n) const {
  return {static_cast<double>(m) + static_cast<double>(n) * w.re, static_cast<double>(n) * w.im};
}

PlanarPoint PerturbationSample::moved(std::int64_t m, std::int64_t n) const {
  const auto it = displacement.find({m, n});
  const PlanarPoint base = lattice_point(m, n);
  return it == displacement.end() ? base : base + it->second;
}

bool in_D0(PlanarPoint w, double tol) {
  return w.re >= -tol && w.re <= 0.5 + tol && w.im >= kSqrt3 / 2.0 - tol && norm(w) >= 1.0 - tol;
}

SampleEngine sample_engine(std::uint64_t seed, std::uint64_t check_id, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(check_id), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return SampleEngine(seq);
}

PlanarPoint random_in_D0(SampleEngine& rng, double v_max) {
  const double u = uniform(rng, 0.0, 0.5);
  const double v_min = std::sqrt(1.0 - u * u);
  return {u, uniform(rng, v_min, v_max)};
}

PlanarPoint random_in_disk(SampleEngine& rng, double radius) {
  const double r = just_below(radius) * std::sqrt(uniform(rng, 0.0, 1.0));
  const double a = uniform(rng, 0.0, 2.0 * kPi);
  return {r * std::cos(a), r * std::sin(a)};
}

PerturbationSample random_local_perturbation(SampleEngine& rng, PlanarPoint w, double epsilon, double reach,
                                             bool fix_origin) {
  PerturbationSample s;
  s.w = w;
  s.epsilon = epsilon;
  s.reach = reach;
  const auto n_max = static_cast<std::int64_t>(std::ceil(reach / w.im));
  for (std::int64_t n = -n_max; n <= n_max; ++n) {
    const double center = -static_cast<double>(n) * w.re;
    const auto m_lo = static_cast<std::int64_t>(std::floor(center - reach)) - 1;
    const auto m_hi = static_cast<std::int64_t>(std::ceil(center + reach)) + 1;
    for (std::int64_t m = m_lo; m <= m_hi; ++m) {
      if (norm(s.lattice_point(m, n)) > reach) continue;
      if (fix_origin && m == 0 && n == 0) continue;
      s.displacement[{m, n}] = random_in_disk(rng, epsilon);
    }
  }
  return s;
}

SampleOutcome check_gradient_bound(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2, PlanarPoint w, double epsilon,
                                   double scale) {
  const double v = w.im;
  SampleOutcome out = upper_bound(distance(w1, w0), scale * (1.0 + 2.0 * epsilon));
  out = worse(out, upper_bound(distance(w2, w0), scale * 2.0 * v / kSqrt3 * (1.0 + 2.0 * epsilon)));
  out = worse(out, upper_bound(distance(w2, w1), scale * v / kSqrt3 * (std::sqrt(6.0) + 4.0 * epsilon)));
  out = worse(out, upper_bound(cot_gradient_norm(w0, w1, w2), scale * 7.0 / 3.0));
  return out;
}

SampleOutcome check_circumcenter_box(const PerturbationSample& s, double scale) {
  const Disk k = circumcenter(s.moved(0, 0), s.moved(1, 0), s.moved(0, 1));
  const double v = s.w.im;
  const double half = 0.25 * scale;
  const double re = k.center.re - 0.5;
  const double im = k.center.im / v - 0.5;
  const double margin = std::min(half - std::fabs(re), half - std::fabs(im)) / 0.25;
  return {margin, std::fabs(re) <= half && std::fabs(im) <= half};
}

SampleOutcome check_empty_disk(const PerturbationSample& s, std::int64_t j, std::int64_t k, double scale) {
  const Disk disk = circumcenter(s.moved(0, 0), s.moved(1, 0), s.moved(0, 1));
  const double d = distance(s.moved(j, k), disk.center);
  const double r = disk.radius / scale;
  return {(d - r) / r, d > r};
}

SampleOutcome check_adjacency_window(const PerturbationSample& s) {
  const BasisCell c = lattice_origin_cell({1.0, 0.0}, s.w, displacement_of(s), s.epsilon);
  std::int64_t worst = 0;
  for (auto [m, n] : c.neighbors) worst = std::max({worst, m < 0 ? -m : m, n < 0 ? -n : n});
  return {1.0 - static_cast<double>(worst), worst <= 1};
}

SampleOutcome check_containment(const PerturbationSample& s, double scale) {
  const BasisCell c = lattice_origin_cell({1.0, 0.0}, s.w, displacement_of(s), s.epsilon);
  double reach = 0.0;
  for (const auto& p : c.polygon.vertices) reach = std::max(reach, norm(p));
  return upper_bound(reach, scale * 0.75 * (1.0 + s.w.im), true);
}

SampleOutcome check_strip_symdiff(PlanarPoint w_prime, double epsilon, double d, double scale) {
  // Both bisectors cross the strip within eps (2d + 1) of Re = 1/2; the box
  // reaches far past that, so outside it the two half-planes agree.
  const double half_width = 4.0 + 4.0 * d;
  ConvexPolygon box = ConvexPolygon::from_vertices(
      {{-half_width, -d}, {half_width, -d}, {half_width, d}, {-half_width, d}});
  const ConvexPolygon a = clip(box, {{0.0, 0.0}, {1.0, 0.0}});
  const ConvexPolygon b = clip(box, {{0.0, 0.0}, w_prime});
  const double measured = symmetric_difference_area(a, b);
  return upper_bound(measured, scale * 4.0 * epsilon * d * (2.0 * d + 1.0), true);
}

SampleOutcome check_cell_symdiff(const PerturbationSample& s, double scale) {
  const BasisCell plain = lattice_origin_cell({1.0, 0.0}, s.w);
  const BasisCell moved = lattice_origin_cell({1.0, 0.0}, s.w, displacement_of(s), s.epsilon);
  const double v = s.w.im;
  const double measured = symmetric_difference_area(plain.polygon, moved.polygon);
  return upper_bound(measured, scale * 12.0 * s.epsilon * (1.0 + v) * (5.0 + 3.0 * v));
}

double linearization_symdiff_ratio(const SpiralConfig& cfg, double mu) {
  const LinearizationState lin = linearization(cfg, mu);
  const PlanarPoint b1 = linearization_point(cfg, mu, lin.shortest_index);
  const PlanarPoint b2 = linearization_point(cfg, mu, lin.partner_index);
  const BasisCell lattice = lattice_origin_cell(b1, b2);
  const CellRecord spiral = cell_in_set(SpiralPointSet::normalized(cfg, mu), 0);
  ConvexPolygon shifted = spiral.cell;
  for (auto& p : shifted.vertices) p = p - PlanarPoint{1.0, 0.0};
  return symmetric_difference_area(lattice.polygon, shifted) / area(lattice.polygon);
}

CheckReport run_gradient_bound(const VerifyOptions& o) {
  return aggregate("gradient_bound", kGradientBound, o, o.samples, [&](SampleEngine& rng, std::size_t i) {
    const PlanarPoint w = random_in_D0(rng);
    const double eps = 1.0 / 50.0;
    PlanarPoint d0 = random_in_disk(rng, eps), d1 = random_in_disk(rng, eps), d2 = random_in_disk(rng, eps);
    if (i % 4 == 1) {
      // Push the triangle towards degeneracy: shrink the height, widen the base.
      d0 = {-just_below(eps) / std::sqrt(2.0), just_below(eps) / std::sqrt(2.0)};
      d1 = {just_below(eps) / std::sqrt(2.0), just_below(eps) / std::sqrt(2.0)};
      d2 = {0.0, -just_below(eps)};
    }
    return check_gradient_bound(d0, PlanarPoint{1.0, 0.0} + d1, w + d2, w, eps, o.bound_scale);
  });
}

CheckReport run_gradient_identity(const VerifyOptions& o) {
  return aggregate("gradient_identity", kGradientIdentity, o, o.samples, [&](SampleEngine& rng, std::size_t) {
    PlanarPoint w0, w1, w2;
    for (;;) {
      w0 = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
      w1 = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
      w2 = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
      const double scale = std::max({distance(w0, w1), distance(w1, w2), distance(w0, w2)});
      if (std::fabs(cross(w1 - w0, w2 - w0)) > 0.1 * scale * scale) break;
    }
    const double h = 1e-6;
    const double fx = (cot_angle(w0 + PlanarPoint{h, 0}, w1, w2) - cot_angle(w0 - PlanarPoint{h, 0}, w1, w2)) / (2 * h);
    const double fy = (cot_angle(w0 + PlanarPoint{0, h}, w1, w2) - cot_angle(w0 - PlanarPoint{0, h}, w1, w2)) / (2 * h);
    const double formula = cot_gradient_norm(w0, w1, w2);
    const double rel = std::fabs(std::hypot(fx, fy) - formula) / formula;
    return upper_bound(rel, 1e-5 * o.bound_scale);
  });
}

CheckReport run_lipschitz(const VerifyOptions& o) {
  return aggregate("lipschitz", kLipschitz, o, o.samples, [&](SampleEngine& rng, std::size_t) {
    const PlanarPoint w1{1.0, 0.0};
    const PlanarPoint w2 = random_in_D0(rng);
    const PlanarPoint z = random_in_disk(rng, 0.3);
    const PlanarPoint z2 = random_in_disk(rng, 0.3);
    constexpr int kSteps = 64;
    double m0 = 0.0;
    for (int s = 0; s <= kSteps; ++s) {
      const double t = static_cast<double>(s) / kSteps;
      m0 = std::max(m0, cot_gradient_norm(z + t * (z2 - z), w1, w2));
    }
    const double change = std::fabs(cot_angle(z2, w1, w2) - cot_angle(z, w1, w2));
    return upper_bound(change, o.bound_scale * 1.05 * m0 * distance(z, z2));
  });
}

CheckReport run_circumcenter_box(const VerifyOptions& o) {
  return aggregate("circumcenter_box", kCircumcenterBox, o, o.samples, [&](SampleEngine& rng, std::size_t i) {
    const PlanarPoint w = random_in_D0(rng);
    const double eps = perturbation_epsilon(w.im);
    PerturbationSample s;
    s.w = w;
    s.epsilon = eps;
    const std::size_t style = i % 13;
    if (style == 0) {
      for (auto key : {std::pair<std::int64_t, std::int64_t>{0, 0}, {1, 0}, {0, 1}})
        s.displacement[key] = random_in_disk(rng, eps);
    } else {
      // All of the displacement on one vertex, along one axis.
      static constexpr std::array<std::pair<std::int64_t, std::int64_t>, 3> kVerts{{{0, 0}, {1, 0}, {0, 1}}};
      static constexpr std::array<PlanarPoint, 4> kDirs{{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}};
      s.displacement[kVerts[(style - 1) / 4]] = just_below(eps) * kDirs[(style - 1) % 4];
    }
    return check_circumcenter_box(s, o.bound_scale);
  });
}

CheckReport run_empty_disk(const VerifyOptions& o) {
  return aggregate("empty_disk", kEmptyDisk, o, o.samples, [&](SampleEngine& rng, std::size_t i) {
    const PlanarPoint w = random_in_D0(rng);
    const double eps = perturbation_epsilon(w.im);
    PerturbationSample s;
    s.w = w;
    s.epsilon = eps;
    const bool adversarial = i % 2 == 1;
    const Disk k0 = circumcenter({0, 0}, {1, 0}, w);
    for (std::int64_t j = -4; j <= 4; ++j) {
      for (std::int64_t k = -4; k <= 4; ++k) {
        if (!adversarial) {
          s.displacement[{j, k}] = random_in_disk(rng, eps);
          continue;
        }
        // Triangle vertices move away from the center, everything else towards it.
        const PlanarPoint p = s.lattice_point(j, k);
        const bool vertex = (j == 0 && k == 0) || (j == 1 && k == 0) || (j == 0 && k == 1);
        const PlanarPoint dir = vertex ? p - k0.center : k0.center - p;
        s.displacement[{j, k}] = (just_below(eps) / norm(dir)) * dir;
      }
    }
    SampleOutcome out{std::numeric_limits<double>::infinity(), true};
    for (std::int64_t j = -4; j <= 4; ++j)
      for (std::int64_t k = -4; k <= 4; ++k) {
        if ((j == 0 || j == 1) && (k == 0 || k == 1)) continue;
        out = worse(out, check_empty_disk(s, j, k, o.bound_scale));
      }
    return out;
  });
}

namespace {

PerturbationSample window_sample(SampleEngine& rng, std::size_t i) {
  const PlanarPoint w = kGridD0[i % kGridD0.size()];
  const double eps = perturbation_epsilon(w.im);
  return random_local_perturbation(rng, w, eps, 4.0 + 4.0 * w.im);
}

std::size_t window_samples(const VerifyOptions& o) {
  return kGridD0.size() * std::max<std::size_t>(500, o.samples / kGridD0.size());
}

}  // namespace

CheckReport run_adjacency_window(const VerifyOptions& o) {
  return aggregate("adjacency_window", kAdjacency, o, window_samples(o), [&](SampleEngine& rng, std::size_t i) {
    return check_adjacency_window(window_sample(rng, i));
  });
}

CheckReport run_containment(const VerifyOptions& o) {
  return aggregate("containment", kContainment, o, window_samples(o), [&](SampleEngine& rng, std::size_t i) {
    return check_containment(window_sample(rng, i), o.bound_scale);
  });
}

CheckReport run_strip_symdiff(const VerifyOptions& o) {
  return aggregate("strip_symdiff", kStrip, o, o.samples, [&](SampleEngine& rng, std::size_t i) {
    static constexpr std::array<double, 3> kWidths{0.5, 1.0, 2.0};
    const double eps = uniform(rng, 1e-3, 0.5);
    const PlanarPoint w_prime = PlanarPoint{1.0, 0.0} + random_in_disk(rng, eps);
    return check_strip_symdiff(w_prime, eps, kWidths[i % kWidths.size()], o.bound_scale);
  });
}

CheckReport run_cell_symdiff(const VerifyOptions& o) {
  return aggregate("cell_symdiff", kCellSymdiff, o, o.samples, [&](SampleEngine& rng, std::size_t) {
    const PlanarPoint w = random_in_D0(rng);
    const double eps = perturbation_epsilon(w.im);
    return check_cell_symdiff(random_local_perturbation(rng, w, eps, 4.0 + 4.0 * w.im, true), o.bound_scale);
  });
}

CheckReport run_local_perturbation(const VerifyOptions& o) {
  const SpiralConfig cfg = SpiralConfig::from_turns(o.alpha, o.turns);
  if (!cfg.M1()) throw std::invalid_argument("local perturbation check needs bounded partial quotients");
  const double c = taylor_constant(o.alpha);
  const double m2 = M2_from(*cfg.M1());
  const double floor = local_perturbation_floor(o.alpha, c, m2);
  return aggregate("local_perturbation", kLocalPerturbation, o, o.samples, [&](SampleEngine& rng, std::size_t) {
    const double mu = floor * std::pow(100.0, uniform(rng, 0.0, 1.0));
    const LinearizationState lin = linearization(cfg, mu);
    const double delta = lin.delta_mu;
    const double r2 = (4.0 + 4.0 * lin.v_mu) * delta;
    const double r1 = (3.0 + 3.0 * lin.v_mu) * delta;
    const double eps = *lin.epsilon_mu * delta;
    SampleOutcome out{std::numeric_limits<double>::infinity(), true};
    constexpr int kPoints = 32;
    for (int p = 0; p < kPoints; ++p) {
      const PlanarPoint zeta = random_in_disk(rng, r2);
      if (!in_strip(o.alpha, zeta)) return SampleOutcome{-1.0, false};
      const double err = distance(phi(o.alpha, zeta), PlanarPoint{1.0, 0.0} + zeta);
      out = worse(out, upper_bound(err, o.bound_scale * eps, true));
    }
    for (int p = 0; p < kPoints; ++p) {
      const double a = uniform(rng, 0.0, 2.0 * kPi);
      for (double radius : {r2, 1.5 * r2}) {
        const PlanarPoint zeta{radius * std::cos(a), radius * std::sin(a)};
        if (!in_strip(o.alpha, zeta)) return SampleOutcome{-1.0, false};
        const double reach = distance(phi(o.alpha, zeta), PlanarPoint{1.0, 0.0});
        out = worse(out, SampleOutcome{(reach - r1) / r1, reach >= r1});
      }
    }
    return out;
  });
}

CheckReport run_linearization_rate(const VerifyOptions& o) {
  const SpiralConfig cfg = SpiralConfig::from_turns(o.alpha, o.turns);
  if (!cfg.M1()) throw std::invalid_argument("linearization rate check needs bounded partial quotients");
  const double c_alpha = taylor_constant(o.alpha);
  const double m2 = M2_from(*cfg.M1());
  const double floor = std::max(local_perturbation_floor(o.alpha, c_alpha, m2), rate_bound_floor(o.alpha, c_alpha, m2));
  const double constant = rate_bound_constant(o.alpha, c_alpha, m2);
  const std::size_t n = std::min<std::size_t>(o.samples, 64);
  std::vector<double> scaled(n);
  CheckReport r = aggregate("linearization_rate", kLinearizationRate, o, n, [&](SampleEngine& rng, std::size_t i) {
    const double mu = floor * std::pow(10.0, uniform(rng, 0.0, 1.0));
    const double ratio = linearization_symdiff_ratio(cfg, mu);
    scaled[i] = ratio * std::sqrt(mu);
    return upper_bound(ratio, o.bound_scale * constant / std::sqrt(mu));
  });
  r.empirical_constant = n ? *std::max_element(scaled.begin(), scaled.end()) : 0.0;
  return r;
}

ConvergenceSummary convergence_profile(const SpiralConfig& cfg, std::int64_t j_min, std::int64_t j_max,
                                       unsigned threads) {
  if (j_min < 1) throw std::invalid_argument("convergence_profile: j_min must be >= 1");
  SweepOptions opts;
  opts.threads = threads;
  opts.keep_polygons = false;
  const auto recs = area_sweep(cfg, j_min, j_max, opts);
  const double target = 2.0 * kPi * cfg.alpha();
  ConvergenceSummary out;
  // Decades counted from j_min; a trailing partial decade joins the last full one.
  const double span = static_cast<double>(j_max) / static_cast<double>(j_min);
  const int decades = std::max(1, static_cast<int>(std::floor(std::log10(span) + 1e-12)));
  for (int d = 0; d < decades; ++d) {
    out.decade_starts.push_back(static_cast<std::int64_t>(std::llround(static_cast<double>(j_min) * std::pow(10.0, d))));
    out.decade_sup.push_back(0.0);
  }
  for (const auto& r : recs) {
    const double ratio = static_cast<double>(r.j) / static_cast<double>(j_min);
    const int d = std::min(decades - 1, static_cast<int>(std::floor(std::log10(ratio) + 1e-12)));
    const double scaled = std::sqrt(static_cast<double>(r.j)) * std::fabs(r.normalized_area / target - 1.0);
    out.decade_sup[d] = std::max(out.decade_sup[d], scaled);
    out.empirical_constant = std::max(out.empirical_constant, scaled);
  }
  return out;
}

CheckReport run_convergence_rate(const VerifyOptions& o) {
  const SpiralConfig cfg = SpiralConfig::from_turns(o.alpha, o.turns);
  const ConvergenceSummary prof = convergence_profile(cfg, o.rate_j_min, o.rate_j_max, o.threads);
  CheckReport r;
  r.name = "convergence_rate";
  r.seed = o.seed;
  r.samples = static_cast<std::size_t>(o.rate_j_max - o.rate_j_min + 1);
  r.worst_margin = std::numeric_limits<double>::infinity();
  // No upward trend: each decade's sup stays within twice the largest earlier one.
  double earlier = 0.0;
  for (std::size_t d = 0; d < prof.decade_sup.size(); ++d) {
    if (d > 0) {
      const double bound = 2.0 * o.bound_scale * earlier;
      const SampleOutcome s = upper_bound(prof.decade_sup[d], bound);
      r.worst_margin = std::min(r.worst_margin, s.margin);
      if (!s.ok) ++r.violations;
    }
    earlier = std::max(earlier, prof.decade_sup[d]);
  }
  r.passed = r.violations == 0 && prof.decade_sup.size() >= 2;
  r.empirical_constant = prof.empirical_constant;
  return r;
}

std::vector<CheckReport> run_all_checks(const VerifyOptions& o) {
  std::vector<CheckReport> out{
      run_adjacency_window(o), run_cell_symdiff(o),      run_circumcenter_box(o),   run_containment(o),
      run_convergence_rate(o), run_empty_disk(o),        run_gradient_bound(o),     run_gradient_identity(o),
      run_linearization_rate(o), run_lipschitz(o),       run_local_perturbation(o), run_strip_symdiff(o),
  };
  std::sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return out;
}

}  // namespace phyllo
