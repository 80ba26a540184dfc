#pragma once

// Randomized certification of the perturbation bounds and of the area
// convergence law. Every sample draws from its own engine seeded by
// (seed, check, sample index), so reports do not depend on thread count.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "phyllo/geom.hpp"
#include "phyllo/spiral.hpp"

namespace phyllo {

/// A lattice Z + wZ with w in D0 = {0 <= u <= 1/2, v >= sqrt(3)/2, |w| >= 1}
/// and displacements of norm < epsilon for the points m + n w with
/// |m + n w| <= reach. Points outside the map stay fixed.
struct PerturbationSample {
  PlanarPoint w;
  double epsilon = 0.0;
  double reach = 0.0;
  std::map<std::pair<std::int64_t, std::int64_t>, PlanarPoint> displacement;

  PlanarPoint lattice_point(std::int64_t m, std::int64_t n) const;
  PlanarPoint moved(std::int64_t m, std::int64_t n) const;
};

bool in_D0(PlanarPoint w, double tol = 1e-12);

/// Margin: relative slack of the bound (negative means violated).
struct SampleOutcome {
  double margin = 0.0;
  bool ok = true;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_margin = 0.0;
  std::uint64_t seed = 0;
  /// Measured rate constant, for the checks that estimate one.
  std::optional<double> empirical_constant;
};

struct VerifyOptions {
  std::uint64_t seed = 2024;
  std::size_t samples = 1000;
  unsigned threads = 0;
  /// Multiplies every bound; values below 1 tighten the bounds (failure-path testing).
  double bound_scale = 1.0;
  double alpha = 0.5;
  QuadraticSurd turns = golden_ratio();
  std::int64_t rate_j_min = 100;
  std::int64_t rate_j_max = 10000;
};

using SampleEngine = std::mt19937_64;
SampleEngine sample_engine(std::uint64_t seed, std::uint64_t check_id, std::uint64_t index);

PlanarPoint random_in_D0(SampleEngine& rng, double v_max = 4.0);
PlanarPoint random_in_disk(SampleEngine& rng, double radius);

/// Displaces every lattice point within `reach` of the origin by < epsilon.
PerturbationSample random_local_perturbation(SampleEngine& rng, PlanarPoint w, double epsilon, double reach,
                                             bool fix_origin = false);

// Single-sample checks. `scale` multiplies the bound being tested.
SampleOutcome check_gradient_bound(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2, PlanarPoint w, double epsilon,
                                   double scale = 1.0);
SampleOutcome check_circumcenter_box(const PerturbationSample& s, double scale = 1.0);
SampleOutcome check_empty_disk(const PerturbationSample& s, std::int64_t j, std::int64_t k, double scale = 1.0);
SampleOutcome check_adjacency_window(const PerturbationSample& s);
SampleOutcome check_containment(const PerturbationSample& s, double scale = 1.0);
SampleOutcome check_strip_symdiff(PlanarPoint w_prime, double epsilon, double d, double scale = 1.0);
SampleOutcome check_cell_symdiff(const PerturbationSample& s, double scale = 1.0);

/// Ratio |V(0, Lambda_mu) sym (V(1, Sigma_mu) - 1)| / |V(0, Lambda_mu)|.
double linearization_symdiff_ratio(const SpiralConfig& cfg, double mu);

// Aggregate checks.
CheckReport run_gradient_bound(const VerifyOptions& o);
CheckReport run_gradient_identity(const VerifyOptions& o);
CheckReport run_lipschitz(const VerifyOptions& o);
CheckReport run_circumcenter_box(const VerifyOptions& o);
CheckReport run_empty_disk(const VerifyOptions& o);
CheckReport run_adjacency_window(const VerifyOptions& o);
CheckReport run_containment(const VerifyOptions& o);
CheckReport run_strip_symdiff(const VerifyOptions& o);
CheckReport run_cell_symdiff(const VerifyOptions& o);
CheckReport run_local_perturbation(const VerifyOptions& o);
CheckReport run_linearization_rate(const VerifyOptions& o);
CheckReport run_convergence_rate(const VerifyOptions& o);

/// Every check, ordered by name.
std::vector<CheckReport> run_all_checks(const VerifyOptions& o);

struct ConvergenceSummary {
  std::vector<std::int64_t> decade_starts;
  std::vector<double> decade_sup;  // sup sqrt(j) |dev| per decade
  double empirical_constant = 0.0;
};

/// dev(j) = |normalized_area / (2 pi alpha) - 1| over the sweep, grouped by decade.
ConvergenceSummary convergence_profile(const SpiralConfig& cfg, std::int64_t j_min, std::int64_t j_max,
                                       unsigned threads = 0);

}  // namespace phyllo
