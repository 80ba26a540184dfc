#pragma once

// Spiral lattices z_j = j^alpha e^{i j theta}, their shifted and normalized
// variants, and the linear lattice that approximates them near index mu.

#include <cstdint>
#include <optional>
#include <vector>

#include "phyllo/diophantine.hpp"
#include "phyllo/enclosure.hpp"
#include "phyllo/geom.hpp"
#include "phyllo/linlattice.hpp"

namespace phyllo {

/// (alpha, theta) with theta = 2 pi x and the continued fraction of x.
class SpiralConfig {
 public:
  SpiralConfig(double alpha, ContinuedFraction turns);

  /// theta = 2 pi * surd, expanded exactly.
  static SpiralConfig from_turns(double alpha, const QuadraticSurd& turns, std::size_t depth = 80);
  /// theta = 2 pi * turns with a float-derived expansion.
  static SpiralConfig from_turns(double alpha, double turns, std::size_t depth = 64);
  static SpiralConfig from_radians(double alpha, double theta, std::size_t depth = 64);

  double alpha() const noexcept { return alpha_; }
  double theta() const noexcept;
  /// theta / 2 pi
  double turns() const noexcept { return cf_.value(); }
  const ContinuedFraction& turns_cf() const noexcept { return cf_; }
  /// Expansion of frac(theta / 2 pi).
  const ContinuedFraction& frac_cf() const noexcept { return frac_cf_; }
  const ConvergentTable& table() const noexcept { return table_; }
  /// Largest partial quotient when the expansion is exact (quadratic or periodic).
  std::optional<Int> M1() const noexcept { return m1_; }
  bool rational() const noexcept { return cf_.terminated(); }

  /// j x - round(j x) in [-1/2, 1/2), reduced through the convergents.
  double frac_turns(std::int64_t j) const;

 private:
  double alpha_;
  ContinuedFraction cf_;
  ContinuedFraction frac_cf_;
  ConvergentTable table_;
  std::vector<std::int64_t> q_;    // principal denominators that fit in 62 bits
  std::vector<double> residues_;  // q_i x - p_i
  std::optional<Int> m1_;
};

struct SpiralSite {
  std::int64_t j = 0;
  PlanarPoint pos;
};

SpiralSite site(const SpiralConfig& cfg, std::int64_t j);

/// (1 + j/mu)^alpha e^{i j theta}; requires j > -mu.
PlanarPoint normalized_site(const SpiralConfig& cfg, double mu, std::int64_t j);

/// S (mu = 0), S_mu, or Sigma_mu. Regular sites are indexed by integers j with
/// mu + j > 0; the origin is a site too and has id `origin_id()`.
class SpiralPointSet {
 public:
  static SpiralPointSet standard(const SpiralConfig& cfg);
  static SpiralPointSet shifted(const SpiralConfig& cfg, double mu);
  static SpiralPointSet normalized(const SpiralConfig& cfg, double mu);

  const SpiralConfig& config() const noexcept { return cfg_; }
  double mu() const noexcept { return mu_; }
  std::int64_t first_index() const noexcept { return first_; }
  std::int64_t origin_id() const noexcept { return origin_id_; }
  bool is_origin(std::int64_t id) const noexcept { return id == origin_id_; }

  double modulus(std::int64_t id) const;
  /// Argument / 2 pi in [-1/2, 1/2).
  double turns(std::int64_t id) const;
  PlanarPoint position(std::int64_t id) const;
  /// Area per site near `id`, from the asymptotic density.
  double local_area_scale(std::int64_t id) const;

  /// Regular indices whose modulus is within `radius` of the modulus of `id`.
  std::pair<std::int64_t, std::int64_t> index_window(std::int64_t id, double radius) const;
  /// Every site within `radius` of site `id` (superset), excluding `id`.
  void candidates(std::int64_t id, double radius, std::vector<Candidate>& out) const;

  static constexpr std::int64_t kDetachedOrigin = INT64_MIN / 4;

 private:
  SpiralPointSet(const SpiralConfig& cfg, double mu, double scale);

  SpiralConfig cfg_;
  double mu_;
  double scale_;       // modulus = scale * (mu + j)^alpha
  double base_turns_;  // turns of the j = 0 site relative to j x
  std::int64_t first_;
  std::int64_t origin_id_;
};

std::vector<std::int64_t> candidate_indices(const SpiralConfig& cfg, std::int64_t j, double radius);

/// The map (1 + s/alpha)^alpha e^{it} on {s > -alpha, |t| < pi}. It sends the
/// linearization point lambda_{mu,j} to the normalized site z_{mu,j}.
PlanarPoint phi(double alpha, PlanarPoint zeta);
bool in_strip(double alpha, PlanarPoint zeta);

/// Certified C with |phi(zeta) - 1 - zeta| <= C |zeta|^2 on |zeta| <= min(1, alpha).
double taylor_constant(double alpha);

struct LinearizationState {
  double mu = 0.0;
  PlanarPoint lambda_mu;  // alpha/mu + 2 pi i <theta/2pi>, nearest-integer branch
  double delta_mu = 0.0;
  double v_mu = 0.0;
  std::optional<double> M2;
  std::optional<double> epsilon_mu;
  ParastichyState state;  // of the equivalent LinearLattice
  std::int64_t shortest_index = 0;  // m with |lambda_{mu,m}| = delta_mu
  std::int64_t partner_index = 0;
  std::vector<std::int64_t> parastichy_numbers;  // sorted
};

/// The linear lattice Lambda_mu is the image of LinearLattice(frac x, alpha/(2 pi mu))
/// under zeta -> 2 pi i conj(zeta).
LinearLattice linearized_lattice(const SpiralConfig& cfg, double mu);

/// lambda_{mu,j} = j alpha / mu + 2 pi i <j x>.
PlanarPoint linearization_point(const SpiralConfig& cfg, double mu, std::int64_t j);

LinearizationState linearization(const SpiralConfig& cfg, double mu);

/// mu_{i,k} = alpha / (2 pi eta_{i,k}); i >= 1, 0 <= k <= a_{i+1}.
double mu_transition(const SpiralConfig& cfg, long i, Int k);

/// Parastichy numbers predicted for index mu: {q_i, q_{i,k}, q_{i,k+1}}, or two
/// numbers when mu sits on a transition.
std::vector<std::int64_t> predicted_parastichy_numbers(const SpiralConfig& cfg, double mu);

double M2_from(Int m1);
/// Linearization error scale at mu.
double epsilon_mu(double alpha, double c_alpha, double m2, double mu);
/// mu above which phi - 1 is a local perturbation of Lambda_mu.
double local_perturbation_floor(double alpha, double c_alpha, double m2);
/// mu above which the symmetric-difference rate bound holds.
double rate_bound_floor(double alpha, double c_alpha, double m2);
/// C in |V(0,Lambda) sym V(0, phi(..)-1)| / |V(0,Lambda)| <= C / sqrt(mu).
double rate_bound_constant(double alpha, double c_alpha, double m2);

}  // namespace phyllo
