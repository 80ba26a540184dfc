#include "phyllo/spiral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace phyllo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_turns(double t) { return t - std::floor(t + 0.5); }

std::size_t table_depth(const ContinuedFraction& cf) { return cf.depth() > 0 ? cf.depth() - 1 : 0; }

}  // namespace

SpiralConfig::SpiralConfig(double alpha, ContinuedFraction turns)
    : alpha_(alpha),
      cf_(std::move(turns)),
      frac_cf_(cf_.without_integer_part()),
      table_(frac_cf_, table_depth(frac_cf_)) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("SpiralConfig: alpha must be positive");
  constexpr Int kExact = Int{1} << 53;
  for (long i = 0; i <= static_cast<long>(table_.i_max()); ++i) {
    if (table_.q(i) > kExact || table_.p(i) > kExact) break;
    q_.push_back(static_cast<std::int64_t>(table_.q(i)));
    residues_.push_back(residue(frac_cf_, table_, i));
  }
  if (cf_.kind() != ValueKind::float_derived && !cf_.terminated() && cf_.depth() >= 1) {
    Int m = 0;
    for (std::size_t i = 1; i <= cf_.depth(); ++i) m = std::max(m, cf_.quotient(i));
    m1_ = m;
  }
}

SpiralConfig SpiralConfig::from_turns(double alpha, const QuadraticSurd& turns, std::size_t depth) {
  return SpiralConfig(alpha, cf_expand(turns, depth));
}

SpiralConfig SpiralConfig::from_turns(double alpha, double turns, std::size_t depth) {
  return SpiralConfig(alpha, cf_expand(turns, depth));
}

SpiralConfig SpiralConfig::from_radians(double alpha, double theta, std::size_t depth) {
  return SpiralConfig(alpha, cf_expand(theta / kTwoPi, depth));
}

double SpiralConfig::theta() const noexcept { return kTwoPi * cf_.value(); }

double SpiralConfig::frac_turns(std::int64_t j) const {
  if (j == 0) return 0.0;
  const bool negative = j < 0;
  // Greedy digits over the convergent denominators: j x = sum c_i (p_i + r_i).
  auto n = static_cast<std::uint64_t>(negative ? -(j + 1) : j) + (negative ? 1 : 0);
  long double sum = 0.0L;
  for (std::size_t i = q_.size(); i-- > 0 && n > 0;) {
    const auto q = static_cast<std::uint64_t>(q_[i]);
    if (q > n) continue;
    const std::uint64_t c = n / q;
    n -= c * q;
    sum += static_cast<long double>(c) * residues_[i];
  }
  double s = wrap_turns(static_cast<double>(sum - std::floor(sum)));
  if (negative) s = wrap_turns(-s);
  return s;
}

SpiralSite site(const SpiralConfig& cfg, std::int64_t j) {
  if (j < 0) throw std::invalid_argument("site: index must be nonnegative");
  if (j == 0) return {0, {}};
  const double rho = std::pow(static_cast<double>(j), cfg.alpha());
  const double ang = kTwoPi * cfg.frac_turns(j);
  return {j, {rho * std::cos(ang), rho * std::sin(ang)}};
}

PlanarPoint normalized_site(const SpiralConfig& cfg, double mu, std::int64_t j) {
  if (!(mu > 0.0)) throw std::invalid_argument("normalized_site: mu must be positive");
  if (!(static_cast<double>(j) > -mu)) throw std::domain_error("normalized_site: need j > -mu");
  const double rho = std::pow((mu + static_cast<double>(j)) / mu, cfg.alpha());
  const double ang = kTwoPi * cfg.frac_turns(j);
  return {rho * std::cos(ang), rho * std::sin(ang)};
}

SpiralPointSet::SpiralPointSet(const SpiralConfig& cfg, double mu, double scale)
    : cfg_(cfg), mu_(mu), scale_(scale), base_turns_(0.0) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw std::invalid_argument("SpiralPointSet: mu must be >= 0");
  first_ = static_cast<std::int64_t>(std::floor(-mu)) + 1;
  origin_id_ = (mu == std::floor(mu)) ? -static_cast<std::int64_t>(mu) : kDetachedOrigin;
}

SpiralPointSet SpiralPointSet::standard(const SpiralConfig& cfg) { return SpiralPointSet(cfg, 0.0, 1.0); }

SpiralPointSet SpiralPointSet::shifted(const SpiralConfig& cfg, double mu) {
  SpiralPointSet s(cfg, mu, 1.0);
  // (mu + j) x = floor(mu) x + frac(mu) x + j x
  const double whole = std::floor(mu);
  const double part = mu - whole;
  s.base_turns_ = wrap_turns(cfg.frac_turns(static_cast<std::int64_t>(whole)) + wrap_turns(part * cfg.turns()));
  return s;
}

SpiralPointSet SpiralPointSet::normalized(const SpiralConfig& cfg, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("SpiralPointSet::normalized: mu must be positive");
  return SpiralPointSet(cfg, mu, std::pow(mu, -cfg.alpha()));
}

double SpiralPointSet::modulus(std::int64_t id) const {
  if (id == origin_id_) return 0.0;
  if (id < first_) throw std::out_of_range("SpiralPointSet: index " + std::to_string(id) + " is not a site");
  return scale_ * std::pow(mu_ + static_cast<double>(id), cfg_.alpha());
}

double SpiralPointSet::turns(std::int64_t id) const {
  if (id == origin_id_) return 0.0;
  return wrap_turns(base_turns_ + cfg_.frac_turns(id));
}

PlanarPoint SpiralPointSet::position(std::int64_t id) const {
  if (id == origin_id_) return {};
  const double rho = modulus(id);
  const double ang = kTwoPi * turns(id);
  return {rho * std::cos(ang), rho * std::sin(ang)};
}

double SpiralPointSet::local_area_scale(std::int64_t id) const {
  const double t = id == origin_id_ ? 1.0 : std::max(1.0, mu_ + static_cast<double>(id));
  const double a = cfg_.alpha();
  return kTwoPi * a * scale_ * scale_ * std::pow(t, 2.0 * a - 1.0);
}

std::pair<std::int64_t, std::int64_t> SpiralPointSet::index_window(std::int64_t id, double radius) const {
  const double rho = modulus(id);
  const double inv = 1.0 / cfg_.alpha();
  const double lo_mod = std::max(0.0, rho - radius);
  const double t_lo = std::pow(lo_mod / scale_, inv) * (1.0 - 1e-12);
  const double t_hi = std::pow((rho + radius) / scale_, inv) * (1.0 + 1e-12);
  if (!(t_hi < 4e15)) throw EnclosureError("SpiralPointSet: candidate window exceeds index range");
  const auto lo = std::max(first_, static_cast<std::int64_t>(std::ceil(t_lo - mu_)));
  const auto hi = static_cast<std::int64_t>(std::floor(t_hi - mu_));
  return {lo, hi};
}

void SpiralPointSet::candidates(std::int64_t id, double radius, std::vector<Candidate>& out) const {
  const double rho0 = modulus(id);
  const double tau0 = turns(id);
  if (id != origin_id_ && rho0 <= radius) out.push_back({origin_id_, {}});

  const auto [lo, hi] = index_window(id, radius);
  if (hi - lo > 50'000'000) throw EnclosureError("SpiralPointSet: candidate window too large");
  // Any site of modulus >= rho_min at angular offset d turns is at least
  // 4 sqrt(rho_min rho0) |d| away.
  const double angular_scale = 4.0 * std::sqrt(std::max(0.0, rho0 - radius) * rho0);
  const double reach = radius * (1.0 + 1e-9);
  const double step = cfg_.frac_cf().value();
  constexpr std::int64_t kResync = 32;

  double tau = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j) {
    if ((j - lo) % kResync == 0)
      tau = turns(j);
    else
      tau = wrap_turns(tau + step);
    if (j == id) continue;
    const double d = wrap_turns(tau - tau0);
    if (angular_scale * std::fabs(d) > reach) continue;
    const double rho = scale_ * std::pow(mu_ + static_cast<double>(j), cfg_.alpha());
    const double ang = kTwoPi * tau;
    out.push_back({j, {rho * std::cos(ang), rho * std::sin(ang)}});
  }
}

std::vector<std::int64_t> candidate_indices(const SpiralConfig& cfg, std::int64_t j, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("candidate_indices: radius must be positive");
  const SpiralPointSet s = SpiralPointSet::standard(cfg);
  auto [lo, hi] = s.index_window(j, radius);
  std::vector<std::int64_t> out;
  // The origin (j = 0) sits below first_index().
  if (j != 0 && s.modulus(j) <= radius) out.push_back(0);
  for (std::int64_t k = lo; k <= hi; ++k)
    if (k != j) out.push_back(k);
  return out;
}

bool in_strip(double alpha, PlanarPoint zeta) {
  return zeta.re > -alpha && std::fabs(zeta.im) < std::numbers::pi;
}

PlanarPoint phi(double alpha, PlanarPoint zeta) {
  if (!in_strip(alpha, zeta)) throw std::domain_error("phi: point outside the strip s > -alpha, |t| < pi");
  const double rho = std::pow(1.0 + zeta.re / alpha, alpha);
  return {rho * std::cos(zeta.im), rho * std::sin(zeta.im)};
}

double taylor_constant(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("taylor_constant: alpha must be positive");
  static std::mutex mutex;
  static std::map<double, double> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
  }
  const double r_max = std::min(1.0, alpha);
  constexpr int kRadii = 400;
  constexpr int kAngles = 720;
  double sup = 0.0;
  for (int ir = 1; ir <= kRadii; ++ir) {
    const double r = r_max * ir / kRadii;
    for (int ia = 0; ia < kAngles; ++ia) {
      const double ang = kTwoPi * ia / kAngles;
      const double s = r * std::cos(ang);
      const double t = r * std::sin(ang);
      // Closure of the strip: phi(-alpha + it) = 0.
      const double rho = std::pow(std::max(0.0, 1.0 + s / alpha), alpha);
      const double dre = rho * std::cos(t) - 1.0 - s;
      const double dim = rho * std::sin(t) - t;
      sup = std::max(sup, std::hypot(dre, dim) / (r * r));
    }
  }
  const double c = 1.25 * sup;
  std::lock_guard lock(mutex);
  cache.emplace(alpha, c);
  return c;
}

LinearLattice linearized_lattice(const SpiralConfig& cfg, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("linearization: mu must be positive");
  if (cfg.rational())
    throw std::domain_error("linearization: theta/2pi is rational; parastichy theory needs an irrational divergence");
  return LinearLattice(cfg.frac_cf(), cfg.alpha() / (kTwoPi * mu));
}

PlanarPoint linearization_point(const SpiralConfig& cfg, double mu, std::int64_t j) {
  double t = cfg.frac_turns(j);
  if (t == -0.5) t = 0.5;
  return {static_cast<double>(j) * cfg.alpha() / mu, kTwoPi * t};
}

double M2_from(Int m1) { return 1.0 + 0.5 * static_cast<double>(m1); }

double epsilon_mu(double alpha, double c_alpha, double m2, double mu) {
  const double g = 4.0 + 4.0 * m2;
  return c_alpha * g * g * std::sqrt(4.0 * std::numbers::pi * alpha / (std::numbers::sqrt3 * mu));
}

double local_perturbation_floor(double alpha, double c_alpha, double m2) {
  const double g = 16.0 * c_alpha * (1.0 + m2);
  return 4.0 * std::numbers::pi * alpha / std::numbers::sqrt3 * g * g;
}

double rate_bound_floor(double alpha, double c_alpha, double m2) {
  const double a = 45.0 + 10.0 * m2;
  const double g = 4.0 + 4.0 * m2;
  return 4.0 * std::numbers::pi * alpha / std::numbers::sqrt3 * c_alpha * c_alpha * a * a * g * g * g * g;
}

double rate_bound_constant(double alpha, double c_alpha, double m2) {
  const double g = 4.0 + 4.0 * m2;
  return 12.0 * c_alpha * (15.0 + 3.0 * m2) * g * g * std::sqrt(4.0 * std::numbers::pi * alpha / std::numbers::sqrt3);
}

LinearizationState linearization(const SpiralConfig& cfg, double mu) {
  const LinearLattice lat = linearized_lattice(cfg, mu);
  LinearizationState out;
  out.mu = mu;
  out.state = parastichy_state(lat);
  const ReducedBasis rb = reduced_basis(lat);
  out.lambda_mu = linearization_point(cfg, mu, 1);
  out.delta_mu = kTwoPi * rb.delta;
  out.v_mu = rb.v;
  out.shortest_index = rb.index1.m < 0 ? -rb.index1.m : rb.index1.m;
  out.partner_index = rb.index2.m < 0 ? -rb.index2.m : rb.index2.m;
  for (const auto& f : out.state.indices) out.parastichy_numbers.push_back(static_cast<std::int64_t>(f.den));
  std::sort(out.parastichy_numbers.begin(), out.parastichy_numbers.end());
  if (cfg.M1()) {
    out.M2 = M2_from(*cfg.M1());
    out.epsilon_mu = epsilon_mu(cfg.alpha(), taylor_constant(cfg.alpha()), *out.M2, mu);
  }
  return out;
}

double mu_transition(const SpiralConfig& cfg, long i, Int k) {
  if (i < 1) throw std::invalid_argument("mu_transition: defined for i >= 1");
  const LinearLattice lat = linearized_lattice(cfg, 1.0);
  return cfg.alpha() / (kTwoPi * richards_eta(lat, i, k));
}

std::vector<std::int64_t> predicted_parastichy_numbers(const SpiralConfig& cfg, double mu) {
  const ParastichyState st = parastichy_state(linearized_lattice(cfg, mu));
  std::vector<std::int64_t> out;
  for (const auto& f : st.indices) out.push_back(static_cast<std::int64_t>(f.den));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace phyllo
