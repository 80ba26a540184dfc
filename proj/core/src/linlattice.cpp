#include "phyllo/linlattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace phyllo {

namespace {

std::size_t table_depth(const ContinuedFraction& cf) { return cf.depth() > 0 ? cf.depth() - 1 : 0; }

}  // namespace

LinearLattice::LinearLattice(ContinuedFraction cf, double y)
    : cf_(std::move(cf)), table_(cf_, table_depth(cf_)), y_(y) {
  if (!(cf_.value() > 0.0) || !(y > 0.0) || !std::isfinite(y))
    throw std::invalid_argument("LinearLattice: need x > 0 and y > 0");
}

LinearLattice LinearLattice::from_point(double x, double y, std::size_t depth) {
  return LinearLattice(cf_expand(x, depth), y);
}

PlanarPoint LinearLattice::site(std::int64_t m, std::int64_t a) const {
  return {std::fma(static_cast<double>(m), x(), -static_cast<double>(a)), static_cast<double>(m) * y_};
}

PlanarPoint LinearLattice::convergent_vector(long i, Int k) const {
  return {residue(cf_, table_, i, k), static_cast<double>(table_.q(i, k)) * y_};
}

double richards_eta(const LinearLattice& lat, long i, Int k) {
  if (i == 0 && k == 0) throw std::invalid_argument("richards_eta: (i, k) = (0, 0) has no threshold");
  const auto& t = lat.table();
  const double r_principal = residue(lat.cf(), t, i);
  const double r_inter = residue(lat.cf(), t, i, k);
  const double prod = -r_principal * r_inter;
  if (!(prod > 0.0)) {
    if (prod == 0.0) return 0.0;  // x rational and the expansion ended here
    throw std::domain_error("richards_eta: residues do not have opposite signs");
  }
  return std::sqrt(prod / (static_cast<double>(t.q(i)) * static_cast<double>(t.q(i, k))));
}

namespace {

ParastichyState make_state(const LinearLattice& lat, long i, Int k, double hi, double lo, bool on_threshold) {
  const auto& t = lat.table();
  ParastichyState s;
  s.i = i;
  s.k = k;
  s.eta_hi = hi;
  s.eta_lo = lo;
  s.indices = {t.convergent(i), t.intermediate(i, k)};
  if (on_threshold) {
    s.shape = CellShape::rectangle;
  } else {
    s.shape = CellShape::hexagon;
    s.indices.push_back(t.intermediate(i, k + 1));
  }
  std::sort(s.indices.begin(), s.indices.end());
  return s;
}

}  // namespace

ParastichyState parastichy_state(const LinearLattice& lat) {
  const double y = lat.y();
  const auto& t = lat.table();
  const long last = static_cast<long>(t.i_max());
  for (long i = 0; i <= last; ++i) {
    if (!t.has_a(i + 1)) break;
    const Int a_next = t.a(i + 1);
    for (Int k = (i == 0 ? 1 : 0); k < a_next; ++k) {
      const double hi = richards_eta(lat, i, k);
      const double lo = richards_eta(lat, i, k + 1);
      if (std::fabs(y - hi) <= kThresholdTie * hi) return make_state(lat, i, k, hi, lo, true);
      if (y > hi) {
        throw std::domain_error("parastichy_state: y = " + std::to_string(y) + " lies above eta_{0,1} = " +
                                std::to_string(hi) + "; the cell is cut by the trivial neighbors +-1");
      }
      if (y > lo * (1.0 + kThresholdTie)) return make_state(lat, i, k, hi, lo, false);
    }
  }
  if (lat.cf().terminated())
    throw std::domain_error("parastichy_state: x is rational and y is below every threshold");
  throw DepthError("parastichy_state: continued fraction exhausted before reaching y", lat.cf().reliable_depth());
}

namespace {

// Integer n with |m b1 + n b2| <= radius, for fixed m.
bool n_range(PlanarPoint b1, PlanarPoint b2, std::int64_t m, double radius, std::int64_t& lo, std::int64_t& hi) {
  const double a = norm2(b2);
  const double b = 2.0 * static_cast<double>(m) * dot(b1, b2);
  const double c = static_cast<double>(m) * static_cast<double>(m) * norm2(b1) - radius * radius;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;
  const double root = std::sqrt(disc);
  const double pad = 1e-9 * (1.0 + std::fabs(b) / a);
  lo = static_cast<std::int64_t>(std::ceil((-b - root) / (2.0 * a) - pad));
  hi = static_cast<std::int64_t>(std::floor((-b + root) / (2.0 * a) + pad));
  return lo <= hi;
}

PlanarPoint combine(PlanarPoint b1, PlanarPoint b2, std::int64_t m, std::int64_t n) {
  const double dm = static_cast<double>(m);
  const double dn = static_cast<double>(n);
  return {std::fma(dm, b1.re, dn * b2.re), std::fma(dm, b1.im, dn * b2.im)};
}

}  // namespace

BasisCell lattice_origin_cell(PlanarPoint b1, PlanarPoint b2, const Displacement& displace, double max_displacement) {
  const double det = std::fabs(cross(b1, b2));
  if (!(det > kGeomEps * norm2(b1) * 1e-6) || !(det > 0.0))
    throw std::invalid_argument("lattice_origin_cell: degenerate basis");
  const PlanarPoint site = displace ? displace(0, 0) : PlanarPoint{};
  const double slack = displace ? 2.0 * max_displacement : 0.0;

  auto source = [&](double radius, std::vector<Candidate>& out) {
    const double r = radius + slack;
    // |m| <= r |b2| / det bounds every lattice point in the disk of radius r.
    const auto m_max = static_cast<std::int64_t>(std::floor(r * norm(b2) / det)) + 1;
    for (std::int64_t m = -m_max; m <= m_max; ++m) {
      std::int64_t lo = 0, hi = -1;
      if (!n_range(b1, b2, m, r, lo, hi)) continue;
      for (std::int64_t n = lo; n <= hi; ++n) {
        if (m == 0 && n == 0) continue;
        PlanarPoint p = combine(b1, b2, m, n);
        if (displace) p = p + displace(m, n);
        out.push_back({pack_pair(m, n), p});
      }
    }
  };

  const double scale = std::max({std::sqrt(det), 4.0 * max_displacement});
  EnclosedCell cell = enclosed_voronoi_cell(site, 4.0 * scale, source);
  BasisCell out;
  out.polygon = std::move(cell.polygon);
  out.site = site;
  out.certified_radius = cell.certified_radius;
  for (auto id : cell.neighbors) out.neighbors.push_back(unpack_pair(id));
  std::sort(out.neighbors.begin(), out.neighbors.end());
  return out;
}

LatticeCell voronoi_cell_origin(const LinearLattice& lat) {
  // Sites m z - a, i.e. basis (z, -1) with coordinates (m, a).
  BasisCell bc = lattice_origin_cell(lat.z(), {-1.0, 0.0});
  LatticeCell out;
  out.polygon = std::move(bc.polygon);
  out.certified_radius = bc.certified_radius;
  for (auto [m, a] : bc.neighbors) out.neighbors.push_back({m, a});
  return out;
}

std::vector<Fraction> geometric_parastichy_indices(const LatticeCell& cell) {
  std::vector<Fraction> out;
  for (const auto& nb : cell.neighbors) {
    if (nb.m == 0) {
      out.push_back({1, 0});
      continue;
    }
    const Int sign = nb.m < 0 ? -1 : 1;
    out.push_back(Fraction::reduced(sign * nb.a, sign * nb.m));
  }
  std::sort(out.begin(), out.end(), [](const Fraction& a, const Fraction& b) {
    // 1/0 sorts last.
    if (a.den == 0 || b.den == 0) return a.den != 0 && b.den == 0;
    return a < b;
  });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Fraction& a, const Fraction& b) { return a.num == b.num && a.den == b.den; }),
            out.end());
  return out;
}

bool in_fundamental_domain(PlanarPoint w, double tol) {
  return std::fabs(w.re) <= 0.5 + tol && norm(w) >= 1.0 - tol && w.im > 0.0;
}

ReducedBasis reduced_basis(const LinearLattice& lat) {
  const ParastichyState st = parastichy_state(lat);
  const auto& t = lat.table();
  struct Vec {
    PlanarPoint p;
    LatticeSiteIndex idx;
  };
  auto make = [&](Int k) {
    return Vec{lat.convergent_vector(st.i, k),
               {static_cast<std::int64_t>(t.q(st.i, k)), static_cast<std::int64_t>(t.p(st.i, k))}};
  };
  const Vec principal{{residue(lat.cf(), t, st.i), static_cast<double>(t.q(st.i)) * lat.y()},
                      {static_cast<std::int64_t>(t.q(st.i)), static_cast<std::int64_t>(t.p(st.i))}};
  const Vec cand[3] = {principal, make(st.k), make(st.k + 1)};

  const Vec* best1 = nullptr;
  const Vec* best2 = nullptr;
  double w_im = 0.0;
  for (const Vec& v1 : cand) {
    for (const Vec& v2 : cand) {
      if (&v1 == &v2) continue;
      const std::complex<double> w = v2.p.complex() / v1.p.complex();
      const PlanarPoint wp{w};
      const bool ok = in_fundamental_domain(wp) || in_fundamental_domain(-wp);
      if (ok && (!best1 || norm(v1.p) < norm(best1->p))) {
        best1 = &v1;
        best2 = &v2;
        w_im = w.imag();
      }
    }
  }
  if (!best1) throw std::logic_error("reduced_basis: no pair of convergent vectors is reduced");
  ReducedBasis rb;
  rb.lambda1 = best1->p;
  rb.lambda2 = best2->p;
  rb.index1 = best1->idx;
  rb.index2 = best2->idx;
  rb.v = std::fabs(w_im);
  rb.delta = norm(rb.lambda1);
  const double covolume = rb.v * rb.delta * rb.delta;
  if (std::fabs(covolume - lat.y()) > 1e-10 * lat.y())
    throw std::logic_error("reduced_basis: pair does not span the lattice (v delta^2 = " + std::to_string(covolume) +
                           ")");
  return rb;
}

}  // namespace phyllo
