#pragma once

// Reference implementations used only by the tests. None of them calls into
// the library's clipping, enclosure or continued-fraction code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using i64 = std::int64_t;

struct Frac {
  i64 num = 0;
  i64 den = 1;
  friend bool operator==(const Frac&, const Frac&) = default;
};

inline Frac reduce(i64 n, i64 d) {
  const i64 g = std::gcd(n < 0 ? -n : n, d);
  return {n / g, d / g};
}

inline bool less(const Frac& a, const Frac& b) { return a.num * b.den < b.num * a.den; }

/// Neighbors of x in the Farey series of order k: max floor(m x)/m and min ceil(m x)/m.
inline std::pair<Frac, Frac> farey_neighbors(long double x, i64 k) {
  Frac left{static_cast<i64>(std::floor(x)), 1};
  Frac right{left.num + 1, 1};
  for (i64 m = 1; m <= k; ++m) {
    const Frac lo{static_cast<i64>(std::floor(m * x)), m};
    const Frac hi{static_cast<i64>(std::ceil(m * x)), m};
    if (less(left, lo)) left = lo;
    if (less(hi, right)) right = hi;
  }
  return {reduce(left.num, left.den), reduce(right.num, right.den)};
}

/// Every reduced fraction with denominator <= k strictly between lo and hi.
inline std::vector<Frac> fractions_between(const Frac& lo, const Frac& hi, i64 k) {
  std::vector<Frac> out;
  for (i64 m = 1; m <= k; ++m) {
    for (i64 a = lo.num * m / lo.den - 1; a <= hi.num * m / hi.den + 1; ++a) {
      const Frac f{a, m};
      if (std::gcd(a < 0 ? -a : a, m) != 1) continue;
      if (less(lo, f) && less(f, hi)) out.push_back(f);
    }
  }
  return out;
}

/// One-sided best approximation by minimizing |q x - p| over q <= bound.
inline Frac best_one_sided(long double x, bool left, i64 bound) {
  Frac best{};
  long double best_gap = INFINITY;
  for (i64 q = 1; q <= bound; ++q) {
    const i64 p = left ? static_cast<i64>(std::floor(q * x)) : static_cast<i64>(std::ceil(q * x));
    const long double gap = std::fabs(q * x - p);
    if (gap < best_gap) {
      best_gap = gap;
      best = reduce(p, q);
    }
  }
  return best;
}

/// q_i x - p_i for x = golden ratio: (-1)^i tau^-(i+1).
inline long double golden_residue(int i) {
  const long double tau = (1.0L + std::sqrt(5.0L)) / 2.0L;
  return (i % 2 == 0 ? 1.0L : -1.0L) * std::pow(tau, -(i + 1.0L));
}

/// q_i x - p_i for x = sqrt 2: (-1)^i (sqrt2 - 1)^(i+1).
inline long double sqrt2_residue(int i) {
  return (i % 2 == 0 ? 1.0L : -1.0L) * std::pow(std::sqrt(2.0L) - 1.0L, i + 1.0L);
}

inline std::vector<i64> fibonacci(int n) {
  std::vector<i64> f{1, 1};
  while (static_cast<int>(f.size()) < n) f.push_back(f[f.size() - 1] + f[f.size() - 2]);
  return f;
}

struct P {
  double x = 0.0;
  double y = 0.0;
};

inline double dist(P a, P b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Spiral site j^alpha e^{2 pi i j t} with the angle reduced in long double.
inline P spiral_site(double alpha, long double turns, i64 j, long double mu = 0.0L) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double f = static_cast<long double>(j) * turns;
  f -= std::floor(f);
  const long double r = std::pow(mu + static_cast<long double>(j), static_cast<long double>(alpha));
  return {static_cast<double>(r * std::cos(2.0L * pi * f)), static_cast<double>(r * std::sin(2.0L * pi * f))};
}

struct Cell {
  std::vector<P> vertices;  // counter-clockwise
  std::vector<std::size_t> neighbors;  // indices into the site list
  double area = 0.0;
  bool certified = false;
};

/// Voronoi cell of `site` by vertex enumeration over the `nearest` closest
/// sites: every pairwise bisector intersection that no site beats is kept.
/// Certified when the next site beyond those used is farther than twice the
/// farthest vertex.
inline Cell brute_cell(P site, const std::vector<P>& others, std::size_t nearest = 40) {
  std::vector<std::size_t> order(others.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return dist(others[a], site) < dist(others[b], site); });
  const std::size_t n = std::min(nearest, order.size());
  Cell cell;
  struct Vert {
    P p;
    std::size_t a, b;
  };
  std::vector<Vert> verts;
  const double scale = dist(others[order[0]], site);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = s + 1; t < n; ++t) {
      const P A = others[order[s]];
      const P B = others[order[t]];
      // |v - site|^2 = |v - A|^2 and = |v - B|^2: two linear equations.
      const double a1 = 2 * (A.x - site.x), b1 = 2 * (A.y - site.y);
      const double c1 = A.x * A.x + A.y * A.y - site.x * site.x - site.y * site.y;
      const double a2 = 2 * (B.x - site.x), b2 = 2 * (B.y - site.y);
      const double c2 = B.x * B.x + B.y * B.y - site.x * site.x - site.y * site.y;
      const double det = a1 * b2 - a2 * b1;
      if (std::fabs(det) < 1e-14 * scale * scale) continue;
      const P v{(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
      const double d0 = dist(v, site);
      bool ok = true;
      for (std::size_t u = 0; u < n && ok; ++u)
        if (dist(v, others[order[u]]) < d0 * (1.0 - 1e-11)) ok = false;
      if (ok) verts.push_back({v, order[s], order[t]});
    }
  }
  if (verts.size() < 3) return cell;
  // Sort by angle about the site, merge coincident vertices.
  std::sort(verts.begin(), verts.end(), [&](const Vert& a, const Vert& b) {
    return std::atan2(a.p.y - site.y, a.p.x - site.x) < std::atan2(b.p.y - site.y, b.p.x - site.x);
  });
  double dmax = 0.0;
  for (const auto& v : verts) {
    if (!cell.vertices.empty() && dist(v.p, cell.vertices.back()) < 1e-9 * scale) continue;
    cell.vertices.push_back(v.p);
    dmax = std::max(dmax, dist(v.p, site));
  }
  if (cell.vertices.size() > 1 && dist(cell.vertices.front(), cell.vertices.back()) < 1e-9 * scale)
    cell.vertices.pop_back();
  double a2 = 0.0;
  for (std::size_t k = 0; k < cell.vertices.size(); ++k) {
    const P p = cell.vertices[k];
    const P q = cell.vertices[(k + 1) % cell.vertices.size()];
    a2 += (p.x - site.x) * (q.y - site.y) - (q.x - site.x) * (p.y - site.y);
  }
  cell.area = 0.5 * a2;
  // Neighbors: sites whose bisector carries an edge of positive length, i.e.
  // two distinct cell vertices are equidistant from it and the site.
  for (std::size_t u = 0; u < n; ++u) {
    const P A = others[order[u]];
    int on = 0;
    for (const auto& v : cell.vertices) {
      const double d0 = dist(v, site);
      if (std::fabs(dist(v, A) - d0) <= 1e-9 * scale) ++on;
    }
    if (on >= 2) cell.neighbors.push_back(order[u]);
  }
  std::sort(cell.neighbors.begin(), cell.neighbors.end());
  cell.certified = n < order.size() && dist(others[order[n]], site) > 2.0 * dmax;
  return cell;
}

/// Sites m z - a of the lattice zZ + Z within `radius` of the origin, origin excluded.
inline std::vector<std::pair<std::pair<i64, i64>, P>> lattice_sites(double x, double y, double radius) {
  std::vector<std::pair<std::pair<i64, i64>, P>> out;
  const i64 m_max = static_cast<i64>(std::ceil(radius / y));
  for (i64 m = -m_max; m <= m_max; ++m) {
    const long double mx = static_cast<long double>(m) * x;
    for (i64 a = static_cast<i64>(std::floor(mx - radius)) - 1; a <= static_cast<i64>(std::ceil(mx + radius)) + 1; ++a) {
      if (m == 0 && a == 0) continue;
      const P p{static_cast<double>(mx - a), static_cast<double>(m * static_cast<long double>(y))};
      if (std::hypot(p.x, p.y) <= radius) out.push_back({{m, a}, p});
    }
  }
  return out;
}

/// Voronoi cell of the origin among `sites` by clipping a square of half-side
/// `radius` against every bisector. Neighbors are sites whose bisector holds
/// two distinct vertices.
inline Cell clipped_cell(const std::vector<P>& sites, double radius) {
  std::vector<P> poly{{-radius, -radius}, {radius, -radius}, {radius, radius}, {-radius, radius}};
  for (const P& s : sites) {
    // keep v with v.s <= |s|^2 / 2
    const double c = 0.5 * (s.x * s.x + s.y * s.y);
    std::vector<P> next;
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const P a = poly[k], b = poly[(k + 1) % poly.size()];
      const double fa = a.x * s.x + a.y * s.y - c, fb = b.x * s.x + b.y * s.y - c;
      if (fa <= 0) next.push_back(a);
      if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
        const double t = fa / (fa - fb);
        next.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
      }
    }
    poly = std::move(next);
  }
  Cell cell;
  cell.vertices = poly;
  double dmax = 0.0, a2 = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const P p = poly[k], q = poly[(k + 1) % poly.size()];
    dmax = std::max(dmax, std::hypot(p.x, p.y));
    a2 += p.x * q.y - q.x * p.y;
  }
  cell.area = 0.5 * a2;
  for (std::size_t u = 0; u < sites.size(); ++u) {
    const P s = sites[u];
    const double len = std::hypot(s.x, s.y);
    std::vector<P> on;
    for (const P& v : poly)
      if (std::fabs((v.x * s.x + v.y * s.y) / len - 0.5 * len) <= 1e-9 * dmax) on.push_back(v);
    bool edge = false;
    for (std::size_t i = 0; i < on.size() && !edge; ++i)
      for (std::size_t j = i + 1; j < on.size() && !edge; ++j) edge = dist(on[i], on[j]) > 1e-7 * dmax;
    if (edge) cell.neighbors.push_back(u);
  }
  cell.certified = 2.0 * dmax < radius;
  return cell;
}

/// Cell of the origin in the lattice zZ + Z, growing the site window until
/// every site that could cut the cell is included.
inline std::pair<Cell, std::vector<std::pair<std::pair<i64, i64>, P>>> lattice_cell(double x, double y) {
  double r = 4.0 * std::sqrt(y);
  for (int it = 0; it < 12; ++it, r *= 2.0) {
    auto sites = lattice_sites(x, y, r);
    std::vector<P> pts;
    for (const auto& s : sites) pts.push_back(s.second);
    Cell c = clipped_cell(pts, r);
    if (c.certified) return {c, sites};
  }
  return {};
}

/// cot of the angle at w0 of triangle (w0, w1, w2).
inline double cot_at(P w0, P w1, P w2) {
  const double ax = w1.x - w0.x, ay = w1.y - w0.y;
  const double bx = w2.x - w0.x, by = w2.y - w0.y;
  return (ax * bx + ay * by) / (ax * by - ay * bx);
}

/// |grad_{w0} cot| by central differences with step h.
inline double cot_gradient_fd(P w0, P w1, P w2, double h) {
  const double gx = (cot_at({w0.x + h, w0.y}, w1, w2) - cot_at({w0.x - h, w0.y}, w1, w2)) / (2 * h);
  const double gy = (cot_at({w0.x, w0.y + h}, w1, w2) - cot_at({w0.x, w0.y - h}, w1, w2)) / (2 * h);
  return std::hypot(gx, gy);
}

}  // namespace oracle
