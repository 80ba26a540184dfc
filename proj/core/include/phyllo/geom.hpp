#pragma once

// Planar geometry kernel. Binary64 throughout; degeneracy tests are relative
// to the local length scale.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace phyllo {

inline constexpr double kGeomEps = 1e-9;

struct PlanarPoint {
  double re = 0.0;
  double im = 0.0;

  constexpr PlanarPoint() = default;
  constexpr PlanarPoint(double re_, double im_) : re(re_), im(im_) {}
  explicit PlanarPoint(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> complex() const { return {re, im}; }

  friend constexpr PlanarPoint operator+(PlanarPoint a, PlanarPoint b) { return {a.re + b.re, a.im + b.im}; }
  friend constexpr PlanarPoint operator-(PlanarPoint a, PlanarPoint b) { return {a.re - b.re, a.im - b.im}; }
  friend constexpr PlanarPoint operator-(PlanarPoint a) { return {-a.re, -a.im}; }
  friend constexpr PlanarPoint operator*(double s, PlanarPoint a) { return {s * a.re, s * a.im}; }
  friend constexpr PlanarPoint operator*(PlanarPoint a, double s) { return {s * a.re, s * a.im}; }
  friend constexpr bool operator==(PlanarPoint, PlanarPoint) = default;
};

constexpr double dot(PlanarPoint a, PlanarPoint b) { return a.re * b.re + a.im * b.im; }
constexpr double cross(PlanarPoint a, PlanarPoint b) { return a.re * b.im - a.im * b.re; }
double norm(PlanarPoint a);  // Euclidean length
constexpr double norm2(PlanarPoint a) { return dot(a, a); }
double distance(PlanarPoint a, PlanarPoint b);

/// {zeta : |zeta - anchor| <= |zeta - other|}
struct HalfPlane {
  PlanarPoint anchor;
  PlanarPoint other;
};

inline constexpr std::int64_t kNoTag = INT64_MIN;

/// Counter-clockwise convex polygon. `edge_tags[i]` labels the edge from
/// vertex i to vertex i+1 (the site whose bisector produced it, or kNoTag).
struct ConvexPolygon {
  std::vector<PlanarPoint> vertices;
  std::vector<std::int64_t> edge_tags;

  bool empty() const { return vertices.size() < 3; }
  std::size_t size() const { return vertices.size(); }

  static ConvexPolygon box(PlanarPoint center, double half_width);
  static ConvexPolygon from_vertices(std::vector<PlanarPoint> ccw);
};

struct Disk {
  PlanarPoint center;
  double radius = 0.0;
};

/// Arg((w1 - w2) / (w3 - w2)) on the principal branch (-pi, pi].
double angle(PlanarPoint w1, PlanarPoint w2, PlanarPoint w3);

Disk circumcenter(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2);

/// |grad f| for f(w0) = cot of the angle at w0; symmetric in the three points.
double cot_gradient_norm(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2);

/// f(w0) = Re(conj(w1 - w0)(w2 - w0)) / Im(conj(w1 - w0)(w2 - w0)).
double cot_angle(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2);

ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& hp, std::int64_t tag = kNoTag);

/// Keeps {p : dot(p - origin, outward) <= 0}.
ConvexPolygon clip_by_line(const ConvexPolygon& poly, PlanarPoint origin, PlanarPoint outward,
                           std::int64_t tag = kNoTag);

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);

double area(const ConvexPolygon& poly);

double symmetric_difference_area(const ConvexPolygon& a, const ConvexPolygon& b);

/// Whether some disk holds pA and pB and no other site of `sites` (closed:
/// a site on the circle counts as inside). Sites equal to pA or pB are skipped.
bool empty_circumdisk(PlanarPoint pA, PlanarPoint pB, std::span<const PlanarPoint> sites);

}  // namespace phyllo
