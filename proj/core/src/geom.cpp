#include "phyllo/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace phyllo {

double norm(PlanarPoint a) { return std::hypot(a.re, a.im); }
double distance(PlanarPoint a, PlanarPoint b) { return norm(a - b); }

ConvexPolygon ConvexPolygon::box(PlanarPoint c, double h) {
  ConvexPolygon p;
  p.vertices = {{c.re - h, c.im - h}, {c.re + h, c.im - h}, {c.re + h, c.im + h}, {c.re - h, c.im + h}};
  p.edge_tags.assign(4, kNoTag);
  return p;
}

ConvexPolygon ConvexPolygon::from_vertices(std::vector<PlanarPoint> ccw) {
  ConvexPolygon p;
  p.edge_tags.assign(ccw.size(), kNoTag);
  p.vertices = std::move(ccw);
  return p;
}

double angle(PlanarPoint w1, PlanarPoint w2, PlanarPoint w3) {
  if (w1 == w2 || w3 == w2) throw std::invalid_argument("angle: coincident points");
  const double a = std::arg((w1 - w2).complex() / (w3 - w2).complex());
  return a == -std::numbers::pi ? std::numbers::pi : a;
}

namespace {

double triangle_scale(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2) {
  return std::max({distance(w0, w1), distance(w1, w2), distance(w0, w2)});
}

void require_nondegenerate(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2, const char* who) {
  const double scale = triangle_scale(w0, w1, w2);
  if (!(std::fabs(cross(w1 - w0, w2 - w0)) > kGeomEps * scale * scale))
    throw std::domain_error(std::string(who) + ": degenerate (collinear) triangle");
}

}  // namespace

Disk circumcenter(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2) {
  require_nondegenerate(w0, w1, w2, "circumcenter");
  const PlanarPoint b = w1 - w0;
  const PlanarPoint c = w2 - w0;
  const double d = 2.0 * cross(b, c);
  const double bb = norm2(b);
  const double cc = norm2(c);
  const PlanarPoint offset{(c.im * bb - b.im * cc) / d, (b.re * cc - c.re * bb) / d};
  return {w0 + offset, norm(offset)};
}

double cot_angle(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2) {
  const PlanarPoint b = w1 - w0;
  const PlanarPoint c = w2 - w0;
  return dot(b, c) / cross(b, c);
}

double cot_gradient_norm(PlanarPoint w0, PlanarPoint w1, PlanarPoint w2) {
  require_nondegenerate(w0, w1, w2, "cot_gradient_norm");
  const double im = cross(w1 - w0, w2 - w0);
  return norm(w2 - w1) * norm(w1 - w0) * norm(w2 - w0) / (im * im);
}

namespace {

double extent(const ConvexPolygon& poly) {
  double lo_re = std::numeric_limits<double>::infinity(), hi_re = -lo_re;
  double lo_im = lo_re, hi_im = hi_re;
  for (const auto& v : poly.vertices) {
    lo_re = std::min(lo_re, v.re);
    hi_re = std::max(hi_re, v.re);
    lo_im = std::min(lo_im, v.im);
    hi_im = std::max(hi_im, v.im);
  }
  return std::hypot(hi_re - lo_re, hi_im - lo_im);
}

// Drops vertices closer than `tol` to their predecessor; the surviving vertex
// takes the outgoing tag of the dropped one.
void merge_close_vertices(ConvexPolygon& poly, double tol) {
  std::vector<PlanarPoint> verts;
  std::vector<std::int64_t> tags;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    if (!verts.empty() && distance(verts.back(), poly.vertices[i]) <= tol) {
      tags.back() = poly.edge_tags[i];
      continue;
    }
    verts.push_back(poly.vertices[i]);
    tags.push_back(poly.edge_tags[i]);
  }
  while (verts.size() > 1 && distance(verts.back(), verts.front()) <= tol) {
    verts.pop_back();
    tags.pop_back();
  }
  if (verts.size() < 3) {
    verts.clear();
    tags.clear();
  }
  poly.vertices = std::move(verts);
  poly.edge_tags = std::move(tags);
}

}  // namespace

ConvexPolygon clip_by_line(const ConvexPolygon& poly, PlanarPoint origin, PlanarPoint outward, std::int64_t tag) {
  if (poly.empty()) return {};
  const double scale = extent(poly);
  const double len = norm(outward);
  if (!(len > 0.0)) throw std::invalid_argument("clip: degenerate half-plane");
  const double tol = kGeomEps * scale;

  const std::size_t n = poly.vertices.size();
  std::vector<double> s(n);
  bool all_in = true;
  bool all_out = true;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = dot(poly.vertices[i] - origin, outward) / len;
    all_in = all_in && s[i] <= tol;
    all_out = all_out && s[i] > tol;
  }
  if (all_in) return poly;
  if (all_out) return {};

  ConvexPolygon out;
  out.vertices.reserve(n + 1);
  out.edge_tags.reserve(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const bool in_i = s[i] <= tol;
    const bool in_j = s[j] <= tol;
    const std::int64_t edge_tag = poly.edge_tags.empty() ? kNoTag : poly.edge_tags[i];
    if (in_i) {
      out.vertices.push_back(poly.vertices[i]);
      out.edge_tags.push_back(edge_tag);
    }
    if (in_i != in_j) {
      const double t = std::clamp(s[i] / (s[i] - s[j]), 0.0, 1.0);
      const PlanarPoint cut = poly.vertices[i] + t * (poly.vertices[j] - poly.vertices[i]);
      out.vertices.push_back(cut);
      out.edge_tags.push_back(in_i ? tag : edge_tag);
    }
  }
  merge_close_vertices(out, tol);
  return out;
}

ConvexPolygon clip(const ConvexPolygon& poly, const HalfPlane& hp, std::int64_t tag) {
  if (hp.anchor == hp.other) throw std::invalid_argument("clip: half-plane sites coincide");
  const PlanarPoint mid = 0.5 * (hp.anchor + hp.other);
  return clip_by_line(poly, mid, hp.other - hp.anchor, tag);
}

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
  ConvexPolygon out = a;
  const std::size_t n = b.vertices.size();
  for (std::size_t i = 0; i < n && !out.empty(); ++i) {
    const PlanarPoint p = b.vertices[i];
    const PlanarPoint q = b.vertices[(i + 1) % n];
    const PlanarPoint dir = q - p;
    out = clip_by_line(out, p, {dir.im, -dir.re});
  }
  return out;
}

double area(const ConvexPolygon& poly) {
  if (poly.empty()) return 0.0;
  // Shoelace about the first vertex keeps cancellation small for far-off cells.
  const PlanarPoint o = poly.vertices.front();
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < poly.vertices.size(); ++i)
    twice += cross(poly.vertices[i] - o, poly.vertices[i + 1] - o);
  return std::max(0.0, 0.5 * twice);
}

double symmetric_difference_area(const ConvexPolygon& a, const ConvexPolygon& b) {
  if (a.empty()) return area(b);
  if (b.empty()) return area(a);
  const double overlap = area(intersect(a, b));
  return std::max(0.0, area(a) + area(b) - 2.0 * overlap);
}

bool empty_circumdisk(PlanarPoint pA, PlanarPoint pB, std::span<const PlanarPoint> sites) {
  if (sites.size() < 2) throw std::invalid_argument("empty_circumdisk: need at least two sites");
  if (pA == pB) throw std::invalid_argument("empty_circumdisk: coincident endpoints");

  // Circles through pA, pB have centers mid + t * normal. A site q is outside
  // the closed disk iff t lies strictly on the far side of t_q.
  const PlanarPoint mid = 0.5 * (pA + pB);
  const PlanarPoint chord = pB - pA;
  const double chord_len = norm(chord);
  const PlanarPoint normal{-chord.im / chord_len, chord.re / chord_len};
  const double half2 = norm2(pA - mid);
  const double tol = kGeomEps * chord_len;

  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  for (const PlanarPoint& q : sites) {
    if (q == pA || q == pB) continue;
    const PlanarPoint rel = q - mid;
    const double side = dot(rel, normal);
    if (std::fabs(side) <= tol) {
      // On the chord's line: inside every such disk iff between the endpoints.
      if (std::fabs(dot(rel, chord)) / chord_len < 0.5 * chord_len + tol) return false;
      continue;
    }
    const double t_q = (norm2(rel) - half2) / (2.0 * side);
    if (side > 0)
      upper = std::min(upper, t_q);
    else
      lower = std::max(lower, t_q);
  }
  return upper - lower > 0.1 * tol;
}

}  // namespace phyllo
