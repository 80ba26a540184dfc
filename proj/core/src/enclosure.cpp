#include "phyllo/enclosure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace phyllo {

namespace {

double max_vertex_distance(const ConvexPolygon& poly, PlanarPoint site) {
  double d2 = 0.0;
  for (const auto& v : poly.vertices) d2 = std::max(d2, norm2(v - site));
  return std::sqrt(d2);
}

}  // namespace

EnclosedCell enclosed_voronoi_cell(PlanarPoint site, double initial_radius, const CandidateSource& source,
                                   int max_doublings) {
  if (!(initial_radius > 0.0) || !std::isfinite(initial_radius))
    throw std::invalid_argument("enclosed_voronoi_cell: initial radius must be positive");

  struct Ranked {
    double dist;
    std::int64_t id;
    PlanarPoint pos;
  };

  double radius = initial_radius;
  std::vector<Candidate> raw;
  std::vector<Ranked> ranked;
  for (int round = 0; round <= max_doublings; ++round, radius *= 2.0) {
    raw.clear();
    source(radius, raw);
    ranked.clear();
    for (const auto& c : raw) {
      const double dist = distance(c.pos, site);
      if (dist == 0.0) throw EnclosureError("enclosed_voronoi_cell: duplicate site");
      if (dist <= radius) ranked.push_back({dist, c.id, c.pos});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
    });

    ConvexPolygon poly = ConvexPolygon::box(site, 2.0 * radius);
    double reach = max_vertex_distance(poly, site);
    for (const auto& c : ranked) {
      if (c.dist > 2.0 * reach) break;
      poly = clip(poly, {site, c.pos}, c.id);
      if (poly.empty()) throw EnclosureError("enclosed_voronoi_cell: cell collapsed");
      reach = max_vertex_distance(poly, site);
    }

    if (2.0 * reach <= radius) {
      EnclosedCell out;
      out.neighbors = poly.edge_tags;
      std::sort(out.neighbors.begin(), out.neighbors.end());
      out.neighbors.erase(std::unique(out.neighbors.begin(), out.neighbors.end()), out.neighbors.end());
      std::erase(out.neighbors, kNoTag);
      out.polygon = std::move(poly);
      out.candidates = raw;
      out.certified_radius = radius;
      out.max_vertex_distance = reach;
      out.doublings = round;
      return out;
    }
  }
  throw EnclosureError("enclosed_voronoi_cell: cell not certified after " + std::to_string(max_doublings) +
                       " doublings (unbounded cell?)");
}

}  // namespace phyllo
