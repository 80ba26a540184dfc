#pragma once

// Certified Voronoi cell of one site against a lazily enumerated point set.
//
// Start from a box of half-width 2R around the site, clip against every
// candidate within distance R (nearest first), and accept once the farthest
// vertex d satisfies 2d <= R: any site that could still cut the cell lies
// within 2d of the site and was therefore among the candidates. Otherwise R
// doubles.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "phyllo/geom.hpp"

namespace phyllo {

struct Candidate {
  std::int64_t id = 0;
  PlanarPoint pos;
};

/// Appends every site within `radius` of the cell's site (a superset is fine;
/// the site itself must be excluded).
using CandidateSource = std::function<void(double radius, std::vector<Candidate>& out)>;

struct EnclosedCell {
  ConvexPolygon polygon;
  std::vector<std::int64_t> neighbors;  // sorted ids of edge-contributing sites
  std::vector<Candidate> candidates;    // candidate set of the certifying round
  double certified_radius = 0.0;
  double max_vertex_distance = 0.0;
  int doublings = 0;
};

class EnclosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

EnclosedCell enclosed_voronoi_cell(PlanarPoint site, double initial_radius, const CandidateSource& source,
                                   int max_doublings = 20);

/// Packs a pair of small signed integers into one candidate id.
constexpr std::int64_t pack_pair(std::int64_t m, std::int64_t n) {
  constexpr std::int64_t kBias = std::int64_t{1} << 30;
  return ((m + kBias) << 31) | (n + kBias);
}

constexpr std::pair<std::int64_t, std::int64_t> unpack_pair(std::int64_t id) {
  constexpr std::int64_t kBias = std::int64_t{1} << 30;
  return {(id >> 31) - kBias, (id & ((std::int64_t{1} << 31) - 1)) - kBias};
}

}  // namespace phyllo
