#pragma once

// Certified Voronoi cells of spiral lattice sites.

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "phyllo/enclosure.hpp"
#include "phyllo/geom.hpp"
#include "phyllo/spiral.hpp"

namespace phyllo {

struct CellRecord {
  std::int64_t j = 0;
  PlanarPoint site;
  ConvexPolygon cell;
  double area = 0.0;
  double normalized_area = 0.0;  // j^(1-2 alpha) area; the raw area at j = 0
  std::vector<std::int64_t> neighbors;
  double certified_radius = 0.0;
  double max_vertex_distance = 0.0;
  int doublings = 0;
};

class CellError : public std::runtime_error {
 public:
  CellError(std::int64_t j, const std::string& what);
  std::int64_t j() const noexcept { return j_; }

 private:
  std::int64_t j_;
};

/// Whether theta is a multiple of pi, so that every site lies on one line.
bool collinear_sites(const SpiralConfig& cfg);

/// Initial enclosure radius: six times the square root of the expected area.
double initial_radius(const SpiralPointSet& set, std::int64_t id);

/// Cell of site `id` in an arbitrary spiral point set. `radius` <= 0 picks
/// the default initial radius.
CellRecord cell_in_set(const SpiralPointSet& set, std::int64_t id, double radius = 0.0);

CellRecord cell(const SpiralConfig& cfg, std::int64_t j, double radius = 0.0);

struct SweepOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  bool keep_polygons = true;
};

std::vector<CellRecord> area_sweep(const SpiralConfig& cfg, std::int64_t j_min, std::int64_t j_max,
                                   const SweepOptions& options = {});

/// {|j' - j| : j' adjacent to j}, the origin excluded.
std::vector<std::int64_t> parastichy_numbers_empirical(const SpiralConfig& cfg, std::int64_t j);

/// Whether every reported neighbor passes the empty-circumdisk test against
/// the sites within the certified radius.
bool adjacency_is_delaunay(const SpiralConfig& cfg, const CellRecord& rec);

}  // namespace phyllo
