#include "phyllo/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phyllo/parallel.hpp"

namespace phyllo {

CellError::CellError(std::int64_t j, const std::string& what)
    : std::runtime_error("cell " + std::to_string(j) + ": " + what), j_(j) {}

double initial_radius(const SpiralPointSet& set, std::int64_t id) {
  return 6.0 * std::sqrt(set.local_area_scale(id));
}

bool collinear_sites(const SpiralConfig& cfg) {
  const double twice = 2.0 * cfg.turns();
  return twice == std::floor(twice);
}

CellRecord cell_in_set(const SpiralPointSet& set, std::int64_t id, double radius) {
  if (collinear_sites(set.config())) throw CellError(id, "theta is a multiple of pi; the sites are collinear and cells unbounded");
  if (!(radius > 0.0)) radius = initial_radius(set, id);
  const PlanarPoint site = set.position(id);
  auto source = [&](double r, std::vector<Candidate>& out) { set.candidates(id, r, out); };
  EnclosedCell ec;
  try {
    ec = enclosed_voronoi_cell(site, radius, source);
  } catch (const std::exception& e) {
    throw CellError(id, e.what());
  }
  CellRecord rec;
  rec.j = id;
  rec.site = site;
  rec.area = area(ec.polygon);
  const double t = set.mu() + static_cast<double>(id);
  rec.normalized_area = (set.is_origin(id) || t <= 0.0) ? rec.area
                                                        : rec.area * std::pow(t, 1.0 - 2.0 * set.config().alpha());
  rec.cell = std::move(ec.polygon);
  rec.neighbors = std::move(ec.neighbors);
  rec.certified_radius = ec.certified_radius;
  rec.max_vertex_distance = ec.max_vertex_distance;
  rec.doublings = ec.doublings;
  return rec;
}

CellRecord cell(const SpiralConfig& cfg, std::int64_t j, double radius) {
  if (j < 0) throw std::invalid_argument("cell: index must be nonnegative");
  return cell_in_set(SpiralPointSet::standard(cfg), j, radius);
}

std::vector<CellRecord> area_sweep(const SpiralConfig& cfg, std::int64_t j_min, std::int64_t j_max,
                                   const SweepOptions& options) {
  if (j_min < 0 || j_max < j_min) throw std::invalid_argument("area_sweep: need 0 <= j_min <= j_max");
  const SpiralPointSet set = SpiralPointSet::standard(cfg);
  const auto n = static_cast<std::size_t>(j_max - j_min + 1);
  return parallel_map(n, options.threads, [&](std::size_t i) {
    CellRecord rec = cell_in_set(set, j_min + static_cast<std::int64_t>(i));
    if (!options.keep_polygons) rec.cell = {};
    return rec;
  });
}

std::vector<std::int64_t> parastichy_numbers_empirical(const SpiralConfig& cfg, std::int64_t j) {
  const CellRecord rec = cell(cfg, j);
  std::vector<std::int64_t> out;
  for (auto n : rec.neighbors)
    if (n != 0) out.push_back(n > j ? n - j : j - n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool adjacency_is_delaunay(const SpiralConfig& cfg, const CellRecord& rec) {
  const SpiralPointSet set = SpiralPointSet::standard(cfg);
  std::vector<Candidate> cands;
  set.candidates(rec.j, rec.certified_radius, cands);
  std::vector<PlanarPoint> sites{rec.site};
  for (const auto& c : cands)
    if (distance(c.pos, rec.site) <= rec.certified_radius) sites.push_back(c.pos);
  for (auto n : rec.neighbors) {
    // Same coordinates as in `sites`, so the endpoint is skipped exactly.
    const auto it = std::find_if(cands.begin(), cands.end(), [n](const Candidate& c) { return c.id == n; });
    if (it == cands.end()) return false;
    if (!empty_circumdisk(rec.site, it->pos, sites)) return false;
  }
  return true;
}

}  // namespace phyllo
