#pragma once

// Voronoi cells of the linear lattice zZ + Z, z = x + iy: parastichy indices,
// Parastichy thresholds and reduced bases.

#include <cstdint>
#include <functional>
#include <vector>

#include "phyllo/diophantine.hpp"
#include "phyllo/enclosure.hpp"
#include "phyllo/geom.hpp"

namespace phyllo {

/// Relative width of the band around a threshold that counts as "on" it.
inline constexpr double kThresholdTie = 1e-9;

class LinearLattice {
 public:
  /// `cf` expands x; it must be consistent with x.
  LinearLattice(ContinuedFraction cf, double y);
  static LinearLattice from_point(double x, double y, std::size_t depth = 64);

  double x() const noexcept { return cf_.value(); }
  double y() const noexcept { return y_; }
  PlanarPoint z() const { return {x(), y_}; }
  const ContinuedFraction& cf() const noexcept { return cf_; }
  const ConvergentTable& table() const noexcept { return table_; }

  /// m z - a with the real part taken from the accurate residue when (m, a)
  /// is a convergent or intermediate pair.
  PlanarPoint site(std::int64_t m, std::int64_t a) const;
  /// q_{i,k} z - p_{i,k}
  PlanarPoint convergent_vector(long i, Int k) const;

 private:
  ContinuedFraction cf_;
  ConvergentTable table_;
  double y_;
};

struct LatticeSiteIndex {
  std::int64_t m = 0;
  std::int64_t a = 0;
  friend bool operator==(const LatticeSiteIndex&, const LatticeSiteIndex&) = default;
  friend auto operator<=>(const LatticeSiteIndex&, const LatticeSiteIndex&) = default;
};

enum class CellShape { rectangle, hexagon };

struct ParastichyState {
  long i = 0;
  Int k = 0;
  double eta_hi = 0.0;  // eta_{i,k}
  double eta_lo = 0.0;  // eta_{i,k+1}
  std::vector<Fraction> indices;  // sorted ascending
  CellShape shape = CellShape::hexagon;
};

struct ReducedBasis {
  PlanarPoint lambda1;
  PlanarPoint lambda2;
  LatticeSiteIndex index1;
  LatticeSiteIndex index2;
  double v = 0.0;      // |Im(lambda2 / lambda1)|
  double delta = 0.0;  // |lambda1|
};

double richards_eta(const LinearLattice& lat, long i, Int k);

/// Locates eta_{i,k+1} < y <= eta_{i,k}; throws std::domain_error when y is
/// above every threshold and DepthError when the expansion runs out.
ParastichyState parastichy_state(const LinearLattice& lat);

struct LatticeCell {
  ConvexPolygon polygon;
  std::vector<LatticeSiteIndex> neighbors;  // (m, a) of the sites m z - a
  double certified_radius = 0.0;
};

LatticeCell voronoi_cell_origin(const LinearLattice& lat);

/// Parastichy indices a/m (m > 0) read off the computed cell's edges.
std::vector<Fraction> geometric_parastichy_indices(const LatticeCell& cell);

ReducedBasis reduced_basis(const LinearLattice& lat);

/// Cell of the lattice point 0 in {m b1 + n b2}, optionally with every site
/// moved by `displace(m, n)` (|displacement| <= max_displacement). Neighbors
/// are reported as (m, n).
struct BasisCell {
  ConvexPolygon polygon;
  std::vector<std::pair<std::int64_t, std::int64_t>> neighbors;
  PlanarPoint site;
  double certified_radius = 0.0;
};

using Displacement = std::function<PlanarPoint(std::int64_t m, std::int64_t n)>;

BasisCell lattice_origin_cell(PlanarPoint b1, PlanarPoint b2, const Displacement& displace = {},
                              double max_displacement = 0.0);

/// Whether w lies in D = {|Re w| <= 1/2, |w| >= 1, Im w > 0} (relative slack tol).
bool in_fundamental_domain(PlanarPoint w, double tol = 1e-12);

}  // namespace phyllo
