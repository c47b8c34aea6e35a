#pragma once

#include <utility>
#include <vector>

#include "tropmirror/exactlat.hpp"
#include "tropmirror/polyhedron.hpp"
#include "tropmirror/tropics.hpp"

namespace tropmirror {

struct RegularSubdivision {
  std::vector<IntVector> points;
  std::vector<Rational> heights;
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;  // affine dimension of Conv(points)
  bool full_dimensional = true;
  std::vector<std::vector<std::size_t>> cells;  // point indices, sorted
  bool is_triangulation = false;
  bool uses_all_points = false;
  bool is_unimodular = false;   // meaningful only for triangulations
  bool is_star_shaped = false;  // false when the origin is not a point
};

// Cells are the projections of the lower facets of the lifted point set.
// Conv(points) must be full-dimensional unless allow_degenerate is set.
RegularSubdivision regular_subdivision(const std::vector<IntVector>& points, const std::vector<Rational>& heights,
                                       bool allow_degenerate = false);

struct UnimodularityReport {
  bool unimodular = true;
  std::vector<std::pair<std::size_t, Integer>> offending;  // cell index, normalized volume
};
UnimodularityReport is_unimodular(const RegularSubdivision& sub);
bool is_star_shaped(const RegularSubdivision& sub);

// Normalized volume (dim! * Euclidean) of a full-dimensional lattice polytope.
Integer normalized_volume(const std::vector<IntVector>& points);
Integer simplex_volume(const std::vector<IntVector>& simplex);
// Facet inequalities a.x <= b of a full-dimensional Conv(points), a primitive.
std::vector<LinearConstraint> hull_facets(const std::vector<IntVector>& points);
// Indices of points that are vertices of Conv(points).
std::vector<std::size_t> hull_vertices(const std::vector<IntVector>& points);

// Conv(0, (-A_1) x e_1, ..., (-A_r) x e_r)
std::vector<IntVector> ci_newton_polytope(const MonomialSystem& sys);
// Point 0 first (height 0), then (-a, e_i) for every factor and monomial in
// input order, lifted to rho_i(a).
RegularSubdivision newton_subdivision(const MonomialSystem& sys);
// For point k > 0 of a Newton subdivision: (factor, monomial index).
std::pair<std::size_t, std::size_t> newton_point_label(const MonomialSystem& sys, std::size_t k);

}  // namespace tropmirror
