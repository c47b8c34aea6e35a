#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tropmirror/coxgroups.hpp"
#include "tropmirror/exactlat.hpp"
#include "tropmirror/regsubdiv.hpp"
#include "tropmirror/tropics.hpp"

namespace tropmirror {

struct FanCone {
  std::vector<std::size_t> rays;  // sorted ray indices
  std::size_t dim = 0;
  bool simplicial = true;
  bool smooth = false;
  Integer index = 0;  // lattice index inside its own span
};

struct Fan {
  std::size_t ambient = 0;
  std::size_t r = 1;
  std::vector<IntVector> rays;
  // (factor, monomial) a ray came from; empty for hand-built fans
  std::vector<std::pair<std::size_t, std::size_t>> ray_labels;
  std::vector<FanCone> cones;  // every nonempty face, sorted by (dim, rays)
  std::vector<std::size_t> max_cones;

  std::size_t find(const std::vector<std::size_t>& rays) const;  // cones.size() if absent
  std::size_t nonsmooth_max_cones() const;
  std::string ray_name(std::size_t k) const;
};

// Fan generated by the given maximal cones (ray index sets).
Fan make_fan(std::size_t ambient, std::vector<IntVector> rays, const std::vector<std::vector<std::size_t>>& max_cones);
// Cones over the cells of a star-shaped subdivision with apex 0 (point 0).
Fan build_fan(const RegularSubdivision& sub, std::size_t r);
Fan build_fan(const MonomialSystem& sys);

struct Chart {
  std::size_t cone = 0;             // index into Fan::cones
  std::vector<std::size_t> rays;    // coordinate j is dual to rays[j]
  std::vector<std::string> labels;  // named by the facet opposite the ray
  std::vector<std::size_t> block;   // factor of each coordinate
  std::vector<IntVector> weights;   // eta_j, smooth charts only
  bool stacky = false;
  Integer index = 1;
  FiniteCoverGroup cover;  // trivial for smooth charts

  std::size_t coordinate(const std::string& label) const;  // UnknownCoordinate
  std::size_t coordinate_of_ray(std::size_t ray) const;     // rays.size() if absent
};

struct TransitionMap {
  std::size_t source = 0, target = 0;  // chart indices
  IntMatrix E;  // target_k = prod_j source_j^{E_kj}
  bool adjacent = false;
};

struct ToricMirror {
  Fan fan;
  std::vector<Chart> charts;
  std::vector<TransitionMap> transitions;  // all ordered pairs of smooth charts
  bool duality_verified = false;

  const TransitionMap* transition(std::size_t source, std::size_t target) const;
  std::size_t chart_of_cone(std::size_t cone) const;
};

// Labels a coordinate by the facet opposite its ray.
std::string facet_label(const std::vector<std::size_t>& facet);

std::pair<std::vector<Chart>, std::vector<TransitionMap>> charts(const Fan& fan);
ToricMirror build_mirror(const MonomialSystem& sys);

struct Monomial {
  IntVector exponents;  // one per chart coordinate
};
// v_1, ..., v_r; W = sum. Stacky charts use their Cox cover coordinates.
std::vector<Monomial> superpotential(const Fan& fan, const Chart& chart);
std::string monomial_text(const Chart& chart, const Monomial& m);
std::string superpotential_text(const Fan& fan, const Chart& chart);

struct CocycleReport {
  bool ok = true;
  std::size_t triples_checked = 0;
  std::size_t pairs_checked = 0;
  std::string first_failure;
};
CocycleReport transition_cocycle(const ToricMirror& mirror);

struct MomentFace {
  std::vector<std::size_t> tight;  // constraint indices
  ActiveTuple tight_by_factor;     // monomial indices per factor
  std::size_t dim = 0;
  std::vector<std::size_t> generators;  // indices into vertices then rays
};

struct MomentPolytope {
  std::size_t n = 0, r = 0;
  std::vector<LinearConstraint> constraints;  // (m,u): <m,a> - u_i <= rho_i(a)
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  VRep generators;
  std::vector<MomentFace> faces;  // proper and improper faces, sorted by dim

  std::size_t count_codim(std::size_t k) const;
};
MomentPolytope moment_polytope(const MonomialSystem& sys);

struct DualityReport {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (face, stratum)
  std::map<std::size_t, std::size_t> by_dim;               // stratum dim -> count
  std::size_t tropical_pairs = 0;
  std::size_t facets_to_regions = 0;
};
// Throws DualityFailure on the first mismatch.
DualityReport duality_check(const MomentPolytope& mp, const TropicalComplex& tc);
// Runs duality_check and sets mirror.duality_verified.
DualityReport certify_duality(ToricMirror& mirror, const MonomialSystem& sys, const TropicalComplex& tc);

struct CriticalStratum {
  std::size_t cone = 0;
  std::vector<std::size_t> rays;
  std::size_t orbit_codim = 0;
  std::size_t fiber_rank = 0;
};
std::vector<CriticalStratum> critical_locus(const Fan& fan);
ActiveTuple cone_active(const Fan& fan, std::size_t cone);

struct ASideCritical {
  std::vector<std::string> equations;
  std::vector<std::size_t> base;  // Z^trop strata
  std::size_t fiber_rank = 0;
};
ASideCritical a_side_critical(const MonomialSystem& sys, const TropicalComplex& tc);
std::string polynomial_text(const MonomialSystem& sys, std::size_t i);

}  // namespace tropmirror
