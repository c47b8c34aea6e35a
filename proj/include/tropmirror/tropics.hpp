#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tropmirror/exactlat.hpp"
#include "tropmirror/polyhedron.hpp"

namespace tropmirror {

// Tropical parameter. e^k is not rational, so the log is what we keep.
struct TParam {
  double log_t = 20.0;
  std::optional<Rational> exact;  // set when t was given as a rational
  std::string text = "e^20";

  static TParam parse(const std::string& s);
  static TParam exp(double k);
  double epsilon() const { return 1.0 / log_t; }
};

struct Factor {
  std::vector<IntVector> monomials;
  std::vector<Rational> heights;
  std::vector<std::pair<Rational, Rational>> coeffs;  // re, im; default (1,0)
};

class MonomialSystem {
 public:
  MonomialSystem(std::size_t n, std::vector<Factor> factors, TParam t = TParam());

  std::size_t n() const { return n_; }
  std::size_t r() const { return factors_.size(); }
  const Factor& factor(std::size_t i) const { return factors_.at(i); }
  const std::vector<Factor>& factors() const { return factors_; }
  const TParam& t() const { return t_; }
  void set_t(const TParam& t) { t_ = t; }

  // <x,a> - rho(a)
  Rational affine_value(std::size_t i, std::size_t a, const RatVector& x) const;
  std::size_t monomial_index(std::size_t i, const IntVector& a) const;  // UnknownMonomial

 private:
  std::size_t n_;
  std::vector<Factor> factors_;
  TParam t_;
};

struct TropValue {
  Rational value;
  std::vector<std::size_t> argmax;
};

TropValue trop_eval(const MonomialSystem& sys, std::size_t i, const RatVector& x);
Rational tropical_distance(const MonomialSystem& sys, std::size_t i, const RatVector& x, std::size_t a);
Rational tropical_distance(const MonomialSystem& sys, std::size_t i, const RatVector& x, const IntVector& a);

using ActiveTuple = std::vector<std::vector<std::size_t>>;

struct Stratum {
  ActiveTuple active;
  std::size_t dim = 0;
  RatVector witness;
  std::vector<LinearConstraint> equalities;    // a.x = b
  std::vector<LinearConstraint> inequalities;  // a.x < b
  std::vector<IntVector> recession_rays;
  std::vector<RatVector> lineality;
  bool in_tropical_locus = false;

  bool bounded() const { return recession_rays.empty() && lineality.empty(); }
  bool contains(const RatVector& x) const;
  HSystem hsystem() const;
};

struct TropicalComplex {
  std::size_t n = 0, r = 0;
  std::vector<Stratum> strata;  // sorted by (dim, active sets)
  std::vector<std::vector<bool>> below;  // below[a][b]: a in closure of b, a != b

  std::vector<std::size_t> vertices;  // 0-dim strata of Z^trop
  std::vector<std::size_t> edges;     // 1-dim strata of Z^trop
  std::vector<std::vector<std::size_t>> edge_vertices;  // per edge: adjacent vertices

  bool leq(std::size_t a, std::size_t b) const { return a == b || below[a][b]; }
  std::vector<std::size_t> tropical_strata() const;
  std::vector<std::size_t> regions() const;  // strata with all singleton active sets and dim n
  std::size_t find(const ActiveTuple& t) const;  // strata.size() if absent
  std::size_t locate(const RatVector& x) const;  // stratum containing x
  std::size_t count(std::size_t dim, bool tropical_only) const;
};

TropicalComplex build_stratification(const MonomialSystem& sys);

struct OpenSet {
  std::vector<std::size_t> members;       // sorted stratum indices (Z^trop)
  std::vector<std::size_t> generated_by;  // strata S with U_S equal to this open
  std::vector<std::size_t> adjacent;      // minimal strata whose stars cut out this open
  std::size_t core = 0;                   // unique minimal member
};

struct OpenPoset {
  std::vector<OpenSet> opens;
  std::vector<std::vector<bool>> subset;  // subset[a][b]: opens[a] strictly inside opens[b]
  std::vector<std::size_t> minimal_strata;
  std::vector<std::size_t> open_of;  // stratum index -> open index (npos if not in Z^trop)

  bool intersection_closed() const;
};

OpenPoset build_open_poset(const TropicalComplex& tc);

struct OpenPolytope {
  std::vector<LinearConstraint> strict;  // a.x < b
};
// Conv(points) + open l-infinity box of the given radius
struct HullNeighborhood {
  std::vector<RatVector> points;
  Rational radius;
};
using Region = std::variant<OpenPolytope, HullNeighborhood>;

OpenPolytope open_box(const RatVector& center, const Rational& radius);
bool region_meets(const Region& P, const Stratum& s);
bool region_contains(const Region& outer, const HullNeighborhood& inner);
std::optional<RatVector> point_in(const Region& P, const Stratum& s);

std::vector<std::size_t> saturate(const Region& P, const TropicalComplex& tc);

struct ZigzagChain {
  Region p1;
  HullNeighborhood q1, q12, q2;
  Region p2;
  std::vector<std::size_t> saturation;
};

ZigzagChain zigzag_connect(const Region& p1, const Region& p2, const TropicalComplex& tc);

}  // namespace tropmirror
