#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tropmirror/semitrop.hpp"

namespace tropmirror {

struct FoliationParams {
  double log_t = 100.0;
  double delta1 = 0.2;
  double delta2 = 0.3;
  double tol = 1e-8;
  double box = 3.0;           // sampling box [-box, box]^n
  std::size_t fiber_grid = 41;  // points per normal direction when sampling a fiber
};

// Base regions B, leaves T and projections pi over every stratum of R^n.
class FoliationSystem {
 public:
  FoliationSystem(MonomialSystem sys, TropicalComplex tc, ConvexPotential phi, FoliationParams p);

  const TropicalComplex& complex() const { return tc_; }
  const FoliationParams& params() const { return p_; }
  double eps() const { return 1.0 / p_.log_t; }

  bool on_stratum(std::size_t tau, const RealVec& y, bool closed = false) const;
  bool in_U(double delta, std::size_t tau, const RealVec& y, bool closed = false) const;
  std::optional<std::size_t> v_stratum(const RealVec& y) const;
  bool in_V_geq(std::size_t tau, const RealVec& y) const;
  bool in_base(std::size_t tau, const RealVec& x) const;

  RealVec moment(std::size_t tau, const RealVec& y) const;
  // the point of the stratum's affine span with the same local moment
  std::optional<RealVec> foot(std::size_t tau, const RealVec& y) const;
  std::optional<RealVec> pre_projection(std::size_t tau, const RealVec& y) const;
  // corrected leaves: pre-leaf plus higher leaves meeting it
  std::optional<RealVec> projection(std::size_t tau, const RealVec& y) const;

  // points of the moment fiber through x, normal offsets up to `radius`
  std::vector<RealVec> fiber_points(std::size_t tau, const RealVec& x, double radius) const;
  std::vector<RealVec> leaf_points(std::size_t tau, const RealVec& x) const;
  std::vector<RealVec> sample_base(std::size_t tau, std::size_t count) const;
  std::vector<RealVec> sample_closure(std::size_t tau, std::size_t count) const;
  double leaf_radius() const;

 private:
  std::vector<RealVec> sample_on(std::size_t tau, std::size_t count, bool closure) const;

  MonomialSystem sys_;
  TropicalComplex tc_;
  ConvexPotential phi_;
  FoliationParams p_;
  std::vector<std::vector<RealVec>> tangent_, normal_;
  std::vector<RealVec> anchor_;
};

// Validates 0 < delta1 < delta2 < 1/2 and spot-checks that fiber slices through base points stay in V (else TooSmallT).
FoliationSystem build_foliation(const MonomialSystem& sys, const ConvexPotential& phi, const FoliationParams& p);

struct FoliationReport {
  bool sandwich = true;   // condition 1
  bool coverage = true;   // condition 2
  bool nesting = true;    // condition 3
  std::size_t sandwich_checks = 0, coverage_checks = 0, nesting_checks = 0;
  double max_leaf_offset = 0;  // sup |y - pi(y)| over sampled leaves
  std::string first_failure;
  bool ok() const { return sandwich && coverage && nesting; }
};
FoliationReport check_foliation(const FoliationSystem& fs, std::size_t samples = 100);

struct TrapReport {
  std::size_t steps = 0;
  std::size_t stratum = 0;
  RealVec foot;
  bool stayed_in_leaf = true;
  double max_moment_drift = 0;
  double max_residual = 0;
  std::vector<RealVec> trajectory;  // Log_t of the path
};
// Hamiltonian flow of g o Log_t on the semi-tropical curve (n = 2, one factor), RK4 plus Newton projection.
TrapReport trap_check(const FoliationSystem& fs, const MonomialSystem& sys, const std::function<RealVec(const RealVec&)>& grad_g,
                      const RealVec& x0, const RealVec& theta0, std::size_t steps, double dt);

}  // namespace tropmirror
