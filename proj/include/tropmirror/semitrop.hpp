#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tropmirror/tropics.hpp"

namespace tropmirror {

using Cplx = std::complex<double>;
using RealVec = std::vector<double>;

// Smooth profile: 1 on [0,1/2], 0 on [1,inf), nonincreasing.
double bump(double s);
double bump_derivative(double s);

struct CutoffSpec {
  double scale_exponent = 0.5;  // chi_{a,t}(x) = chi(d(x,C_a) / eps^delta)
  double operator()(double s) const { return bump(s); }
};

// Floating versions of the tropical data.
std::vector<double> affine_values(const MonomialSystem& sys, std::size_t i, const RealVec& x);
// max_b l_b(x) - l_a(x)
double trop_distance(const MonomialSystem& sys, std::size_t i, const RealVec& x, std::size_t a);

enum class EvalMode { Raw, Semitrop, Interpolated };
// sum c(a) t^{-rho(a)} z^a, optionally with cutoffs; s is the interpolation weight.
Cplx eval_W(const MonomialSystem& sys, std::size_t i, const std::vector<Cplx>& z, EvalMode mode = EvalMode::Raw,
            const CutoffSpec& cut = {}, double s = 1.0);
RealVec log_t(const std::vector<Cplx>& z, double log_t_value);

struct RegionFlags {
  std::vector<std::vector<bool>> in_U;  // per factor, per monomial
  ActiveTuple tuple;
  std::optional<std::size_t> v_stratum;  // the V_tau containing x
};
RegionFlags region_membership(const MonomialSystem& sys, const TropicalComplex& tc, const RealVec& x, double log_t_value,
                              double delta = 0.5);

struct AmoebaSample {
  std::vector<RealVec> points;
  std::size_t solves = 0;
  std::size_t failures = 0;  // cells whose root-finder did not converge
};
// Grid over the non-solve coordinates in [lo,hi] with `phases` random phases each; solves for the last coordinate.
AmoebaSample sample_amoeba(const MonomialSystem& sys, std::size_t i, double log_t_value, double lo, double hi,
                           std::size_t grid, std::size_t phases, unsigned seed = 1);
// Roots of sum c_k w^k, coefficients given low degree first.
std::vector<Cplx> polynomial_roots(const std::vector<Cplx>& coeffs);

struct GapReport {
  double bound = 0;
  double max_gap = 0;
  RealVec worst;
  std::size_t samples = 0;
  std::size_t violations = 0;
};
// Throws BoundViolated unless every sample has dominance gap <= log(|A|-1)/log t + slack.
GapReport gap_bound_check(const MonomialSystem& sys, std::size_t i, double log_t_value,
                          const std::vector<RealVec>& samples, double slack = 1e-9, bool throw_on_violation = true);

// Euclidean distance from x to the tropical curve of factor i (n = 2) or tropical points (n = 1).
double distance_to_tropical(const MonomialSystem& sys, std::size_t i, const RealVec& x);

struct ConvexPotential {
  std::string name;
  std::function<double(const RealVec&)> value;
  std::function<RealVec(const RealVec&)> gradient;
  std::function<std::vector<RealVec>(const RealVec&)> hessian;
};
ConvexPotential quadratic_potential();       // |x|^2 / 2
ConvexPotential quadratic_exp_potential();   // |x|^2 / 2 + exp(x_1)
ConvexPotential softplus_potential();        // sum log(1 + e^{x_j}) + |x|^2 / 4
std::vector<ConvexPotential> builtin_potentials();

// Orthonormal basis (columns) of the tangent space of a stratum.
std::vector<RealVec> tangent_basis(const Stratum& s, std::size_t n);
// Gradient of phi at x in orthonormal coordinates of the stratum's tangent space.
RealVec local_moment(const ConvexPotential& phi, const Stratum& tau, const RealVec& x);

struct GradientCheck {
  double max_relative_error = 0;
  std::size_t points = 0;
};
GradientCheck finite_difference_check(const ConvexPotential& phi, std::size_t n, std::size_t points, unsigned seed,
                                      double h = 1e-5);

}  // namespace tropmirror
