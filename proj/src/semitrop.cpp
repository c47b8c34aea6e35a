#include "tropmirror/semitrop.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace tropmirror {

namespace {

double f_exp(double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; }
double f_exp_d(double x) { return x > 0 ? std::exp(-1.0 / x) / (x * x) : 0.0; }

double norm(const RealVec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

double bump(double s) {
  if (s <= 0.5) return 1.0;
  if (s >= 1.0) return 0.0;
  double u = f_exp(1.0 - s), v = f_exp(s - 0.5);
  return u / (u + v);
}

double bump_derivative(double s) {
  if (s <= 0.5 || s >= 1.0) return 0.0;
  double u = f_exp(1.0 - s), v = f_exp(s - 0.5);
  double du = -f_exp_d(1.0 - s), dv = f_exp_d(s - 0.5);
  return (du * v - u * dv) / ((u + v) * (u + v));
}

std::vector<double> affine_values(const MonomialSystem& sys, std::size_t i, const RealVec& x) {
  const Factor& f = sys.factor(i);
  if (x.size() != sys.n()) fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
  std::vector<double> out;
  for (std::size_t a = 0; a < f.monomials.size(); ++a) {
    double v = -f.heights[a].get_d();
    for (std::size_t j = 0; j < x.size(); ++j) v += f.monomials[a][j].get_d() * x[j];
    out.push_back(v);
  }
  return out;
}

double trop_distance(const MonomialSystem& sys, std::size_t i, const RealVec& x, std::size_t a) {
  auto l = affine_values(sys, i, x);
  if (a >= l.size()) fail(ErrorCode::UnknownMonomial, "index " + std::to_string(a));
  return *std::max_element(l.begin(), l.end()) - l[a];
}

RealVec log_t(const std::vector<Cplx>& z, double L) {
  RealVec x;
  for (auto& c : z) {
    if (c == Cplx(0, 0)) fail(ErrorCode::ZeroCoordinate, "point is not in the torus");
    x.push_back(std::log(std::abs(c)) / L);
  }
  return x;
}

Cplx eval_W(const MonomialSystem& sys, std::size_t i, const std::vector<Cplx>& z, EvalMode mode, const CutoffSpec& cut,
            double s) {
  if (z.size() != sys.n()) fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
  const double L = sys.t().log_t;
  RealVec x = log_t(z, L);
  const Factor& f = sys.factor(i);
  auto l = affine_values(sys, i, x);
  double top = *std::max_element(l.begin(), l.end());
  double scale = std::pow(sys.t().epsilon(), cut.scale_exponent);
  Cplx raw = 0, semi = 0;
  for (std::size_t a = 0; a < f.monomials.size(); ++a) {
    Cplx lg(-f.heights[a].get_d() * L, 0);
    for (std::size_t j = 0; j < z.size(); ++j) lg += f.monomials[a][j].get_d() * std::log(z[j]);
    Cplx c = f.coeffs.empty() ? Cplx(1, 0) : Cplx(f.coeffs[a].first.get_d(), f.coeffs[a].second.get_d());
    Cplx term = c * std::exp(lg);
    raw += term;
    if (mode != EvalMode::Raw) semi += cut((top - l[a]) / scale) * term;
  }
  switch (mode) {
    case EvalMode::Raw:
      return raw;
    case EvalMode::Semitrop:
      return semi;
    case EvalMode::Interpolated:
      return (1.0 - s) * raw + s * semi;
  }
  return raw;
}

RegionFlags region_membership(const MonomialSystem& sys, const TropicalComplex& tc, const RealVec& x, double L,
                              double delta) {
  RegionFlags r;
  double eps = std::pow(1.0 / L, delta);
  for (std::size_t i = 0; i < sys.r(); ++i) {
    auto l = affine_values(sys, i, x);
    double top = *std::max_element(l.begin(), l.end());
    r.in_U.emplace_back();
    r.tuple.emplace_back();
    for (std::size_t a = 0; a < l.size(); ++a) {
      bool in = top - l[a] < eps;
      r.in_U.back().push_back(in);
      if (in) r.tuple.back().push_back(a);
    }
  }
  std::size_t s = tc.find(r.tuple);
  if (s < tc.strata.size()) r.v_stratum = s;
  return r;
}

std::vector<Cplx> polynomial_roots(const std::vector<Cplx>& c_in) {
  std::vector<Cplx> c = c_in;
  while (!c.empty() && c.back() == Cplx(0, 0)) c.pop_back();
  std::size_t zeros = 0;
  while (zeros < c.size() && c[zeros] == Cplx(0, 0)) ++zeros;
  std::vector<Cplx> roots(zeros, Cplx(0, 0));
  c.erase(c.begin(), c.begin() + zeros);
  if (c.size() <= 1) return roots;
  const std::size_t D = c.size() - 1;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(D, D);
  for (std::size_t k = 0; k < D; ++k) M(0, k) = -c[D - 1 - k] / c[D];
  for (std::size_t k = 1; k < D; ++k) M(k, k - 1) = 1;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::SolveFailure, "eigenvalue iteration did not converge");
  for (std::size_t k = 0; k < D; ++k) roots.push_back(es.eigenvalues()(k));
  return roots;
}

namespace {

// Coefficient stored as exp(logmag) * unit.
struct LogCoeff {
  double logmag = -std::numeric_limits<double>::infinity();
  Cplx unit = 0;
  void add(double lm, Cplx u) {
    if (u == Cplx(0, 0)) return;
    if (lm > logmag) {
      unit = unit * std::exp(logmag - lm) + u;
      logmag = lm;
    } else {
      unit += u * std::exp(lm - logmag);
    }
  }
  double log_abs() const { return unit == Cplx(0, 0) ? -std::numeric_limits<double>::infinity() : logmag + std::log(std::abs(unit)); }
};

Cplx horner(const std::vector<Cplx>& c, Cplx w, Cplx* deriv) {
  Cplx p = 0, d = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    d = d * w + p;
    p = p * w + c[k];
  }
  if (deriv) *deriv = d;
  return p;
}

// log-moduli of all roots of sum exp(lc_k) w^k, via tropical scaling per Newton segment.
bool scaled_roots(const std::vector<LogCoeff>& lc, std::vector<double>& logmods) {
  std::vector<std::pair<std::size_t, double>> pts;
  for (std::size_t k = 0; k < lc.size(); ++k)
    if (std::isfinite(lc[k].log_abs())) pts.push_back({k, lc[k].log_abs()});
  if (pts.size() < 2) return true;
  // upper hull
  std::vector<std::pair<std::size_t, double>> hull;
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull.back();
      double cross = (double(b.first) - a.first) * (p.second - a.second) - (b.second - a.second) * (double(p.first) - a.first);
      if (cross >= 0) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  bool ok = true;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    std::size_t k1 = hull[h].first, k2 = hull[h + 1].first;
    double lambda = -(hull[h + 1].second - hull[h].second) / double(k2 - k1);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lc.size(); ++k) top = std::max(top, lc[k].log_abs() + k * lambda);
    std::vector<Cplx> c(lc.size());
    for (std::size_t k = 0; k < lc.size(); ++k)
      if (lc[k].unit != Cplx(0, 0)) {
        double e = lc[k].logmag + k * lambda - top;
        c[k] = e < -700 ? Cplx(0, 0) : lc[k].unit * std::exp(e);
      }
    auto roots = polynomial_roots(c);
    std::sort(roots.begin(), roots.end(), [](Cplx a, Cplx b) {
      double la = a == Cplx(0, 0) ? 1e300 : std::abs(std::log(std::abs(a)));
      double lb = b == Cplx(0, 0) ? 1e300 : std::abs(std::log(std::abs(b)));
      return la < lb;
    });
    if (roots.size() < k2 - k1) return false;
    for (std::size_t k = 0; k < k2 - k1; ++k) {
      Cplx w = roots[k];
      // Newton polish on the scaled polynomial
      for (int it = 0; it < 50; ++it) {
        Cplx d;
        Cplx p = horner(c, w, &d);
        if (d == Cplx(0, 0)) break;
        Cplx step = p / d;
        w -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(w))) break;
      }
      double resid = std::abs(horner(c, w, nullptr));
      double wp = 0;
      for (std::size_t q = 0; q < c.size(); ++q) wp += std::abs(c[q]) * std::pow(std::abs(w), double(q));
      if (!(resid <= 1e-10 * wp) || w == Cplx(0, 0)) ok = false;
      else logmods.push_back(std::log(std::abs(w)) + lambda);
    }
  }
  return ok;
}

}  // namespace

AmoebaSample sample_amoeba(const MonomialSystem& sys, std::size_t i, double L, double lo, double hi, std::size_t grid,
                           std::size_t phases, unsigned seed) {
  const std::size_t n = sys.n();
  if (n == 0) fail(ErrorCode::Validation, "ambient dimension 0");
  if (!(hi > lo) || grid == 0 || phases == 0) fail(ErrorCode::Validation, "empty sampling box");
  const Factor& f = sys.factor(i);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI);
  AmoebaSample out;
  const std::size_t others = n - 1;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < others; ++k) combos *= grid;
  int emin = std::numeric_limits<int>::max(), emax = std::numeric_limits<int>::min();
  for (auto& a : f.monomials) {
    emin = std::min(emin, static_cast<int>(a[n - 1].get_si()));
    emax = std::max(emax, static_cast<int>(a[n - 1].get_si()));
  }
  for (std::size_t combo = 0; combo < combos; ++combo) {
    RealVec x(others);
    std::size_t q = combo;
    for (std::size_t k = 0; k < others; ++k) {
      x[k] = lo + (hi - lo) * (double(q % grid) + 0.5) / double(grid);
      q /= grid;
    }
    for (std::size_t ph = 0; ph < (others ? phases : 1); ++ph) {
      RealVec theta(others);
      for (auto& th : theta) th = angle(rng);
      std::vector<LogCoeff> lc(emax - emin + 1);
      for (std::size_t a = 0; a < f.monomials.size(); ++a) {
        double lm = -f.heights[a].get_d() * L;
        double arg = 0;
        for (std::size_t k = 0; k < others; ++k) {
          double e = f.monomials[a][k].get_d();
          lm += e * x[k] * L;
          arg += e * theta[k];
        }
        Cplx c = f.coeffs.empty() ? Cplx(1, 0) : Cplx(f.coeffs[a].first.get_d(), f.coeffs[a].second.get_d());
        lc[f.monomials[a][n - 1].get_si() - emin].add(lm, c * std::polar(1.0, arg));
      }
      ++out.solves;
      std::vector<double> logmods;
      if (!scaled_roots(lc, logmods)) ++out.failures;
      for (double lmz : logmods) {
        double xs = lmz / L;
        if (xs < lo || xs > hi) continue;
        RealVec p = x;
        p.push_back(xs);
        out.points.push_back(p);
      }
    }
  }
  return out;
}

GapReport gap_bound_check(const MonomialSystem& sys, std::size_t i, double L, const std::vector<RealVec>& samples,
                          double slack, bool throw_on_violation) {
  const Factor& f = sys.factor(i);
  for (auto& c : f.coeffs)
    if (std::abs(std::hypot(c.first.get_d(), c.second.get_d()) - 1.0) > 1e-15)
      fail(ErrorCode::Validation, "gap bound needs unit coefficients");
  GapReport r;
  r.bound = std::log(double(f.monomials.size()) - 1.0) / L;
  for (auto& x : samples) {
    auto l = affine_values(sys, i, x);
    std::sort(l.rbegin(), l.rend());
    double gap = l[0] - l[1];
    ++r.samples;
    if (r.worst.empty() || gap > r.max_gap) {
      r.max_gap = gap;
      r.worst = x;
    }
    if (gap > r.bound + slack) ++r.violations;
  }
  if (throw_on_violation && r.violations > 0) {
    std::string w;
    for (double v : r.worst) w += (w.empty() ? "" : ",") + std::to_string(v);
    fail(ErrorCode::BoundViolated, "gap " + std::to_string(r.max_gap) + " at (" + w + ") exceeds " + std::to_string(r.bound));
  }
  return r;
}

double distance_to_tropical(const MonomialSystem& sys, std::size_t i, const RealVec& x) {
  const Factor& f = sys.factor(i);
  const std::size_t m = f.monomials.size();
  auto ell = [&](std::size_t a, const RealVec& y) {
    double v = -f.heights[a].get_d();
    for (std::size_t j = 0; j < y.size(); ++j) v += f.monomials[a][j].get_d() * y[j];
    return v;
  };
  double best = std::numeric_limits<double>::infinity();
  if (sys.n() == 1) {
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        double da = f.monomials[a][0].get_d() - f.monomials[b][0].get_d();
        double y = (f.heights[a].get_d() - f.heights[b].get_d()) / da;
        bool ok = true;
        for (std::size_t c = 0; c < m; ++c)
          if (ell(c, {y}) > ell(a, {y}) + 1e-12) ok = false;
        if (ok) best = std::min(best, std::abs(x[0] - y));
      }
    return best;
  }
  if (sys.n() != 2) fail(ErrorCode::Validation, "distance oracle implemented for n <= 2");
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      double u0 = f.monomials[a][0].get_d() - f.monomials[b][0].get_d();
      double u1 = f.monomials[a][1].get_d() - f.monomials[b][1].get_d();
      double rhs = f.heights[a].get_d() - f.heights[b].get_d();
      double uu = u0 * u0 + u1 * u1;
      RealVec p{rhs * u0 / uu, rhs * u1 / uu}, d{-u1, u0};
      double smin = -std::numeric_limits<double>::infinity(), smax = std::numeric_limits<double>::infinity();
      bool empty = false;
      for (std::size_t c = 0; c < m && !empty; ++c) {
        // l_a - l_c >= 0 along p + s d: alpha + beta s >= 0
        double alpha = ell(a, p) - ell(c, p);
        double beta = (f.monomials[a][0].get_d() - f.monomials[c][0].get_d()) * d[0] +
                      (f.monomials[a][1].get_d() - f.monomials[c][1].get_d()) * d[1];
        if (std::abs(beta) < 1e-15) {
          if (alpha < -1e-12) empty = true;
        } else if (beta > 0) {
          smin = std::max(smin, -alpha / beta);
        } else {
          smax = std::min(smax, -alpha / beta);
        }
      }
      if (empty || smin > smax + 1e-12) continue;
      double s = ((x[0] - p[0]) * d[0] + (x[1] - p[1]) * d[1]) / (d[0] * d[0] + d[1] * d[1]);
      s = std::clamp(s, smin, smax);
      best = std::min(best, std::hypot(x[0] - p[0] - s * d[0], x[1] - p[1] - s * d[1]));
    }
  return best;
}

ConvexPotential quadratic_potential() {
  ConvexPotential p;
  p.name = "quadratic";
  p.value = [](const RealVec& x) {
    double s = 0;
    for (double v : x) s += v * v;
    return s / 2;
  };
  p.gradient = [](const RealVec& x) { return x; };
  p.hessian = [](const RealVec& x) {
    std::vector<RealVec> H(x.size(), RealVec(x.size(), 0.0));
    for (std::size_t k = 0; k < x.size(); ++k) H[k][k] = 1;
    return H;
  };
  return p;
}

ConvexPotential quadratic_exp_potential() {
  ConvexPotential p = quadratic_potential();
  p.name = "quadratic_exp";
  auto q = quadratic_potential();
  p.value = [q](const RealVec& x) { return q.value(x) + std::exp(x.at(0)); };
  p.gradient = [](const RealVec& x) {
    RealVec g = x;
    g.at(0) += std::exp(x[0]);
    return g;
  };
  p.hessian = [q](const RealVec& x) {
    auto H = q.hessian(x);
    H[0][0] += std::exp(x[0]);
    return H;
  };
  return p;
}

ConvexPotential softplus_potential() {
  ConvexPotential p;
  p.name = "softplus";
  auto sp = [](double v) { return v > 30 ? v + std::log1p(std::exp(-v)) : std::log1p(std::exp(v)); };
  auto sig = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  p.value = [sp](const RealVec& x) {
    double s = 0;
    for (double v : x) s += sp(v) + v * v / 4;
    return s;
  };
  p.gradient = [sig](const RealVec& x) {
    RealVec g(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) g[k] = sig(x[k]) + x[k] / 2;
    return g;
  };
  p.hessian = [sig](const RealVec& x) {
    std::vector<RealVec> H(x.size(), RealVec(x.size(), 0.0));
    for (std::size_t k = 0; k < x.size(); ++k) H[k][k] = sig(x[k]) * (1 - sig(x[k])) + 0.5;
    return H;
  };
  return p;
}

std::vector<ConvexPotential> builtin_potentials() {
  return {quadratic_potential(), quadratic_exp_potential(), softplus_potential()};
}

std::vector<RealVec> tangent_basis(const Stratum& s, std::size_t n) {
  std::vector<RealVec> span;
  if (s.equalities.empty()) {
    for (std::size_t k = 0; k < n; ++k) {
      RealVec e(n, 0.0);
      e[k] = 1;
      span.push_back(e);
    }
  } else {
    RatMatrix M(s.equalities.size(), n);
    for (std::size_t r = 0; r < s.equalities.size(); ++r)
      for (std::size_t j = 0; j < n; ++j) M(r, j) = s.equalities[r].a[j];
    for (auto& v : nullspace(M)) {
      RealVec d;
      for (auto& q : v) d.push_back(q.get_d());
      span.push_back(d);
    }
  }
  // Gram-Schmidt
  std::vector<RealVec> Q;
  for (auto v : span) {
    for (auto& q : Q) {
      double dot = 0;
      for (std::size_t k = 0; k < n; ++k) dot += v[k] * q[k];
      for (std::size_t k = 0; k < n; ++k) v[k] -= dot * q[k];
    }
    double nv = norm(v);
    if (nv < 1e-12) continue;
    for (auto& x : v) x /= nv;
    Q.push_back(v);
  }
  return Q;
}

RealVec local_moment(const ConvexPotential& phi, const Stratum& tau, const RealVec& x) {
  RealVec g = phi.gradient(x);
  RealVec out;
  for (auto& q : tangent_basis(tau, x.size())) {
    double s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += q[k] * g[k];
    out.push_back(s);
  }
  return out;
}

GradientCheck finite_difference_check(const ConvexPotential& phi, std::size_t n, std::size_t points, unsigned seed,
                                      double h) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-2, 2);
  GradientCheck r;
  for (std::size_t p = 0; p < points; ++p) {
    RealVec x(n);
    for (auto& v : x) v = U(rng);
    RealVec g = phi.gradient(x);
    auto H = phi.hessian(x);
    for (std::size_t k = 0; k < n; ++k) {
      RealVec xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      double fd = (phi.value(xp) - phi.value(xm)) / (2 * h);
      r.max_relative_error = std::max(r.max_relative_error, std::abs(fd - g[k]) / std::max(1.0, std::abs(g[k])));
      RealVec gp = phi.gradient(xp), gm = phi.gradient(xm);
      for (std::size_t j = 0; j < n; ++j) {
        double hd = (gp[j] - gm[j]) / (2 * h);
        r.max_relative_error = std::max(r.max_relative_error, std::abs(hd - H[j][k]) / std::max(1.0, std::abs(H[j][k])));
      }
    }
    ++r.points;
  }
  return r;
}

}  // namespace tropmirror
