#include "tropmirror/foliation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace tropmirror {

namespace {

double dist(const RealVec& a, const RealVec& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

RealVec to_real(const RatVector& v) {
  RealVec out;
  for (auto& q : v) out.push_back(q.get_d());
  return out;
}

}  // namespace

FoliationSystem::FoliationSystem(MonomialSystem sys, TropicalComplex tc, ConvexPotential phi, FoliationParams p)
    : sys_(std::move(sys)), tc_(std::move(tc)), phi_(std::move(phi)), p_(p) {
  const std::size_t n = sys_.n();
  for (auto& s : tc_.strata) {
    auto Q = tangent_basis(s, n);
    std::vector<RealVec> N;
    for (std::size_t k = 0; k < n && Q.size() + N.size() < n; ++k) {
      RealVec v(n, 0.0);
      v[k] = 1;
      for (auto* basis : {&Q, &N})
        for (auto& q : *basis) {
          double d = 0;
          for (std::size_t j = 0; j < n; ++j) d += v[j] * q[j];
          for (std::size_t j = 0; j < n; ++j) v[j] -= d * q[j];
        }
      double nv = 0;
      for (double x : v) nv += x * x;
      nv = std::sqrt(nv);
      if (nv < 1e-9) continue;
      for (auto& x : v) x /= nv;
      N.push_back(v);
    }
    tangent_.push_back(Q);
    normal_.push_back(N);
    anchor_.push_back(to_real(s.witness));
  }
}

bool FoliationSystem::on_stratum(std::size_t tau, const RealVec& y, bool closed) const {
  const Stratum& s = tc_.strata.at(tau);
  for (auto& c : s.equalities) {
    double v = -c.b.get_d();
    for (std::size_t j = 0; j < y.size(); ++j) v += c.a[j].get_d() * y[j];
    if (std::abs(v) > p_.tol) return false;
  }
  for (auto& c : s.inequalities) {
    double v = -c.b.get_d();
    for (std::size_t j = 0; j < y.size(); ++j) v += c.a[j].get_d() * y[j];
    if (closed ? v > p_.tol : v >= 0) return false;
  }
  return true;
}

bool FoliationSystem::in_U(double delta, std::size_t tau, const RealVec& y, bool closed) const {
  double r = std::pow(eps(), delta);
  const ActiveTuple& act = tc_.strata.at(tau).active;
  for (std::size_t i = 0; i < act.size(); ++i) {
    auto l = affine_values(sys_, i, y);
    double top = *std::max_element(l.begin(), l.end());
    for (auto a : act[i]) {
      double d = top - l[a];
      if (closed ? d > r + p_.tol : d >= r) return false;
    }
  }
  return true;
}

std::optional<std::size_t> FoliationSystem::v_stratum(const RealVec& y) const {
  return region_membership(sys_, tc_, y, p_.log_t, 0.5).v_stratum;
}

bool FoliationSystem::in_V_geq(std::size_t tau, const RealVec& y) const {
  auto s = v_stratum(y);
  return s && tc_.leq(tau, *s);
}

bool FoliationSystem::in_base(std::size_t tau, const RealVec& x) const {
  if (!on_stratum(tau, x)) return false;
  for (std::size_t s = 0; s < tc_.strata.size(); ++s)
    if (tc_.below[s][tau] && in_U(p_.delta2, s, x, true)) return false;
  return true;
}

RealVec FoliationSystem::moment(std::size_t tau, const RealVec& y) const {
  RealVec g = phi_.gradient(y);
  RealVec out;
  for (auto& q : tangent_[tau]) {
    double s = 0;
    for (std::size_t k = 0; k < y.size(); ++k) s += q[k] * g[k];
    out.push_back(s);
  }
  return out;
}

std::optional<RealVec> FoliationSystem::foot(std::size_t tau, const RealVec& y) const {
  const auto& Q = tangent_[tau];
  const RealVec& p = anchor_[tau];
  const std::size_t n = y.size(), k = Q.size();
  if (k == 0) return p;
  RealVec target = moment(tau, y);
  Eigen::VectorXd s(k);
  for (std::size_t a = 0; a < k; ++a) {
    s(a) = 0;
    for (std::size_t j = 0; j < n; ++j) s(a) += Q[a][j] * (y[j] - p[j]);
  }
  auto point = [&](const Eigen::VectorXd& sv) {
    RealVec x = p;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t j = 0; j < n; ++j) x[j] += sv(a) * Q[a][j];
    return x;
  };
  for (int it = 0; it < 60; ++it) {
    RealVec x = point(s);
    RealVec m = moment(tau, x);
    Eigen::VectorXd F(k);
    double res = 0;
    for (std::size_t a = 0; a < k; ++a) {
      F(a) = m[a] - target[a];
      res = std::max(res, std::abs(F(a)));
    }
    if (res < 1e-14 * (1 + std::abs(target.empty() ? 0 : target[0]))) return x;
    auto H = phi_.hessian(x);
    Eigen::MatrixXd J(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        double v = 0;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) v += Q[a][i] * H[i][j] * Q[b][j];
        J(a, b) = v;
      }
    s -= J.ldlt().solve(F);
  }
  RealVec x = point(s);
  RealVec m = moment(tau, x);
  for (std::size_t a = 0; a < k; ++a)
    if (std::abs(m[a] - target[a]) > 1e-10) return std::nullopt;
  return x;
}

std::optional<RealVec> FoliationSystem::pre_projection(std::size_t tau, const RealVec& y) const {
  if (!in_U(p_.delta1, tau, y) || !in_V_geq(tau, y)) return std::nullopt;
  auto x = foot(tau, y);
  if (!x || !in_base(tau, *x)) return std::nullopt;
  return x;
}

double FoliationSystem::leaf_radius() const { return 2.0 * std::pow(eps(), p_.delta1); }

std::vector<RealVec> FoliationSystem::fiber_points(std::size_t tau, const RealVec& x, double radius) const {
  const auto& N = normal_[tau];
  const auto& Q = tangent_[tau];
  const std::size_t n = x.size(), m = N.size();
  std::vector<RealVec> out;
  if (m == 0) return {x};
  std::size_t G = p_.fiber_grid;
  if (m >= 2) G = std::max<std::size_t>(5, static_cast<std::size_t>(std::pow(double(p_.fiber_grid * p_.fiber_grid / 4), 1.0 / m)));
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= G;
  RealVec target = moment(tau, x);
  for (std::size_t idx = 0; idx < total; ++idx) {
    RealVec y = x;
    std::size_t q = idx;
    for (std::size_t k = 0; k < m; ++k) {
      double off = -radius + 2 * radius * double(q % G) / double(G - 1);
      q /= G;
      for (std::size_t j = 0; j < n; ++j) y[j] += off * N[k][j];
    }
    // tangential correction back onto the moment fiber
    bool ok = true;
    for (int it = 0; it < 60 && !Q.empty(); ++it) {
      RealVec mval = moment(tau, y);
      double res = 0;
      Eigen::VectorXd F(Q.size());
      for (std::size_t a = 0; a < Q.size(); ++a) {
        F(a) = mval[a] - target[a];
        res = std::max(res, std::abs(F(a)));
      }
      if (res < 1e-13) break;
      auto H = phi_.hessian(y);
      Eigen::MatrixXd J(Q.size(), Q.size());
      for (std::size_t a = 0; a < Q.size(); ++a)
        for (std::size_t b = 0; b < Q.size(); ++b) {
          double v = 0;
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) v += Q[a][i] * H[i][j] * Q[b][j];
          J(a, b) = v;
        }
      Eigen::VectorXd ds = J.ldlt().solve(F);
      for (std::size_t a = 0; a < Q.size(); ++a)
        for (std::size_t j = 0; j < n; ++j) y[j] -= ds(a) * Q[a][j];
      if (it == 59) ok = false;
    }
    if (ok) out.push_back(y);
  }
  return out;
}

std::vector<RealVec> FoliationSystem::leaf_points(std::size_t tau, const RealVec& x) const {
  std::vector<RealVec> out;
  for (auto& y : fiber_points(tau, x, leaf_radius())) {
    auto f = projection(tau, y);
    if (f && dist(*f, x) <= 1e-6) out.push_back(y);
  }
  return out;
}

std::optional<RealVec> FoliationSystem::projection(std::size_t tau, const RealVec& y) const {
  if (auto x = pre_projection(tau, y)) return x;
  // correction: y lies on a higher leaf that meets the pre-leaf of tau
  std::vector<std::size_t> higher;
  for (std::size_t s = 0; s < tc_.strata.size(); ++s)
    if (tc_.below[tau][s]) higher.push_back(s);
  std::sort(higher.begin(), higher.end(), [&](std::size_t a, std::size_t b) {
    return tc_.strata[a].dim != tc_.strata[b].dim ? tc_.strata[a].dim > tc_.strata[b].dim : a < b;
  });
  for (auto s : higher) {
    auto xs = projection(s, y);
    if (!xs) continue;
    for (auto& z : fiber_points(s, *xs, leaf_radius())) {
      auto back = pre_projection(s, z);
      if (!back || dist(*back, *xs) > 1e-6) continue;
      if (auto x = pre_projection(tau, z)) return x;
    }
  }
  return std::nullopt;
}

std::vector<RealVec> FoliationSystem::sample_on(std::size_t tau, std::size_t count, bool closure) const {
  const auto& Q = tangent_[tau];
  const RealVec& p = anchor_[tau];
  const std::size_t n = p.size(), k = Q.size();
  std::vector<RealVec> pts;
  auto keep = [&](const RealVec& x) {
    for (double v : x)
      if (std::abs(v) > p_.box) return false;
    return closure ? on_stratum(tau, x, true) : in_base(tau, x);
  };
  if (k == 0) {
    if (keep(p)) pts.push_back(p);
    return pts;
  }
  // dense grid on the affine span, thinned to `count` points
  std::size_t G = k == 1 ? 4 * count : static_cast<std::size_t>(std::ceil(std::pow(4.0 * count, 1.0 / k)));
  double R = p_.box * std::sqrt(double(n)) + 1;
  std::size_t total = 1;
  for (std::size_t a = 0; a < k; ++a) total *= G;
  for (std::size_t idx = 0; idx < total; ++idx) {
    RealVec x = p;
    std::size_t q = idx;
    for (std::size_t a = 0; a < k; ++a) {
      double s = -R + 2 * R * (double(q % G) + 0.5) / double(G);
      q /= G;
      for (std::size_t j = 0; j < n; ++j) x[j] += s * Q[a][j];
    }
    if (keep(x)) pts.push_back(x);
  }
  if (pts.size() <= count) return pts;
  std::vector<RealVec> thin;
  for (std::size_t c = 0; c < count; ++c) thin.push_back(pts[c * pts.size() / count]);
  return thin;
}

std::vector<RealVec> FoliationSystem::sample_base(std::size_t tau, std::size_t count) const {
  return sample_on(tau, count, false);
}

std::vector<RealVec> FoliationSystem::sample_closure(std::size_t tau, std::size_t count) const {
  return sample_on(tau, count, true);
}

FoliationSystem build_foliation(const MonomialSystem& sys, const ConvexPotential& phi, const FoliationParams& p) {
  if (!(0 < p.delta1 && p.delta1 < p.delta2 && p.delta2 < 0.5))
    fail(ErrorCode::Validation, "need 0 < delta1 < delta2 < 1/2");
  if (!(p.log_t > 0)) fail(ErrorCode::Validation, "need t > 1");
  FoliationSystem fs(sys, build_stratification(sys), phi, p);
  const auto& tc = fs.complex();
  double r = std::sqrt(fs.eps()) * 2;
  for (std::size_t tau = 0; tau < tc.strata.size(); ++tau) {
    if (tc.strata[tau].dim == sys.n()) continue;
    for (auto& x : fs.sample_base(tau, 20))
      for (auto& y : fs.fiber_points(tau, x, r)) {
        if (!fs.in_U(0.5, tau, y)) continue;
        auto v = fs.v_stratum(y);
        if (!v || *v != tau) fail(ErrorCode::TooSmallT, "fiber slice through a base point leaves V; increase t");
      }
  }
  return fs;
}

FoliationReport check_foliation(const FoliationSystem& fs, std::size_t samples) {
  FoliationReport rep;
  const auto& tc = fs.complex();
  const std::size_t n = tc.n;
  auto note = [&](bool& flag, const std::string& s) {
    if (rep.first_failure.empty()) rep.first_failure = s;
    flag = false;
  };
  // (1) S_{x,tau} within T_x within S_{x,>=tau}
  for (std::size_t tau = 0; tau < tc.strata.size(); ++tau) {
    if (tc.strata[tau].dim == n) continue;
    for (auto& x : fs.sample_base(tau, samples))
      for (auto& y : fs.fiber_points(tau, x, fs.leaf_radius())) {
        ++rep.sandwich_checks;
        auto f = fs.projection(tau, y);
        bool in_leaf = f && dist(*f, x) <= fs.params().tol * 100;
        if (fs.in_U(0.5, tau, y) && !in_leaf) note(rep.sandwich, "stratum " + std::to_string(tau) + ": U-slice not in leaf");
        if (in_leaf) {
          if (!fs.in_V_geq(tau, y)) note(rep.sandwich, "stratum " + std::to_string(tau) + ": leaf leaves V>=tau");
          rep.max_leaf_offset = std::max(rep.max_leaf_offset, dist(y, x));
        }
      }
  }
  // (2) closure of tau covered by leaves of lower strata
  for (std::size_t tau = 0; tau < tc.strata.size(); ++tau)
    for (auto& p : fs.sample_closure(tau, samples)) {
      ++rep.coverage_checks;
      bool covered = false;
      for (std::size_t s = 0; s < tc.strata.size() && !covered; ++s)
        if (tc.leq(s, tau) && fs.projection(s, p)) covered = true;
      if (!covered) note(rep.coverage, "stratum " + std::to_string(tau) + ": closure point not covered");
    }
  // (3) a higher leaf meeting a lower leaf lies inside it
  const double wide = fs.params().delta1 / 2;
  for (std::size_t hi = 0; hi < tc.strata.size(); ++hi) {
    if (tc.strata[hi].dim == n) continue;
    std::size_t used = 0;
    for (auto& xh : fs.sample_base(hi, 4 * samples)) {
      // only base points close enough to a lower stratum for the leaves to meet
      bool near = false;
      for (std::size_t lo = 0; lo < tc.strata.size() && !near; ++lo)
        near = tc.below[lo][hi] && fs.in_U(wide, lo, xh);
      if (!near || used++ >= samples / 4) continue;
      auto leaf = fs.leaf_points(hi, xh);
      for (std::size_t lo = 0; lo < tc.strata.size(); ++lo) {
        if (!tc.below[lo][hi]) continue;
        std::optional<RealVec> meet;
        for (auto& y : leaf)
          if ((meet = fs.projection(lo, y))) break;
        if (!meet) continue;
        for (auto& y : leaf) {
          ++rep.nesting_checks;
          auto f = fs.projection(lo, y);
          if (!f || dist(*f, *meet) > 1e-6)
            note(rep.nesting, "leaf of stratum " + std::to_string(hi) + " not nested in stratum " + std::to_string(lo));
        }
      }
    }
  }
  return rep;
}

namespace {

struct CurveEval {
  Eigen::Vector2d F;
  Eigen::Matrix<double, 2, 4> J;
};

// W^chi_t scaled by t^{-M}, in coordinates z_j = exp(L (x_j + i theta_j)).
CurveEval curve_eval(const MonomialSystem& sys, double L, const RealVec& x, const RealVec& th, double M) {
  const Factor& f = sys.factor(0);
  auto l = affine_values(sys, 0, x);
  std::size_t top = std::max_element(l.begin(), l.end()) - l.begin();
  double scale = std::sqrt(1.0 / L);
  std::complex<double> F = 0;
  std::complex<double> dx[2] = {0, 0}, dth[2] = {0, 0};
  for (std::size_t a = 0; a < f.monomials.size(); ++a) {
    double d = l[top] - l[a];
    double chi = bump(d / scale), dchi = bump_derivative(d / scale) / scale;
    if (chi == 0 && dchi == 0) continue;
    double phase = 0;
    for (int j = 0; j < 2; ++j) phase += f.monomials[a][j].get_d() * th[j] * L;
    Cplx c = f.coeffs.empty() ? Cplx(1, 0) : Cplx(f.coeffs[a].first.get_d(), f.coeffs[a].second.get_d());
    Cplx T = c * std::polar(std::exp(L * (l[a] - M)), phase);
    F += chi * T;
    for (int j = 0; j < 2; ++j) {
      double aj = f.monomials[a][j].get_d();
      double dd = f.monomials[top][j].get_d() - aj;  // gradient of d(x, C_a)
      dx[j] += dchi * dd * T + chi * T * (L * aj);
      dth[j] += chi * T * Cplx(0, L * aj);
    }
  }
  CurveEval e;
  e.F << F.real(), F.imag();
  for (int j = 0; j < 2; ++j) {
    e.J(0, j) = dx[j].real();
    e.J(1, j) = dx[j].imag();
    e.J(0, 2 + j) = dth[j].real();
    e.J(1, 2 + j) = dth[j].imag();
  }
  return e;
}

double top_value(const MonomialSystem& sys, const RealVec& x) {
  auto l = affine_values(sys, 0, x);
  return *std::max_element(l.begin(), l.end());
}

bool project_to_curve(const MonomialSystem& sys, double L, RealVec& x, RealVec& th, double& residual) {
  for (int it = 0; it < 30; ++it) {
    CurveEval e = curve_eval(sys, L, x, th, top_value(sys, x));
    residual = e.F.norm();
    if (residual < 1e-12) return true;
    Eigen::Matrix2d JJ = e.J * e.J.transpose();
    Eigen::Vector4d step = e.J.transpose() * JJ.fullPivLu().solve(e.F);
    for (int j = 0; j < 2; ++j) {
      x[j] -= step(j);
      th[j] -= step(2 + j);
    }
  }
  return residual < 1e-9;
}

}  // namespace

TrapReport trap_check(const FoliationSystem& fs, const MonomialSystem& sys, const std::function<RealVec(const RealVec&)>& grad_g,
                      const RealVec& x0, const RealVec& theta0, std::size_t steps, double dt) {
  if (sys.n() != 2 || sys.r() != 1) fail(ErrorCode::Validation, "trap check needs a curve in the plane");
  const double L = fs.params().log_t;
  const ConvexPotential phi = quadratic_potential();
  RealVec x = x0, th = theta0;
  TrapReport rep;
  double res = 0;
  if (!project_to_curve(sys, L, x, th, res)) fail(ErrorCode::IntegrationDrift, "start point does not project to the curve");
  auto v = fs.v_stratum(x);
  if (!v) fail(ErrorCode::Validation, "start point is in no V stratum");
  // the lowest stratum whose leaf contains the start point
  bool found = false;
  for (std::size_t s = 0; s < fs.complex().strata.size() && !found; ++s)
    if (auto f = fs.projection(s, x)) {
      rep.stratum = s;
      rep.foot = *f;
      found = true;
    }
  if (!found) fail(ErrorCode::Validation, "start point lies on no leaf");
  RealVec m0 = fs.moment(rep.stratum, x);

  auto field = [&](const RealVec& xs, const RealVec& ts) {
    CurveEval e = curve_eval(sys, L, xs, ts, top_value(sys, xs));
    Eigen::FullPivLU<Eigen::Matrix<double, 2, 4>> lu(e.J);
    Eigen::MatrixXd K = lu.kernel();
    if (K.cols() != 2) fail(ErrorCode::IntegrationDrift, "curve is singular along the path");
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
    Eigen::MatrixXd V = qr.householderQ() * Eigen::MatrixXd::Identity(4, 2);
    Eigen::Matrix2d H = Eigen::Matrix2d::Identity();
    Eigen::Matrix4d Om = Eigen::Matrix4d::Zero();
    Om.block<2, 2>(0, 2) = H;
    Om.block<2, 2>(2, 0) = -H;
    Eigen::Matrix2d W = V.transpose() * Om * V;
    RealVec g = grad_g(xs);
    Eigen::Vector2d b;
    for (int j = 0; j < 2; ++j) b(j) = g[0] * V(0, j) + g[1] * V(1, j);
    if (std::abs(W(0, 1)) < 1e-12) fail(ErrorCode::IntegrationDrift, "restricted form degenerates");
    Eigen::Vector2d c = W.transpose().fullPivLu().solve(b);
    return Eigen::Vector4d(V * c);
  };

  rep.trajectory.push_back(x);
  for (std::size_t step = 0; step < steps; ++step) {
    auto at = [&](const Eigen::Vector4d& d, double h) {
      RealVec xs{x[0] + h * d(0), x[1] + h * d(1)}, ts{th[0] + h * d(2), th[1] + h * d(3)};
      return field(xs, ts);
    };
    Eigen::Vector4d k1 = field(x, th);
    Eigen::Vector4d k2 = at(k1, dt / 2), k3 = at(k2, dt / 2), k4 = at(k3, dt);
    Eigen::Vector4d d = (k1 + 2 * k2 + 2 * k3 + k4) / 6;
    for (int j = 0; j < 2; ++j) {
      x[j] += dt * d(j);
      th[j] += dt * d(2 + j);
    }
    if (!project_to_curve(sys, L, x, th, res)) fail(ErrorCode::IntegrationDrift, "left the curve at step " + std::to_string(step));
    rep.max_residual = std::max(rep.max_residual, res);
    RealVec m = fs.moment(rep.stratum, x);
    for (std::size_t a = 0; a < m.size(); ++a) rep.max_moment_drift = std::max(rep.max_moment_drift, std::abs(m[a] - m0[a]));
    auto f = fs.projection(rep.stratum, x);
    if (!f || dist(*f, rep.foot) > 1e-6) rep.stayed_in_leaf = false;
    rep.trajectory.push_back(x);
    ++rep.steps;
  }
  (void)phi;
  return rep;
}

}  // namespace tropmirror
