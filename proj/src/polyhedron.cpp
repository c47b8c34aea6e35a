#include "tropmirror/polyhedron.hpp"

#include <algorithm>
#include <set>

namespace tropmirror {

namespace {

// Tableau for min c.y, A y = b, y >= 0, b >= 0.
class Simplex {
 public:
  Simplex(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), T_(rows, cols + 1), obj_(cols + 1), basis_(rows) {}

  Rational& a(std::size_t r, std::size_t c) { return T_(r, c); }
  Rational& rhs(std::size_t r) { return T_(r, n_); }
  std::vector<std::size_t>& basis() { return basis_; }

  // reduced costs for the cost vector c (length n_)
  void set_cost(const RatVector& c) {
    cost_ = c;
    for (std::size_t j = 0; j <= n_; ++j) obj_[j] = j < n_ ? c[j] : Rational(0);
    for (std::size_t r = 0; r < m_; ++r) {
      const Rational& cb = c[basis_[r]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= n_; ++j)
        if (T_(r, j) != 0) obj_[j] -= cb * T_(r, j);
    }
  }

  // false if unbounded
  bool run(const std::vector<bool>& allowed) {
    while (true) {
      std::size_t enter = n_;
      for (std::size_t j = 0; j < n_; ++j)
        if (allowed[j] && obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == n_) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t r = 0; r < m_; ++r) {
        if (T_(r, enter) <= 0) continue;
        Rational ratio = T_(r, n_) / T_(r, enter);
        if (leave == m_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / T_(r, c);
    for (std::size_t j = 0; j <= n_; ++j)
      if (T_(r, j) != 0) T_(r, j) *= inv;
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= n_; ++j)
      if (T_(r, j) != 0) nz.push_back(j);
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || T_(i, c) == 0) continue;
      Rational f = T_(i, c);
      for (auto j : nz) T_(i, j) -= f * T_(r, j);
    }
    if (obj_[c] != 0) {
      Rational f = obj_[c];
      for (auto j : nz) obj_[j] -= f * T_(r, j);
    }
    basis_[r] = c;
  }

  Rational value() const { return -obj_[n_]; }

  void drop_row(std::size_t r) {
    RatMatrix T2(m_ - 1, n_ + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      for (std::size_t j = 0; j <= n_; ++j) T2(k, j) = T_(i, j);
      ++k;
    }
    T_ = std::move(T2);
    basis_.erase(basis_.begin() + static_cast<long>(r));
    --m_;
  }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  RatVector solution() const {
    RatVector y(n_, Rational(0));
    for (std::size_t r = 0; r < m_; ++r) y[basis_[r]] = T_(r, n_);
    return y;
  }

 private:
  std::size_t m_, n_;
  RatMatrix T_;
  RatVector obj_, cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const LpProblem& p) {
  const std::size_t n = p.nvars;
  const std::size_t L = p.le.size(), E = p.eq.size(), m = L + E;
  for (auto& c : p.le)
    if (c.a.size() != n) fail(ErrorCode::DimensionMismatch, "lp row");
  for (auto& c : p.eq)
    if (c.a.size() != n) fail(ErrorCode::DimensionMismatch, "lp row");

  // which rows need an artificial variable
  std::vector<bool> needs_art(m, false);
  std::vector<int> sign(m, 1);
  std::size_t nart = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const LinearConstraint& c = i < L ? p.le[i] : p.eq[i - L];
    if (c.b < 0) sign[i] = -1;
    needs_art[i] = i >= L || c.b < 0;
    if (needs_art[i]) ++nart;
  }
  const std::size_t ncols = 2 * n + L + nart;
  Simplex s(m, ncols);
  std::size_t art = 2 * n + L;
  for (std::size_t i = 0; i < m; ++i) {
    const LinearConstraint& c = i < L ? p.le[i] : p.eq[i - L];
    for (std::size_t j = 0; j < n; ++j) {
      if (c.a[j] == 0) continue;
      s.a(i, 2 * j) = sign[i] * c.a[j];
      s.a(i, 2 * j + 1) = -sign[i] * c.a[j];
    }
    if (i < L) s.a(i, 2 * n + i) = sign[i];
    s.rhs(i) = sign[i] * c.b;
    if (needs_art[i]) {
      s.a(i, art) = 1;
      s.basis()[i] = art++;
    } else {
      s.basis()[i] = 2 * n + i;
    }
  }

  std::vector<bool> allowed(ncols, true);
  if (nart > 0) {
    RatVector c1(ncols, Rational(0));
    for (std::size_t j = 2 * n + L; j < ncols; ++j) c1[j] = 1;
    s.set_cost(c1);
    s.run(allowed);
    if (s.value() != 0) return LpResult{LpStatus::Infeasible, 0, {}};
    // drive artificials out of the basis
    for (std::size_t r = 0; r < s.rows();) {
      if (s.basis()[r] < 2 * n + L) {
        ++r;
        continue;
      }
      std::size_t c = 2 * n + L;
      for (std::size_t j = 0; j < 2 * n + L; ++j)
        if (s.a(r, j) != 0) {
          c = j;
          break;
        }
      if (c == 2 * n + L) {
        s.drop_row(r);
      } else {
        s.pivot(r, c);
        ++r;
      }
    }
    for (std::size_t j = 2 * n + L; j < ncols; ++j) allowed[j] = false;
  }
  RatVector c2(ncols, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    c2[2 * j] = -p.objective[j];
    c2[2 * j + 1] = p.objective[j];
  }
  s.set_cost(c2);
  if (!s.run(allowed)) return LpResult{LpStatus::Unbounded, 0, {}};
  RatVector y = s.solution();
  RatVector x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = y[2 * j] - y[2 * j + 1];
  return LpResult{LpStatus::Optimal, dot(p.objective, x), x};
}

bool satisfies(const HSystem& h, const RatVector& x) {
  for (auto& c : h.eq)
    if (dot(c.a, x) != c.b) return false;
  for (auto& c : h.le)
    if (dot(c.a, x) > c.b) return false;
  for (auto& c : h.lt)
    if (dot(c.a, x) >= c.b) return false;
  return true;
}

std::optional<RatVector> interior_point(const HSystem& h) {
  const std::size_t n = h.dim;
  LpProblem p;
  p.nvars = n + 1;  // last variable: slack s
  auto ext = [&](const LinearConstraint& c, const Rational& s_coef) {
    LinearConstraint e{c.a, c.b};
    e.a.push_back(s_coef);
    return e;
  };
  for (auto& c : h.eq) p.eq.push_back(ext(c, 0));
  for (auto& c : h.le) p.le.push_back(ext(c, 0));
  for (auto& c : h.lt) p.le.push_back(ext(c, 1));
  LinearConstraint cap{RatVector(n + 1, Rational(0)), 1};
  cap.a[n] = 1;
  p.le.push_back(cap);
  p.objective.assign(n + 1, Rational(0));
  p.objective[n] = 1;
  LpResult r = solve_lp(p);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  if (!h.lt.empty() && r.value <= 0) return std::nullopt;
  RatVector x(r.x.begin(), r.x.begin() + static_cast<long>(n));
  return x;
}

std::size_t affine_dim(const std::vector<RatVector>& pts) {
  if (pts.empty()) return 0;
  RatMatrix m(pts.size() - 1, pts[0].size());
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts[0].size(); ++j) m(i - 1, j) = pts[i][j] - pts[0][j];
  return rank(m);
}

std::size_t affine_dim(const std::vector<IntVector>& pts) {
  std::vector<RatVector> q;
  for (auto& p : pts) q.push_back(to_rational(p));
  return affine_dim(q);
}

bool in_convex_hull(const RatVector& p, const std::vector<RatVector>& pts) {
  if (pts.empty()) return false;
  const std::size_t n = p.size(), k = pts.size();
  LpProblem lp;
  lp.nvars = k;
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint c{RatVector(k), p[j]};
    for (std::size_t i = 0; i < k; ++i) c.a[i] = pts[i][j];
    lp.eq.push_back(c);
  }
  LinearConstraint sum{RatVector(k, Rational(1)), 1};
  lp.eq.push_back(sum);
  for (std::size_t i = 0; i < k; ++i) {
    LinearConstraint nn{RatVector(k, Rational(0)), 0};
    nn.a[i] = -1;
    lp.le.push_back(nn);
  }
  lp.objective.assign(k, Rational(0));
  return solve_lp(lp).status == LpStatus::Optimal;
}

VRep vrep(std::size_t dim, const std::vector<LinearConstraint>& eq, const std::vector<LinearConstraint>& le) {
  VRep out;
  const std::size_t n = dim;
  {
    RatMatrix all(eq.size() + le.size(), n);
    std::size_t r = 0;
    for (auto* group : {&eq, &le})
      for (auto& c : *group) {
        for (std::size_t j = 0; j < n; ++j) all(r, j) = c.a[j];
        ++r;
      }
    out.lineality = nullspace(all);
  }
  std::vector<LinearConstraint> E = eq;
  for (auto& l : out.lineality) E.push_back({l, 0});
  RatMatrix Em(E.size(), n);
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) Em(i, j) = E[i].a[j];
  const std::size_t rE = rank(Em);
  const std::size_t k = n - rE;

  auto stacked = [&](const std::vector<std::size_t>& S) {
    RatMatrix M(E.size() + S.size(), n + 1);
    for (std::size_t i = 0; i < E.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) M(i, j) = E[i].a[j];
      M(i, n) = E[i].b;
    }
    for (std::size_t s = 0; s < S.size(); ++s) {
      for (std::size_t j = 0; j < n; ++j) M(E.size() + s, j) = le[S[s]].a[j];
      M(E.size() + s, n) = le[S[s]].b;
    }
    return M;
  };
  auto feasible = [&](const RatVector& x) {
    for (auto& c : eq)
      if (dot(c.a, x) != c.b) return false;
    for (auto& c : le)
      if (dot(c.a, x) > c.b) return false;
    return true;
  };

  std::set<RatVector> verts;
  if (k == 0) {
    RatMatrix M = stacked({});
    auto piv = rref(M);
    if (!piv.empty() && piv.back() == n) return out;  // inconsistent
    RatVector x(n, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(r, n);
    if (feasible(x)) verts.insert(x);
  } else {
    for_each_subset(le.size(), k, [&](const std::vector<std::size_t>& S) {
      RatMatrix M = stacked(S);
      auto piv = rref(M);
      if (!piv.empty() && piv.back() == n) return true;
      if (piv.size() != n) return true;
      RatVector x(n, Rational(0));
      for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = M(r, n);
      if (feasible(x)) verts.insert(x);
      return true;
    });
  }
  out.vertices.assign(verts.begin(), verts.end());
  if (out.vertices.empty()) return out;

  // extreme rays of the recession cone {E d = 0, le.a d <= 0}
  std::set<IntVector> rays;
  auto test_dir = [&](const RatVector& d) {
    for (auto& c : le)
      if (dot(c.a, d) > 0) return false;
    return true;
  };
  auto consider = [&](const RatVector& d) {
    RatVector neg(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) neg[i] = -d[i];
    if (test_dir(d)) rays.insert(primitive(d));
    if (test_dir(neg)) rays.insert(primitive(neg));
  };
  if (k >= 1) {
    for_each_subset(le.size(), k - 1, [&](const std::vector<std::size_t>& S) {
      RatMatrix M(E.size() + S.size(), n);
      for (std::size_t i = 0; i < E.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = E[i].a[j];
      for (std::size_t s = 0; s < S.size(); ++s)
        for (std::size_t j = 0; j < n; ++j) M(E.size() + s, j) = le[S[s]].a[j];
      auto ns = nullspace(M);
      if (ns.size() == 1) consider(ns[0]);
      return true;
    });
  }
  out.rays.assign(rays.begin(), rays.end());
  return out;
}

}  // namespace tropmirror

namespace tropmirror {

std::optional<RatVector> relative_interior_point(std::size_t dim, const std::vector<LinearConstraint>& eq,
                                                 const std::vector<LinearConstraint>& le) {
  std::vector<bool> unknown(le.size(), true);
  std::vector<RatVector> pts;
  while (true) {
    std::vector<std::size_t> slack_of(le.size(), le.size());
    std::size_t k = 0;
    for (std::size_t j = 0; j < le.size(); ++j)
      if (unknown[j]) slack_of[j] = k++;
    LpProblem p;
    p.nvars = dim + k;
    for (auto& c : eq) {
      LinearConstraint e{c.a, c.b};
      e.a.resize(dim + k, Rational(0));
      p.eq.push_back(std::move(e));
    }
    for (std::size_t j = 0; j < le.size(); ++j) {
      LinearConstraint e{le[j].a, le[j].b};
      e.a.resize(dim + k, Rational(0));
      if (unknown[j]) e.a[dim + slack_of[j]] = 1;
      p.le.push_back(std::move(e));
    }
    for (std::size_t s = 0; s < k; ++s) {
      LinearConstraint lo{RatVector(dim + k, Rational(0)), 0};
      lo.a[dim + s] = -1;
      p.le.push_back(lo);
      LinearConstraint hi{RatVector(dim + k, Rational(0)), 1};
      hi.a[dim + s] = 1;
      p.le.push_back(hi);
    }
    p.objective.assign(dim + k, Rational(0));
    for (std::size_t s = 0; s < k; ++s) p.objective[dim + s] = 1;
    LpResult r = solve_lp(p);
    if (r.status != LpStatus::Optimal) {
      if (pts.empty()) return std::nullopt;
      break;
    }
    RatVector x(r.x.begin(), r.x.begin() + static_cast<long>(dim));
    pts.push_back(x);
    bool progress = false;
    for (std::size_t j = 0; j < le.size(); ++j)
      if (unknown[j] && dot(le[j].a, x) < le[j].b) {
        unknown[j] = false;
        progress = true;
      }
    if (!progress || k == 0) break;
  }
  RatVector avg(dim, Rational(0));
  for (auto& p : pts)
    for (std::size_t j = 0; j < dim; ++j) avg[j] += p[j];
  for (auto& v : avg) v /= static_cast<long>(pts.size());
  return avg;
}

}  // namespace tropmirror
