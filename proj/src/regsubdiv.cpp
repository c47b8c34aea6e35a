#include "tropmirror/regsubdiv.hpp"

#include <algorithm>
#include <set>

namespace tropmirror {

namespace {

// Coordinates onto which the affine hull projects injectively.
std::vector<std::size_t> spanning_coordinates(const std::vector<IntVector>& pts, std::size_t d) {
  const std::size_t D = pts[0].size();
  std::vector<std::size_t> chosen;
  for_each_subset(D, d, [&](const std::vector<std::size_t>& J) {
    RatMatrix m(pts.size() - 1, d);
    for (std::size_t i = 1; i < pts.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i - 1, j) = pts[i][J[j]] - pts[0][J[j]];
    if (rank(m) == d) {
      chosen = J;
      return false;
    }
    return true;
  });
  return chosen;
}

std::vector<std::vector<std::size_t>> lower_cells(const std::vector<IntVector>& pts, const std::vector<Rational>& h) {
  const std::size_t N = pts.size(), D = pts[0].size();
  std::set<std::vector<std::size_t>> cells;
  std::vector<std::vector<bool>> member;
  for_each_subset(N, D + 1, [&](const std::vector<std::size_t>& S) {
    for (auto& m : member) {
      bool inside = true;
      for (auto s : S)
        if (!m[s]) inside = false;
      if (inside) return true;
    }
    RatMatrix M(D + 1, D + 2);
    for (std::size_t r = 0; r <= D; ++r) {
      for (std::size_t j = 0; j < D; ++j) M(r, j) = pts[S[r]][j];
      M(r, D) = 1;
      M(r, D + 1) = h[S[r]];
    }
    auto piv = rref(M);
    if (piv.size() != D + 1 || piv.back() != D) return true;
    // f(x) = c.x + c0
    RatVector c(D);
    for (std::size_t j = 0; j < D; ++j) c[j] = M(j, D + 1);
    Rational c0 = M(D, D + 1);
    std::vector<std::size_t> cell;
    for (std::size_t k = 0; k < N; ++k) {
      Rational gap = h[k] - dot(c, pts[k]) - c0;
      if (gap < 0) return true;
      if (gap == 0) cell.push_back(k);
    }
    if (cells.insert(cell).second) {
      std::vector<bool> m(N, false);
      for (auto k : cell) m[k] = true;
      member.push_back(std::move(m));
    }
    return true;
  });
  return {cells.begin(), cells.end()};
}

}  // namespace

Integer simplex_volume(const std::vector<IntVector>& s) {
  const std::size_t D = s[0].size();
  if (s.size() != D + 1) fail(ErrorCode::NotTriangulation, "not a simplex");
  IntMatrix m(D, D);
  for (std::size_t i = 1; i <= D; ++i)
    for (std::size_t j = 0; j < D; ++j) m(i - 1, j) = s[i][j] - s[0][j];
  return abs(determinant(m));
}

RegularSubdivision regular_subdivision(const std::vector<IntVector>& points, const std::vector<Rational>& heights,
                                       bool allow_degenerate) {
  if (points.empty()) fail(ErrorCode::DegeneratePolytope, "no points");
  if (points.size() != heights.size()) fail(ErrorCode::DimensionMismatch, "heights length");
  RegularSubdivision sub;
  sub.points = points;
  sub.heights = heights;
  sub.ambient_dim = points[0].size();
  for (auto& p : points)
    if (p.size() != sub.ambient_dim) fail(ErrorCode::DimensionMismatch, "point length");
  sub.dim = affine_dim(points);
  sub.full_dimensional = sub.dim == sub.ambient_dim;
  std::vector<IntVector> work = points;
  if (!sub.full_dimensional) {
    if (!allow_degenerate) fail(ErrorCode::DegeneratePolytope, "Conv(A) is not full-dimensional");
    auto J = spanning_coordinates(points, sub.dim);
    for (auto& p : work) {
      IntVector q;
      for (auto j : J) q.push_back(p[j]);
      p = q;
    }
  }
  if (sub.dim == 0) {
    sub.cells = {{0}};
  } else {
    sub.cells = lower_cells(work, heights);
  }
  sub.is_triangulation = std::all_of(sub.cells.begin(), sub.cells.end(),
                                     [&](const auto& c) { return c.size() == sub.dim + 1; });
  std::set<std::size_t> used;
  for (auto& c : sub.cells) used.insert(c.begin(), c.end());
  sub.uses_all_points = used.size() == points.size();
  if (sub.is_triangulation && sub.full_dimensional) sub.is_unimodular = is_unimodular(sub).unimodular;
  bool has_origin = std::any_of(points.begin(), points.end(), [](const IntVector& p) {
    return std::all_of(p.begin(), p.end(), [](const Integer& x) { return x == 0; });
  });
  if (has_origin && sub.full_dimensional) sub.is_star_shaped = is_star_shaped(sub);
  return sub;
}

UnimodularityReport is_unimodular(const RegularSubdivision& sub) {
  if (!sub.is_triangulation) fail(ErrorCode::NotTriangulation, "subdivision has non-simplex cells");
  UnimodularityReport rep;
  for (std::size_t c = 0; c < sub.cells.size(); ++c) {
    std::vector<IntVector> s;
    for (auto k : sub.cells[c]) s.push_back(sub.points[k]);
    Integer v = simplex_volume(s);
    if (v != 1) {
      rep.unimodular = false;
      rep.offending.emplace_back(c, v);
    }
  }
  return rep;
}

std::vector<LinearConstraint> hull_facets(const std::vector<IntVector>& pts) {
  const std::size_t D = pts[0].size();
  std::set<std::pair<IntVector, Integer>> seen;
  std::vector<LinearConstraint> out;
  for_each_subset(pts.size(), D, [&](const std::vector<std::size_t>& S) {
    RatMatrix m(D - 1, D);
    for (std::size_t i = 1; i < D; ++i)
      for (std::size_t j = 0; j < D; ++j) m(i - 1, j) = pts[S[i]][j] - pts[S[0]][j];
    auto ns = nullspace(m);
    if (ns.size() != 1) return true;
    IntVector a = primitive(ns[0]);
    Integer b = dot(a, pts[S[0]]);
    bool le = true, ge = true;
    for (auto& p : pts) {
      Integer v = dot(a, p);
      if (v > b) le = false;
      if (v < b) ge = false;
    }
    if (!le && !ge) return true;
    if (!le) {
      for (auto& x : a) x = -x;
      b = -b;
    }
    if (seen.insert({a, b}).second) out.push_back({to_rational(a), Rational(b)});
    return true;
  });
  return out;
}

std::vector<std::size_t> hull_vertices(const std::vector<IntVector>& pts) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    std::vector<RatVector> others;
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != k && pts[j] != pts[k]) others.push_back(to_rational(pts[j]));
    if (!in_convex_hull(to_rational(pts[k]), others)) out.push_back(k);
  }
  return out;
}

bool is_star_shaped(const RegularSubdivision& sub) {
  std::size_t origin = sub.points.size();
  for (std::size_t k = 0; k < sub.points.size(); ++k)
    if (std::all_of(sub.points[k].begin(), sub.points[k].end(), [](const Integer& x) { return x == 0; })) origin = k;
  if (origin == sub.points.size()) fail(ErrorCode::OriginMissing, "0 is not a point of the configuration");
  if (!sub.full_dimensional) fail(ErrorCode::DegeneratePolytope, "star-shapedness needs a full-dimensional polytope");
  auto outer = hull_facets(sub.points);
  auto on_boundary = [&](const std::vector<IntVector>& face) {
    for (auto& f : outer) {
      bool all = true;
      for (auto& p : face)
        if (dot(f.a, p) != f.b) all = false;
      if (all) return true;
    }
    return false;
  };
  for (auto& cell : sub.cells) {
    if (!std::binary_search(cell.begin(), cell.end(), origin)) return false;
    std::vector<IntVector> cp;
    for (auto k : cell) cp.push_back(sub.points[k]);
    for (auto& f : hull_facets(cp)) {
      if (f.b == 0) continue;  // facet through the origin
      std::vector<IntVector> face;
      for (auto& p : cp)
        if (dot(f.a, p) == f.b) face.push_back(p);
      if (!on_boundary(face)) return false;
    }
  }
  return true;
}

Integer normalized_volume(const std::vector<IntVector>& pts) {
  if (affine_dim(pts) != pts[0].size()) fail(ErrorCode::DegeneratePolytope, "volume of a flat polytope");
  // placing-order heights make a triangulation
  std::vector<Rational> h(pts.size());
  Integer M = 1, base = Integer(1) << 40;
  for (std::size_t k = 0; k < pts.size(); ++k, M *= base) h[k] = Rational(M);
  auto cells = lower_cells(pts, h);
  Integer total = 0;
  for (auto& c : cells) {
    std::vector<IntVector> cp;
    for (auto k : c) cp.push_back(pts[k]);
    if (cp.size() == pts[0].size() + 1) {
      total += simplex_volume(cp);
    } else {
      if (cp.size() == pts.size()) fail(ErrorCode::Internal, "placing heights did not triangulate");
      total += normalized_volume(cp);
    }
  }
  return total;
}

std::vector<IntVector> ci_newton_polytope(const MonomialSystem& sys) {
  const std::size_t n = sys.n(), r = sys.r();
  std::vector<IntVector> cand{IntVector(n + r, Integer(0))};
  for (std::size_t i = 0; i < r; ++i)
    for (auto& a : sys.factor(i).monomials) {
      IntVector p(n + r, Integer(0));
      for (std::size_t j = 0; j < n; ++j) p[j] = -a[j];
      p[n + i] = 1;
      cand.push_back(p);
    }
  std::vector<IntVector> out;
  for (auto k : hull_vertices(cand)) out.push_back(cand[k]);
  return out;
}

RegularSubdivision newton_subdivision(const MonomialSystem& sys) {
  const std::size_t n = sys.n(), r = sys.r();
  std::vector<IntVector> pts{IntVector(n + r, Integer(0))};
  std::vector<Rational> h{Rational(0)};
  for (std::size_t i = 0; i < r; ++i) {
    const Factor& f = sys.factor(i);
    for (std::size_t a = 0; a < f.monomials.size(); ++a) {
      IntVector p(n + r, Integer(0));
      for (std::size_t j = 0; j < n; ++j) p[j] = -f.monomials[a][j];
      p[n + i] = 1;
      pts.push_back(p);
      h.push_back(f.heights[a]);
    }
  }
  return regular_subdivision(pts, h, true);
}

std::pair<std::size_t, std::size_t> newton_point_label(const MonomialSystem& sys, std::size_t k) {
  if (k == 0) fail(ErrorCode::IndexOutOfRange, "origin has no label");
  --k;
  for (std::size_t i = 0; i < sys.r(); ++i) {
    if (k < sys.factor(i).monomials.size()) return {i, k};
    k -= sys.factor(i).monomials.size();
  }
  fail(ErrorCode::IndexOutOfRange, "Newton point index");
}

}  // namespace tropmirror
