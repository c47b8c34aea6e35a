#include "tropmirror/mirrortoric.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace tropmirror {

std::size_t Fan::find(const std::vector<std::size_t>& rs) const {
  for (std::size_t c = 0; c < cones.size(); ++c)
    if (cones[c].rays == rs) return c;
  return cones.size();
}

std::size_t Fan::nonsmooth_max_cones() const {
  std::size_t k = 0;
  for (auto c : max_cones)
    if (!cones[c].smooth) ++k;
  return k;
}

std::string Fan::ray_name(std::size_t k) const {
  if (k < ray_labels.size())
    return "a" + std::to_string(ray_labels[k].first + 1) + "_" + std::to_string(ray_labels[k].second);
  return "r" + std::to_string(k);
}

namespace {

Integer span_index(const std::vector<IntVector>& rays) {
  IntMatrix m(rays.size(), rays[0].size());
  for (std::size_t i = 0; i < rays.size(); ++i)
    for (std::size_t j = 0; j < rays[0].size(); ++j) m(i, j) = rays[i][j];
  SnfResult s = snf(m);
  Integer idx = 1;
  for (std::size_t i = 0; i < s.rank; ++i) idx *= s.D(i, i);
  return idx;
}

}  // namespace

Fan make_fan(std::size_t ambient, std::vector<IntVector> rays, const std::vector<std::vector<std::size_t>>& max_cones) {
  Fan fan;
  fan.ambient = ambient;
  for (auto& r : rays) {
    if (r.size() != ambient) fail(ErrorCode::DimensionMismatch, "ray length");
    fan.rays.push_back(primitive(r));
  }
  std::set<std::vector<std::size_t>> faces, maxes;
  for (auto mc : max_cones) {
    std::sort(mc.begin(), mc.end());
    std::vector<IntVector> vs;
    for (auto k : mc) vs.push_back(fan.rays.at(k));
    if (rank(IntMatrix::from_rows(vs, ambient)) != mc.size())
      fail(ErrorCode::NonSimplicial, "cone rays are linearly dependent");
    maxes.insert(mc);
    for (std::size_t k = 1; k <= mc.size(); ++k)
      for_each_subset(mc.size(), k, [&](const std::vector<std::size_t>& S) {
        std::vector<std::size_t> f;
        for (auto s : S) f.push_back(mc[s]);
        faces.insert(f);
        return true;
      });
  }
  for (auto& f : faces) {
    FanCone c;
    c.rays = f;
    c.dim = f.size();
    std::vector<IntVector> vs;
    for (auto k : f) vs.push_back(fan.rays[k]);
    c.index = span_index(vs);
    c.smooth = c.index == 1;
    fan.cones.push_back(c);
  }
  std::stable_sort(fan.cones.begin(), fan.cones.end(), [](const FanCone& a, const FanCone& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.rays < b.rays;
  });
  for (auto& m : maxes) fan.max_cones.push_back(fan.find(m));
  std::sort(fan.max_cones.begin(), fan.max_cones.end());
  return fan;
}

Fan build_fan(const RegularSubdivision& sub, std::size_t r) {
  if (!sub.is_triangulation) fail(ErrorCode::NotTriangulation, "cells are not simplices");
  std::size_t origin = sub.points.size();
  for (std::size_t k = 0; k < sub.points.size(); ++k)
    if (std::all_of(sub.points[k].begin(), sub.points[k].end(), [](const Integer& x) { return x == 0; })) origin = k;
  if (origin == sub.points.size()) fail(ErrorCode::OriginMissing, "fan apex 0 is not a point");
  const std::size_t N = sub.ambient_dim;
  if (r == 0 || r > N) fail(ErrorCode::Validation, "factor count");
  std::vector<std::size_t> ray_of_point(sub.points.size(), sub.points.size());
  std::vector<IntVector> rays;
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  std::vector<std::size_t> seen_in_factor(r, 0);
  std::vector<std::pair<std::size_t, std::size_t>> point_label(sub.points.size());
  for (std::size_t k = 0; k < sub.points.size(); ++k) {
    if (k == origin) continue;
    std::size_t f = r;
    for (std::size_t i = 0; i < r; ++i)
      if (sub.points[k][N - r + i] == 1) f = i;
    if (f == r) fail(ErrorCode::Validation, "point is not of the form (-a, e_i)");
    point_label[k] = {f, seen_in_factor[f]++};
  }
  std::set<std::size_t> used;
  for (auto& c : sub.cells) {
    if (!std::binary_search(c.begin(), c.end(), origin)) fail(ErrorCode::NotStarShaped, "cell avoids the apex");
    used.insert(c.begin(), c.end());
  }
  used.erase(origin);
  for (auto k : used) {
    ray_of_point[k] = rays.size();
    rays.push_back(sub.points[k]);
    labels.push_back(point_label[k]);
  }
  std::vector<std::vector<std::size_t>> maxes;
  for (auto& c : sub.cells) {
    std::vector<std::size_t> m;
    for (auto k : c)
      if (k != origin) m.push_back(ray_of_point[k]);
    maxes.push_back(m);
  }
  Fan fan = make_fan(N, rays, maxes);
  fan.r = r;
  fan.ray_labels = labels;
  return fan;
}

Fan build_fan(const MonomialSystem& sys) { return build_fan(newton_subdivision(sys), sys.r()); }

std::size_t Chart::coordinate(const std::string& label) const {
  for (std::size_t j = 0; j < labels.size(); ++j)
    if (labels[j] == label) return j;
  fail(ErrorCode::UnknownCoordinate, label);
}

std::size_t Chart::coordinate_of_ray(std::size_t ray) const {
  for (std::size_t j = 0; j < rays.size(); ++j)
    if (rays[j] == ray) return j;
  return rays.size();
}

const TransitionMap* ToricMirror::transition(std::size_t s, std::size_t t) const {
  for (auto& tm : transitions)
    if (tm.source == s && tm.target == t) return &tm;
  return nullptr;
}

std::size_t ToricMirror::chart_of_cone(std::size_t cone) const {
  for (std::size_t c = 0; c < charts.size(); ++c)
    if (charts[c].cone == cone) return c;
  return charts.size();
}

std::string facet_label(const std::vector<std::size_t>& facet) {
  std::string s = "e";
  for (std::size_t i = 0; i < facet.size(); ++i) s += (i ? "_" : "") + std::to_string(facet[i]);
  return s;
}

std::pair<std::vector<Chart>, std::vector<TransitionMap>> charts(const Fan& fan) {
  std::vector<Chart> out;
  for (auto c : fan.max_cones) {
    const FanCone& cone = fan.cones[c];
    if (!cone.simplicial) fail(ErrorCode::NonSimplicial, "cone " + std::to_string(c));
    Chart ch;
    ch.cone = c;
    ch.rays = cone.rays;
    for (std::size_t j = 0; j < ch.rays.size(); ++j) {
      std::vector<std::size_t> facet;
      for (auto k : ch.rays)
        if (k != ch.rays[j]) facet.push_back(k);
      ch.labels.push_back(facet_label(facet));
      ch.block.push_back(fan.ray_labels.empty() ? 0 : fan.ray_labels[ch.rays[j]].first);
    }
    std::vector<IntVector> vs;
    for (auto k : ch.rays) vs.push_back(fan.rays[k]);
    if (cone.dim == fan.ambient) {
      SimplicialCone sc(vs, fan.ambient);
      ch.index = lattice_index(sc);
      ch.stacky = ch.index != 1;
      ch.cover = finite_cover_group(sc);
      if (!ch.stacky) ch.weights = dual_basis(sc);
    } else {
      // torus factor: not a full chart; treat as stacky-free partial chart
      ch.index = cone.index;
      ch.stacky = !cone.smooth;
    }
    out.push_back(ch);
  }
  std::vector<TransitionMap> trans;
  for (std::size_t a = 0; a < out.size(); ++a)
    for (std::size_t b = 0; b < out.size(); ++b) {
      if (out[a].weights.empty() || out[b].weights.empty()) continue;
      TransitionMap tm;
      tm.source = a;
      tm.target = b;
      const std::size_t m = out[a].rays.size();
      tm.E = IntMatrix(m, m);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) tm.E(k, j) = dot(out[b].weights[k], fan.rays[out[a].rays[j]]);
      std::vector<std::size_t> common;
      std::set_intersection(out[a].rays.begin(), out[a].rays.end(), out[b].rays.begin(), out[b].rays.end(),
                            std::back_inserter(common));
      tm.adjacent = a != b && common.size() + 1 == m;
      trans.push_back(std::move(tm));
    }
  return {out, trans};
}

ToricMirror build_mirror(const MonomialSystem& sys) {
  ToricMirror m;
  m.fan = build_fan(sys);
  auto [ch, tr] = charts(m.fan);
  m.charts = std::move(ch);
  m.transitions = std::move(tr);
  return m;
}

std::vector<Monomial> superpotential(const Fan& fan, const Chart& chart) {
  std::vector<Monomial> out;
  const std::size_t n = fan.ambient - fan.r;
  for (std::size_t i = 0; i < fan.r; ++i) {
    Monomial m;
    for (auto k : chart.rays) {
      const Integer& e = fan.rays[k][n + i];
      if (e < 0) fail(ErrorCode::NegativeExponent, "ray " + fan.ray_name(k));
      m.exponents.push_back(e);
    }
    out.push_back(m);
  }
  return out;
}

std::string monomial_text(const Chart& chart, const Monomial& m) {
  std::string s;
  for (std::size_t j = 0; j < m.exponents.size(); ++j) {
    if (m.exponents[j] == 0) continue;
    if (!s.empty()) s += "*";
    s += "y[" + chart.labels[j] + "]";
    if (m.exponents[j] != 1) s += "^" + m.exponents[j].get_str();
  }
  return s.empty() ? "1" : s;
}

std::string superpotential_text(const Fan& fan, const Chart& chart) {
  std::string s;
  for (auto& m : superpotential(fan, chart)) s += (s.empty() ? "" : " + ") + monomial_text(chart, m);
  return s;
}

CocycleReport transition_cocycle(const ToricMirror& mirror) {
  CocycleReport rep;
  const std::size_t C = mirror.charts.size();
  auto fail_with = [&](const std::string& s) {
    if (rep.ok) rep.first_failure = s;
    rep.ok = false;
  };
  for (std::size_t a = 0; a < C; ++a) {
    const TransitionMap* self = mirror.transition(a, a);
    if (self && !(self->E == IntMatrix::identity(self->E.rows())))
      fail_with("chart " + std::to_string(a) + " self-transition is not the identity");
    for (std::size_t b = 0; b < C; ++b) {
      const TransitionMap* ab = mirror.transition(a, b);
      const TransitionMap* ba = mirror.transition(b, a);
      if (!ab || !ba || a == b) continue;
      ++rep.pairs_checked;
      Integer det = determinant(ab->E);
      if (abs(det) != 1) fail_with("transition " + std::to_string(a) + "->" + std::to_string(b) + " not unimodular");
      if (!(ba->E * ab->E == IntMatrix::identity(ab->E.rows())))
        fail_with("transition " + std::to_string(a) + "<->" + std::to_string(b) + " not mutually inverse");
      for (std::size_t c = 0; c < C; ++c) {
        const TransitionMap* bc = mirror.transition(b, c);
        const TransitionMap* ac = mirror.transition(a, c);
        if (!bc || !ac || c == a || c == b) continue;
        ++rep.triples_checked;
        if (!(bc->E * ab->E == ac->E))
          fail_with("triple " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
      }
    }
  }
  return rep;
}

std::size_t MomentPolytope::count_codim(std::size_t k) const {
  std::size_t c = 0;
  for (auto& f : faces)
    if (f.dim + k == n + r) ++c;
  return c;
}

MomentPolytope moment_polytope(const MonomialSystem& sys) {
  MomentPolytope mp;
  mp.n = sys.n();
  mp.r = sys.r();
  const std::size_t D = mp.n + mp.r;
  for (std::size_t i = 0; i < mp.r; ++i) {
    const Factor& f = sys.factor(i);
    for (std::size_t a = 0; a < f.monomials.size(); ++a) {
      LinearConstraint c{RatVector(D, Rational(0)), f.heights[a]};
      for (std::size_t j = 0; j < mp.n; ++j) c.a[j] = f.monomials[a][j];
      c.a[mp.n + i] = -1;
      mp.constraints.push_back(c);
      mp.labels.emplace_back(i, a);
    }
  }
  mp.generators = vrep(D, {}, mp.constraints);
  const auto& V = mp.generators.vertices;
  const auto& R = mp.generators.rays;
  const std::size_t G = V.size() + R.size();
  const std::size_t K = mp.constraints.size();
  std::vector<std::vector<bool>> inc(K, std::vector<bool>(G, false));
  for (std::size_t j = 0; j < K; ++j) {
    for (std::size_t v = 0; v < V.size(); ++v) inc[j][v] = dot(mp.constraints[j].a, V[v]) == mp.constraints[j].b;
    for (std::size_t d = 0; d < R.size(); ++d) inc[j][V.size() + d] = dot(mp.constraints[j].a, R[d]) == 0;
  }
  auto tight_of = [&](const std::vector<std::size_t>& gens) {
    std::vector<std::size_t> t;
    for (std::size_t j = 0; j < K; ++j) {
      bool all = true;
      for (auto g : gens)
        if (!inc[j][g]) all = false;
      if (all) t.push_back(j);
    }
    return t;
  };
  auto dim_of = [&](const std::vector<std::size_t>& gens) {
    std::vector<RatVector> rows;
    RatVector v0;
    for (auto g : gens)
      if (g < V.size()) {
        if (v0.empty())
          v0 = V[g];
        else {
          RatVector d(D);
          for (std::size_t k = 0; k < D; ++k) d[k] = V[g][k] - v0[k];
          rows.push_back(d);
        }
      } else {
        rows.push_back(to_rational(R[g - V.size()]));
      }
    for (auto& l : mp.generators.lineality) rows.push_back(l);
    if (rows.empty()) return std::size_t(0);
    return rank(RatMatrix::from_rows(rows, D));
  };
  std::set<std::vector<std::size_t>> seen;
  std::deque<std::vector<std::size_t>> queue;
  if (!V.empty()) {
    std::vector<std::size_t> all(G);
    for (std::size_t g = 0; g < G; ++g) all[g] = g;
    seen.insert(all);
    queue.push_back(all);
  }
  while (!queue.empty()) {
    auto F = queue.front();
    queue.pop_front();
    MomentFace face;
    face.generators = F;
    face.tight = tight_of(F);
    face.tight_by_factor.assign(mp.r, {});
    for (auto j : face.tight) face.tight_by_factor[mp.labels[j].first].push_back(mp.labels[j].second);
    face.dim = dim_of(F);
    mp.faces.push_back(face);
    for (std::size_t j = 0; j < K; ++j) {
      if (std::binary_search(face.tight.begin(), face.tight.end(), j)) continue;
      std::vector<std::size_t> sub;
      bool has_vertex = false;
      for (auto g : F)
        if (inc[j][g]) {
          sub.push_back(g);
          if (g < V.size()) has_vertex = true;
        }
      if (!has_vertex) continue;
      // close up: the face is cut out by every constraint tight on sub
      auto t = tight_of(sub);
      std::vector<std::size_t> closed;
      for (auto g : F) {
        bool all = true;
        for (auto k : t)
          if (!inc[k][g]) all = false;
        if (all) closed.push_back(g);
      }
      if (seen.insert(closed).second) queue.push_back(closed);
    }
  }
  std::stable_sort(mp.faces.begin(), mp.faces.end(), [](const MomentFace& a, const MomentFace& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.tight_by_factor < b.tight_by_factor;
  });
  return mp;
}

DualityReport duality_check(const MomentPolytope& mp, const TropicalComplex& tc) {
  DualityReport rep;
  std::vector<std::size_t> qualifying;
  for (std::size_t f = 0; f < mp.faces.size(); ++f) {
    const auto& t = mp.faces[f].tight_by_factor;
    if (std::all_of(t.begin(), t.end(), [](const auto& s) { return !s.empty(); })) qualifying.push_back(f);
  }
  std::vector<bool> hit(tc.strata.size(), false);
  for (auto f : qualifying) {
    const MomentFace& face = mp.faces[f];
    std::size_t s = tc.find(face.tight_by_factor);
    if (s == tc.strata.size())
      fail(ErrorCode::DualityFailure, "face " + std::to_string(f) + " has no stratum with the same active sets");
    if (hit[s]) fail(ErrorCode::DualityFailure, "stratum " + std::to_string(s) + " matched twice");
    if (tc.strata[s].dim != face.dim)
      fail(ErrorCode::DualityFailure, "face " + std::to_string(f) + " has dim " + std::to_string(face.dim) +
                                          " but its stratum has dim " + std::to_string(tc.strata[s].dim));
    hit[s] = true;
    rep.pairs.emplace_back(f, s);
    rep.by_dim[face.dim]++;
    if (tc.strata[s].in_tropical_locus) ++rep.tropical_pairs;
    if (tc.strata[s].dim == tc.n) ++rep.facets_to_regions;
  }
  for (std::size_t s = 0; s < tc.strata.size(); ++s)
    if (!hit[s]) fail(ErrorCode::DualityFailure, "stratum " + std::to_string(s) + " has no face");
  // order: F subset of G iff stratum(F) in the closure of stratum(G)
  for (auto& [f, s] : rep.pairs)
    for (auto& [g, t] : rep.pairs) {
      const auto& F = mp.faces[f].generators;
      const auto& G = mp.faces[g].generators;
      bool face_sub = std::includes(G.begin(), G.end(), F.begin(), F.end());
      if (face_sub != tc.leq(s, t))
        fail(ErrorCode::DualityFailure, "order mismatch between faces " + std::to_string(f) + " and " + std::to_string(g));
    }
  return rep;
}

ActiveTuple cone_active(const Fan& fan, std::size_t cone) {
  ActiveTuple t(fan.r);
  for (auto k : fan.cones.at(cone).rays) t[fan.ray_labels.at(k).first].push_back(fan.ray_labels[k].second);
  for (auto& s : t) std::sort(s.begin(), s.end());
  return t;
}

std::vector<CriticalStratum> critical_locus(const Fan& fan) {
  std::vector<CriticalStratum> out;
  for (std::size_t c = 0; c < fan.cones.size(); ++c) {
    std::vector<std::size_t> per(fan.r, 0);
    for (auto k : fan.cones[c].rays) per[fan.ray_labels.empty() ? 0 : fan.ray_labels[k].first]++;
    if (!std::all_of(per.begin(), per.end(), [](std::size_t x) { return x >= 2; })) continue;
    CriticalStratum cs;
    cs.cone = c;
    cs.rays = fan.cones[c].rays;
    cs.orbit_codim = fan.cones[c].dim;
    cs.fiber_rank = fan.ambient - fan.cones[c].dim;
    out.push_back(cs);
  }
  return out;
}

std::string polynomial_text(const MonomialSystem& sys, std::size_t i) {
  const Factor& f = sys.factor(i);
  std::string s;
  for (std::size_t a = 0; a < f.monomials.size(); ++a) {
    std::string term;
    auto& [re, im] = f.coeffs[a];
    if (!(re == 1 && im == 0)) {
      term = im == 0 ? re.get_str() : "(" + re.get_str() + (im < 0 ? "" : "+") + im.get_str() + "i)";
    }
    if (f.heights[a] != 0) term += (term.empty() ? "" : "*") + std::string("t^") + Rational(-f.heights[a]).get_str();
    for (std::size_t j = 0; j < sys.n(); ++j) {
      const Integer& e = f.monomials[a][j];
      if (e == 0) continue;
      term += (term.empty() ? "" : "*") + std::string("x") + std::to_string(j + 1);
      if (e != 1) term += "^" + e.get_str();
    }
    if (term.empty()) term = "1";
    s += (s.empty() ? "" : " + ") + term;
  }
  return s;
}

ASideCritical a_side_critical(const MonomialSystem& sys, const TropicalComplex& tc) {
  ASideCritical out;
  const bool single = sys.r() == 1;
  for (std::size_t i = 0; i < sys.r(); ++i) out.equations.push_back(single ? "u = 0" : "u" + std::to_string(i + 1) + " = 0");
  for (std::size_t i = 0; i < sys.r(); ++i) out.equations.push_back(polynomial_text(sys, i) + " = 0");
  out.base = tc.tropical_strata();
  out.fiber_rank = sys.n() - sys.r();
  return out;
}

DualityReport certify_duality(ToricMirror& mirror, const MonomialSystem& sys, const TropicalComplex& tc) {
  mirror.duality_verified = false;
  DualityReport rep = duality_check(moment_polytope(sys), tc);
  mirror.duality_verified = true;
  return rep;
}

}  // namespace tropmirror
