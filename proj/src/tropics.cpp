#include "tropmirror/tropics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

namespace tropmirror {

TParam TParam::exp(double k) {
  TParam t;
  t.log_t = k;
  t.exact.reset();
  char buf[64];
  std::snprintf(buf, sizeof buf, "e^%g", k);
  t.text = buf;
  return t;
}

TParam TParam::parse(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.rfind("e^", 0) == 0) {
    std::string e = s.substr(2);
    if (!e.empty() && e.front() == '{' && e.back() == '}') e = e.substr(1, e.size() - 2);
    Rational k = parse_rational(e);
    if (k <= 0) fail(ErrorCode::Validation, "t must exceed 1");
    TParam t;
    t.log_t = k.get_d();
    t.text = "e^" + k.get_str();
    return t;
  }
  Rational q = parse_rational(s);
  if (q <= 1) fail(ErrorCode::Validation, "t must exceed 1");
  TParam t;
  t.exact = q;
  long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, q.get_num_mpz_t());
  double md = mpz_get_d_2exp(&ed, q.get_den_mpz_t());
  t.log_t = std::log(mn) - std::log(md) + static_cast<double>(en - ed) * std::log(2.0);
  t.text = q.get_str();
  return t;
}

MonomialSystem::MonomialSystem(std::size_t n, std::vector<Factor> factors, TParam t)
    : n_(n), factors_(std::move(factors)), t_(std::move(t)) {
  if (factors_.empty()) fail(ErrorCode::Validation, "at least one factor required");
  if (t_.log_t <= 0) fail(ErrorCode::Validation, "t must exceed 1");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    Factor& f = factors_[i];
    const std::string tag = "factor " + std::to_string(i + 1) + ": ";
    if (f.monomials.size() < 2) fail(ErrorCode::Validation, tag + "needs at least two monomials");
    if (f.heights.size() != f.monomials.size()) fail(ErrorCode::Validation, tag + "heights/monomials length mismatch");
    if (f.coeffs.empty()) f.coeffs.assign(f.monomials.size(), {Rational(1), Rational(0)});
    if (f.coeffs.size() != f.monomials.size()) fail(ErrorCode::Validation, tag + "coeffs/monomials length mismatch");
    for (auto& h : f.heights) h.canonicalize();
    for (auto& [re, im] : f.coeffs) {
      re.canonicalize();
      im.canonicalize();
    }
    std::set<IntVector> seen;
    for (std::size_t a = 0; a < f.monomials.size(); ++a) {
      if (f.monomials[a].size() != n) fail(ErrorCode::Validation, tag + "monomial of wrong length");
      if (!seen.insert(f.monomials[a]).second) fail(ErrorCode::Validation, tag + "repeated monomial");
      if (f.coeffs[a].first == 0 && f.coeffs[a].second == 0) fail(ErrorCode::Validation, tag + "zero coefficient");
    }
  }
}

Rational MonomialSystem::affine_value(std::size_t i, std::size_t a, const RatVector& x) const {
  const Factor& f = factors_.at(i);
  return dot(x, f.monomials[a]) - f.heights[a];
}

std::size_t MonomialSystem::monomial_index(std::size_t i, const IntVector& a) const {
  const Factor& f = factors_.at(i);
  for (std::size_t k = 0; k < f.monomials.size(); ++k)
    if (f.monomials[k] == a) return k;
  fail(ErrorCode::UnknownMonomial, to_string(a));
}

TropValue trop_eval(const MonomialSystem& sys, std::size_t i, const RatVector& x) {
  if (x.size() != sys.n()) fail(ErrorCode::DimensionMismatch, "point has wrong length");
  if (i >= sys.r()) fail(ErrorCode::IndexOutOfRange, "factor index");
  TropValue v;
  const Factor& f = sys.factor(i);
  for (std::size_t a = 0; a < f.monomials.size(); ++a) {
    Rational val = sys.affine_value(i, a, x);
    if (v.argmax.empty() || val > v.value) {
      v.value = val;
      v.argmax = {a};
    } else if (val == v.value) {
      v.argmax.push_back(a);
    }
  }
  return v;
}

Rational tropical_distance(const MonomialSystem& sys, std::size_t i, const RatVector& x, std::size_t a) {
  if (a >= sys.factor(i).monomials.size()) fail(ErrorCode::UnknownMonomial, "index " + std::to_string(a));
  return trop_eval(sys, i, x).value - sys.affine_value(i, a, x);
}

Rational tropical_distance(const MonomialSystem& sys, std::size_t i, const RatVector& x, const IntVector& a) {
  return tropical_distance(sys, i, x, sys.monomial_index(i, a));
}

bool Stratum::contains(const RatVector& x) const {
  for (auto& c : equalities)
    if (dot(c.a, x) != c.b) return false;
  for (auto& c : inequalities)
    if (dot(c.a, x) >= c.b) return false;
  return true;
}

HSystem Stratum::hsystem() const {
  HSystem h;
  h.dim = witness.size();
  h.eq = equalities;
  h.lt = inequalities;
  return h;
}

namespace {

LinearConstraint difference_row(const MonomialSystem& sys, std::size_t i, std::size_t c, std::size_t a) {
  // l_c(x) - l_a(x) = (c-a).x - (rho_c - rho_a), as (c-a).x (op) rho_c - rho_a
  const Factor& f = sys.factor(i);
  LinearConstraint row{RatVector(sys.n()), f.heights[c] - f.heights[a]};
  for (std::size_t j = 0; j < sys.n(); ++j) row.a[j] = f.monomials[c][j] - f.monomials[a][j];
  return row;
}

struct Closure {
  std::vector<LinearConstraint> eq, le;
};

Closure closure_system(const MonomialSystem& sys, const ActiveTuple& S) {
  Closure c;
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::size_t a0 = S[i][0];
    for (std::size_t k = 1; k < S[i].size(); ++k) c.eq.push_back(difference_row(sys, i, S[i][k], a0));
    for (std::size_t b = 0; b < sys.factor(i).monomials.size(); ++b)
      if (!std::binary_search(S[i].begin(), S[i].end(), b)) c.le.push_back(difference_row(sys, i, b, a0));
  }
  return c;
}

ActiveTuple active_at(const MonomialSystem& sys, const RatVector& x) {
  ActiveTuple t(sys.r());
  for (std::size_t i = 0; i < sys.r(); ++i) t[i] = trop_eval(sys, i, x).argmax;
  return t;
}

Stratum make_stratum(const MonomialSystem& sys, const ActiveTuple& S, const RatVector& witness) {
  Stratum st;
  st.active = S;
  st.witness = witness;
  Closure c = closure_system(sys, S);
  st.equalities = c.eq;
  st.inequalities = c.le;
  const std::size_t n = sys.n();
  RatMatrix E(c.eq.size(), n);
  for (std::size_t i = 0; i < c.eq.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) E(i, j) = c.eq[i].a[j];
  st.dim = n - rank(E);
  std::size_t expected_codim = 0;
  bool trop = true;
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<IntVector> pts;
    for (auto a : S[i]) pts.push_back(sys.factor(i).monomials[a]);
    expected_codim += affine_dim(pts);
    if (S[i].size() < 2) trop = false;
  }
  st.in_tropical_locus = trop;
  if (expected_codim > n || st.dim > n - expected_codim)
    fail(ErrorCode::NonTransverse, "stratum " + std::to_string(st.dim) + "-dimensional where codimension " +
                                       std::to_string(expected_codim) + " was expected");
  // recession cone of the closure
  std::vector<LinearConstraint> heq, hle;
  for (auto& r : c.eq) heq.push_back({r.a, 0});
  for (auto& r : c.le) hle.push_back({r.a, 0});
  VRep rec = vrep(n, heq, hle);
  st.recession_rays = rec.rays;
  st.lineality = rec.lineality;
  return st;
}

}  // namespace

std::vector<std::size_t> TropicalComplex::tropical_strata() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (strata[s].in_tropical_locus) out.push_back(s);
  return out;
}

std::vector<std::size_t> TropicalComplex::regions() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (strata[s].dim == n) out.push_back(s);
  return out;
}

std::size_t TropicalComplex::find(const ActiveTuple& t) const {
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (strata[s].active == t) return s;
  return strata.size();
}

std::size_t TropicalComplex::locate(const RatVector& x) const {
  for (std::size_t s = 0; s < strata.size(); ++s)
    if (strata[s].contains(x)) return s;
  return strata.size();
}

std::size_t TropicalComplex::count(std::size_t d, bool tropical_only) const {
  std::size_t c = 0;
  for (auto& s : strata)
    if (s.dim == d && (!tropical_only || s.in_tropical_locus)) ++c;
  return c;
}

TropicalComplex build_stratification(const MonomialSystem& sys) {
  const std::size_t n = sys.n(), r = sys.r();
  std::map<ActiveTuple, RatVector> found;
  std::deque<ActiveTuple> queue;

  // regions: singleton tuples with nonempty interior
  std::vector<std::size_t> pick(r, 0);
  while (true) {
    ActiveTuple S(r);
    for (std::size_t i = 0; i < r; ++i) S[i] = {pick[i]};
    Closure c = closure_system(sys, S);
    HSystem h;
    h.dim = n;
    h.lt = c.le;
    if (auto x = interior_point(h)) {
      ActiveTuple T = active_at(sys, *x);
      if (found.emplace(T, *x).second) queue.push_back(T);
    }
    std::size_t i = 0;
    while (i < r && ++pick[i] == sys.factor(i).monomials.size()) pick[i++] = 0;
    if (i == r) break;
  }

  while (!queue.empty()) {
    ActiveTuple S = queue.front();
    queue.pop_front();
    Closure base = closure_system(sys, S);
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t a0 = S[i][0];
      for (std::size_t c = 0; c < sys.factor(i).monomials.size(); ++c) {
        if (std::binary_search(S[i].begin(), S[i].end(), c)) continue;
        Closure face = base;
        face.eq.push_back(difference_row(sys, i, c, a0));
        auto x = relative_interior_point(n, face.eq, face.le);
        if (!x) continue;
        ActiveTuple T = active_at(sys, *x);
        if (found.emplace(T, *x).second) queue.push_back(T);
      }
    }
  }

  TropicalComplex tc;
  tc.n = n;
  tc.r = r;
  for (auto& [S, x] : found) tc.strata.push_back(make_stratum(sys, S, x));
  std::stable_sort(tc.strata.begin(), tc.strata.end(), [](const Stratum& a, const Stratum& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.active < b.active;
  });
  const std::size_t N = tc.strata.size();
  tc.below.assign(N, std::vector<bool>(N, false));
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b) {
      if (a == b || tc.strata[a].dim >= tc.strata[b].dim) continue;
      bool sub = true;
      for (std::size_t i = 0; i < r && sub; ++i) {
        auto& A = tc.strata[a].active[i];
        auto& B = tc.strata[b].active[i];
        sub = std::includes(A.begin(), A.end(), B.begin(), B.end());
      }
      tc.below[a][b] = sub;
    }
  for (std::size_t s = 0; s < N; ++s) {
    if (!tc.strata[s].in_tropical_locus) continue;
    if (tc.strata[s].dim == 0) tc.vertices.push_back(s);
    if (tc.strata[s].dim == 1) tc.edges.push_back(s);
  }
  for (auto e : tc.edges) {
    std::vector<std::size_t> vs;
    for (auto v : tc.vertices)
      if (tc.below[v][e]) vs.push_back(v);
    tc.edge_vertices.push_back(vs);
  }
  return tc;
}

bool OpenPoset::intersection_closed() const {
  for (std::size_t a = 0; a < opens.size(); ++a)
    for (std::size_t b = a + 1; b < opens.size(); ++b) {
      std::vector<std::size_t> inter;
      std::set_intersection(opens[a].members.begin(), opens[a].members.end(), opens[b].members.begin(),
                            opens[b].members.end(), std::back_inserter(inter));
      for (auto s : inter) {
        const auto& sub = opens[open_of[s]].members;
        if (!std::includes(inter.begin(), inter.end(), sub.begin(), sub.end())) return false;
      }
    }
  return true;
}

OpenPoset build_open_poset(const TropicalComplex& tc) {
  OpenPoset P;
  const std::size_t N = tc.strata.size();
  const std::size_t npos = static_cast<std::size_t>(-1);
  auto trop = tc.tropical_strata();
  for (auto s : trop) {
    bool minimal = true;
    for (auto t : trop)
      if (t != s && tc.below[t][s]) minimal = false;
    if (minimal) P.minimal_strata.push_back(s);
  }
  P.open_of.assign(N, npos);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (auto s : trop) {
    std::vector<std::size_t> adj;
    for (auto m : P.minimal_strata)
      if (tc.leq(m, s)) adj.push_back(m);
    std::vector<std::size_t> members;
    for (auto t : trop) {
      bool in = true;
      for (auto m : adj)
        if (!tc.leq(m, t)) in = false;
      if (in) members.push_back(t);
    }
    auto it = index.find(members);
    if (it == index.end()) {
      OpenSet U;
      U.members = members;
      U.adjacent = adj;
      U.core = members.front();
      for (auto m : members) {
        bool all = true;
        for (auto x : members)
          if (!tc.leq(m, x)) all = false;
        if (all) {
          U.core = m;
          break;
        }
      }
      it = index.emplace(members, P.opens.size()).first;
      P.opens.push_back(U);
    }
    P.opens[it->second].generated_by.push_back(s);
    P.open_of[s] = it->second;
  }
  const std::size_t K = P.opens.size();
  P.subset.assign(K, std::vector<bool>(K, false));
  for (std::size_t a = 0; a < K; ++a)
    for (std::size_t b = 0; b < K; ++b) {
      if (a == b) continue;
      auto& A = P.opens[a].members;
      auto& B = P.opens[b].members;
      P.subset[a][b] = A.size() < B.size() && std::includes(B.begin(), B.end(), A.begin(), A.end());
    }
  return P;
}

OpenPolytope open_box(const RatVector& center, const Rational& radius) {
  OpenPolytope P;
  for (std::size_t j = 0; j < center.size(); ++j) {
    LinearConstraint up{RatVector(center.size(), Rational(0)), center[j] + radius};
    up.a[j] = 1;
    LinearConstraint lo{RatVector(center.size(), Rational(0)), radius - center[j]};
    lo.a[j] = -1;
    P.strict.push_back(up);
    P.strict.push_back(lo);
  }
  return P;
}

namespace {

// variables: x (n) then lambda (k) for hull neighborhoods
HSystem meet_system(const Region& P, const Stratum& s) {
  const std::size_t n = s.witness.size();
  HSystem h;
  if (auto* op = std::get_if<OpenPolytope>(&P)) {
    h.dim = n;
    h.eq = s.equalities;
    h.lt = s.inequalities;
    for (auto& c : op->strict) h.lt.push_back(c);
    return h;
  }
  const auto& hn = std::get<HullNeighborhood>(P);
  const std::size_t k = hn.points.size();
  h.dim = n + k;
  auto lift = [&](const LinearConstraint& c) {
    LinearConstraint e{c.a, c.b};
    e.a.resize(n + k, Rational(0));
    return e;
  };
  for (auto& c : s.equalities) h.eq.push_back(lift(c));
  for (auto& c : s.inequalities) h.lt.push_back(lift(c));
  LinearConstraint sum{RatVector(n + k, Rational(0)), 1};
  for (std::size_t i = 0; i < k; ++i) sum.a[n + i] = 1;
  h.eq.push_back(sum);
  for (std::size_t i = 0; i < k; ++i) {
    LinearConstraint nn{RatVector(n + k, Rational(0)), 0};
    nn.a[n + i] = -1;
    h.le.push_back(nn);
  }
  for (std::size_t j = 0; j < n; ++j) {
    LinearConstraint up{RatVector(n + k, Rational(0)), hn.radius};
    LinearConstraint lo{RatVector(n + k, Rational(0)), hn.radius};
    up.a[j] = 1;
    lo.a[j] = -1;
    for (std::size_t i = 0; i < k; ++i) {
      up.a[n + i] = -hn.points[i][j];
      lo.a[n + i] = hn.points[i][j];
    }
    h.lt.push_back(up);
    h.lt.push_back(lo);
  }
  return h;
}

// l-infinity distance from p to Conv(pts)
Rational hull_distance(const RatVector& p, const std::vector<RatVector>& pts) {
  const std::size_t n = p.size(), k = pts.size();
  LpProblem lp;
  lp.nvars = k + 1;  // lambda, s
  LinearConstraint sum{RatVector(k + 1, Rational(0)), 1};
  for (std::size_t i = 0; i < k; ++i) sum.a[i] = 1;
  lp.eq.push_back(sum);
  for (std::size_t i = 0; i < k; ++i) {
    LinearConstraint nn{RatVector(k + 1, Rational(0)), 0};
    nn.a[i] = -1;
    lp.le.push_back(nn);
  }
  for (std::size_t j = 0; j < n; ++j) {
    // |p_j - sum lambda_i q_ij| <= s
    LinearConstraint a{RatVector(k + 1, Rational(0)), -p[j]};
    LinearConstraint b{RatVector(k + 1, Rational(0)), p[j]};
    for (std::size_t i = 0; i < k; ++i) {
      a.a[i] = -pts[i][j];
      b.a[i] = pts[i][j];
    }
    a.a[k] = -1;
    b.a[k] = -1;
    lp.le.push_back(a);
    lp.le.push_back(b);
  }
  lp.objective.assign(k + 1, Rational(0));
  lp.objective[k] = -1;
  LpResult r = solve_lp(lp);
  return -r.value;
}

}  // namespace

bool region_meets(const Region& P, const Stratum& s) { return point_in(P, s).has_value(); }

std::optional<RatVector> point_in(const Region& P, const Stratum& s) {
  auto x = interior_point(meet_system(P, s));
  if (!x) return std::nullopt;
  x->resize(s.witness.size());
  return x;
}

bool region_contains(const Region& outer, const HullNeighborhood& inner) {
  if (auto* op = std::get_if<OpenPolytope>(&outer)) {
    for (auto& c : op->strict) {
      Rational best;
      bool first = true;
      for (auto& p : inner.points) {
        Rational v = dot(c.a, p);
        if (first || v > best) best = v, first = false;
      }
      Rational l1 = 0;
      for (auto& g : c.a) l1 += abs(g);
      if (best + inner.radius * l1 > c.b) return false;
    }
    return true;
  }
  const auto& hn = std::get<HullNeighborhood>(outer);
  for (auto& p : inner.points)
    if (hull_distance(p, hn.points) + inner.radius > hn.radius) return false;
  return true;
}

std::vector<std::size_t> saturate(const Region& P, const TropicalComplex& tc) {
  if (auto* op = std::get_if<OpenPolytope>(&P)) {
    HSystem h;
    h.dim = tc.n;
    h.lt = op->strict;
    if (!interior_point(h)) fail(ErrorCode::EmptyRegion, "region has no interior point");
  } else {
    const auto& hn = std::get<HullNeighborhood>(P);
    if (hn.points.empty() || hn.radius <= 0) fail(ErrorCode::EmptyRegion, "empty hull neighborhood");
  }
  std::vector<std::size_t> out;
  for (auto s : tc.tropical_strata())
    if (region_meets(P, tc.strata[s])) out.push_back(s);
  return out;
}

ZigzagChain zigzag_connect(const Region& p1, const Region& p2, const TropicalComplex& tc) {
  auto sat1 = saturate(p1, tc);
  auto sat2 = saturate(p2, tc);
  if (sat1 != sat2) fail(ErrorCode::NotEquivalent, "saturations differ");
  if (sat1.empty()) fail(ErrorCode::NotEquivalent, "regions miss the tropical locus");
  std::vector<std::size_t> minimal;
  for (auto s : sat1) {
    bool m = true;
    for (auto t : sat1)
      if (t != s && tc.below[t][s]) m = false;
    if (m) minimal.push_back(s);
  }
  auto anchors = [&](const Region& P) {
    std::vector<RatVector> pts;
    for (auto s : minimal) pts.push_back(*point_in(P, tc.strata[s]));
    return pts;
  };
  std::vector<RatVector> b1 = anchors(p1), b2 = anchors(p2);
  std::vector<RatVector> b12 = b1;
  b12.insert(b12.end(), b2.begin(), b2.end());
  Rational r = 1;
  for (int iter = 0; iter < 64; ++iter, r /= 2) {
    HullNeighborhood q1{b1, r}, q2{b2, r}, q12{b12, r};
    if (!region_contains(p1, q1) || !region_contains(p2, q2)) continue;
    if (saturate(q1, tc) != sat1 || saturate(q2, tc) != sat1 || saturate(q12, tc) != sat1) continue;
    return ZigzagChain{p1, q1, q12, q2, p2, sat1};
  }
  fail(ErrorCode::Internal, "zig-zag radius search did not converge");
}

}  // namespace tropmirror
