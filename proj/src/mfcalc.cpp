#include "tropmirror/mfcalc.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "tropmirror/parallel.hpp"

namespace tropmirror {

Polynomial product_of_variables(std::size_t m) { return Polynomial::monomial(Exponent(m, 1)); }

KoszulMF make_generator(std::size_t m, std::size_t i) {
  if (i < 1 || i > m) fail(ErrorCode::IndexOutOfRange, "generator index " + std::to_string(i) + " not in 1.." + std::to_string(m));
  KoszulMF g;
  g.m = m;
  g.index = i;
  Exponent e(m, 1);
  e[i - 1] = 0;
  g.d0 = Polynomial::monomial(e);
  g.d1 = Polynomial::variable(m, i - 1);
  Polynomial W = product_of_variables(m);
  if (!(g.d1 * g.d0 == W) || !(g.d0 * g.d1 == W)) fail(ErrorCode::Internal, "d1 d0 != W");
  return g;
}

std::string KoszulMF::to_string() const {
  return "R --[" + d0.to_string() + "]--> R --[" + d1.to_string() + "]--> R";
}

std::size_t HomTable::at(int parity, int degree) const {
  auto& m = dims.at(parity & 1);
  auto it = m.find(degree);
  return it == m.end() ? 0 : it->second;
}

std::size_t HomTable::cumulative(int parity, int upto) const {
  std::size_t s = 0;
  for (auto& [deg, v] : dims.at(parity & 1))
    if (deg <= upto) s += v;
  return s;
}

std::string HomTable::to_string() const {
  std::ostringstream os;
  for (int p = 0; p < 2; ++p) {
    os << (p == 0 ? "even:" : " odd:");
    for (auto& [deg, v] : dims[p]) os << " " << deg << "->" << v;
  }
  return os.str();
}

namespace {

// One summand of the Hom complex: component (source slot -> target slot) with a
// multidegree shift; basis in slice mu is y^(mu - shift) when that is admissible.
struct Term {
  std::size_t to;
  int sign;
  Exponent mult;
};

struct Complex {
  std::size_t m;
  // components 0,1 even (f0, f1); 2,3 odd (g01, g10)
  std::array<Exponent, 4> shift;
  std::array<std::vector<Term>, 4> out;
  Exponent delta[2];  // degree of the differential leaving parity p
};

Exponent add(const Exponent& a, const Exponent& b, int s = 1) {
  Exponent c(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) c[k] = a[k] + s * b[k];
  return c;
}

Complex hom_complex(const KoszulMF& a, const KoszulMF& b) {
  Complex c;
  c.m = a.m;
  Exponent da0 = a.d0.degree(), da1 = a.d1.degree(), db0 = b.d0.degree(), db1 = b.d1.degree();
  Exponent zero(a.m, 0);
  // D(f) = d_b f - f d_a on even, D(g) = d_b g + g d_a on odd.
  c.out[0] = {{2, 1, db0}, {3, -1, da1}};
  c.out[1] = {{2, -1, da0}, {3, 1, db1}};
  c.out[2] = {{0, 1, db1}, {1, 1, da1}};
  c.out[3] = {{0, 1, da0}, {1, 1, db0}};
  Exponent d1 = da1;
  c.shift[0] = zero;
  c.shift[1] = add(da0, db0, -1);
  c.shift[2] = add(d1, db0, -1);
  c.shift[3] = add(d1, da1, -1);
  c.delta[0] = d1;
  c.delta[1] = add(db1, c.shift[2], -1);
  // every arrow must respect the grading
  for (std::size_t s = 0; s < 4; ++s)
    for (auto& t : c.out[s]) {
      Exponent lhs = add(add(c.shift[s], c.delta[s / 2]), t.mult, -1);
      if (lhs != c.shift[t.to]) fail(ErrorCode::Internal, "inconsistent Hom grading");
    }
  return c;
}

bool admissible(const Exponent& e, const std::vector<bool>& inv) {
  for (std::size_t k = 0; k < e.size(); ++k)
    if (!inv[k] && e[k] < 0) return false;
  return true;
}

std::vector<std::size_t> basis(const Complex& c, int parity, const Exponent& mu, const std::vector<bool>& inv) {
  std::vector<std::size_t> b;
  for (std::size_t s = 2 * std::size_t(parity); s < 2 * std::size_t(parity) + 2; ++s)
    if (admissible(add(mu, c.shift[s], -1), inv)) b.push_back(s);
  return b;
}

// rank of D leaving parity p at slice mu
std::size_t diff_rank(const Complex& c, int parity, const Exponent& mu, const std::vector<bool>& inv) {
  auto src = basis(c, parity, mu, inv);
  auto tgt = basis(c, 1 - parity, add(mu, c.delta[parity]), inv);
  if (src.empty() || tgt.empty()) return 0;
  RatMatrix M(tgt.size(), src.size());
  for (std::size_t col = 0; col < src.size(); ++col)
    for (auto& t : c.out[src[col]]) {
      auto it = std::find(tgt.begin(), tgt.end(), t.to);
      if (it == tgt.end()) fail(ErrorCode::Internal, "image outside the target slice");
      M(it - tgt.begin(), col) += t.sign;
    }
  return rank(M);
}

void for_each_slice(std::size_t m, const std::vector<int>& lo, const std::vector<int>& hi, int N,
                    const std::function<void(const Exponent&)>& f) {
  std::vector<int> rest(m + 1, 0);  // minimal contribution of coordinates k..m-1
  for (std::size_t k = m; k-- > 0;) rest[k] = rest[k + 1] + lo[k];
  Exponent mu(m);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int used) {
    if (k == m) {
      f(mu);
      return;
    }
    for (int v = lo[k]; v <= hi[k] && used + v + rest[k + 1] <= N; ++v) {
      mu[k] = v;
      rec(k + 1, used + v);
    }
  };
  rec(0, 0);
}

}  // namespace

HomTable hom_cohomology(const KoszulMF& a, const KoszulMF& b, int N, const std::vector<std::size_t>& inverted) {
  if (a.m != b.m) fail(ErrorCode::MismatchedAmbient, "generators live over different rings");
  if (N < 0) fail(ErrorCode::Validation, "degree bound must be nonnegative");
  Complex c = hom_complex(a, b);
  std::vector<bool> inv(c.m, false);
  for (auto k : inverted) {
    if (k >= c.m) fail(ErrorCode::IndexOutOfRange, "inverted variable");
    inv[k] = true;
  }
  std::vector<int> lo(c.m), hi(c.m);
  for (std::size_t k = 0; k < c.m; ++k) {
    if (inv[k]) {
      lo[k] = -N;
      hi[k] = N;
      continue;
    }
    lo[k] = 0;
    for (auto& s : c.shift) lo[k] = std::min(lo[k], s[k]);
    hi[k] = N + 2 * static_cast<int>(c.m);
  }
  HomTable t;
  t.N = N;
  for_each_slice(c.m, lo, hi, N, [&](const Exponent& mu) {
    int total = 0;
    for (int v : mu) total += v;
    for (int p = 0; p < 2; ++p) {
      std::size_t dimC = basis(c, p, mu, inv).size();
      if (dimC == 0) continue;
      std::size_t ker = dimC - diff_rank(c, p, mu, inv);
      std::size_t im = diff_rank(c, 1 - p, add(mu, c.delta[1 - p], -1), inv);
      if (ker > im) t.dims[p][total] += ker - im;
    }
  });
  return t;
}

HomTable closed_form_hom(std::size_t m, std::size_t i, std::size_t j, int N) {
  if (i < 1 || i > m || j < 1 || j > m) fail(ErrorCode::IndexOutOfRange, "generator index");
  HomTable t;
  t.N = N;
  std::vector<int> lo(m, 0), hi(m, N);
  hi[i - 1] = 0;
  hi[j - 1] = 0;
  for_each_slice(m, lo, hi, N, [&](const Exponent& mu) {
    int total = 0;
    for (int v : mu) total += v;
    if (i == j) {
      bool divisible = true;  // W^i | y^mu
      for (std::size_t k = 0; k < m; ++k)
        if (k != i - 1 && mu[k] == 0) divisible = false;
      if (!divisible) t.dims[0][total] += 1;
    } else {
      t.dims[1][total] += 1;
    }
  });
  return t;
}

std::size_t CohTable::at(int c, int p) const {
  auto it = dims.find({c, p});
  return it == dims.end() ? 0 : it->second;
}

CohTable coh_hom(std::size_t d, std::size_t i, std::size_t j, int N) {
  std::size_t m = d + 1;
  if (i < 1 || i > m || j < 1 || j > m) fail(ErrorCode::IndexOutOfRange, "sheaf generator index");
  CohTable t;
  t.d = d;
  t.i = i;
  t.j = j;
  t.N = N;
  std::vector<int> lo(m, 0), hi(m, N);
  hi[i - 1] = 0;
  hi[j - 1] = 0;
  for_each_slice(m, lo, hi, N, [&](const Exponent& mu) {
    int p = 0;
    for (int v : mu) p += v;
    bool divisible = true;
    for (std::size_t k = 0; k < m; ++k)
      if (k != i - 1 && mu[k] == 0) divisible = false;
    for (int k = 0; k <= N; ++k) {
      if (i == j) {
        // R[u]/(y_i, u W^i)
        if (k > 0 && divisible) break;
        t.dims[{2 * k, p}] += 1;
      } else {
        t.dims[{2 * k + 1, p}] += 1;
      }
    }
  });
  return t;
}

HomTable fold(const CohTable& t) {
  HomTable h;
  h.N = t.N;
  for (auto& [key, v] : t.dims) {
    auto [c, p] = key;
    int deg = p + c / 2;
    if (deg <= t.N) h.dims[c % 2][deg] += v;
  }
  return h;
}

FoldReport fold_compare(std::size_t d, int N) {
  std::size_t m = d + 1;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= m; ++j) pairs.push_back({i, j});
  std::vector<std::string> bad(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) {
    auto [i, j] = pairs[k];
    HomTable lhs = fold(coh_hom(d, i, j, N));
    HomTable rhs = hom_cohomology(make_generator(d + 2, i), make_generator(d + 2, j), N);
    if (!(lhs == rhs))
      bad[k] = "(" + std::to_string(i) + "," + std::to_string(j) + "): folded " + lhs.to_string() + " vs " +
               rhs.to_string();
  });
  FoldReport r;
  r.pairs_checked = pairs.size();
  for (auto& s : bad)
    if (!s.empty()) r.mismatches.push_back(s);
  r.exact = r.mismatches.empty();
  return r;
}

std::size_t MFModel::primary_count() const {
  if (blocks.empty()) return 0;
  std::size_t n = 1;
  for (auto& b : blocks) n *= b.primary.size();
  return n;
}

std::vector<std::vector<std::string>> MFModel::primary_generators() const {
  std::vector<std::vector<std::string>> out;
  if (blocks.empty()) return out;
  out.push_back({});
  for (auto& b : blocks) {
    std::vector<std::vector<std::string>> next;
    for (auto& prefix : out)
      for (auto& g : b.primary) {
        auto v = prefix;
        v.push_back(g);
        next.push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

std::string MFModel::superpotential_text() const {
  std::string s;
  for (auto& b : blocks) {
    std::string term;
    for (auto& c : b.coords) term += (term.empty() ? "" : "*") + ("y[" + c + "]");
    s += (s.empty() ? "" : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

MFModel chart_mf_model(const Chart& chart, const std::vector<std::vector<std::string>>& blocks) {
  MFModel model;
  model.variables = chart.labels;
  std::set<std::string> seen;
  for (auto& blk : blocks) {
    if (blk.empty()) fail(ErrorCode::Validation, "empty superpotential block");
    MFBlock b;
    for (auto& l : blk) {
      chart.coordinate(l);  // UnknownCoordinate
      if (!seen.insert(l).second) fail(ErrorCode::OverlappingBlocks, "coordinate " + l + " in two blocks");
      b.coords.push_back(l);
    }
    b.enveloped = b.coords.back();
    b.primary.assign(b.coords.begin(), b.coords.end() - 1);
    model.blocks.push_back(b);
  }
  return model;
}

MFModel chart_mf_model(const Fan& fan, const Chart& chart) {
  if (chart.stacky) fail(ErrorCode::NotSmooth, "chart model needs a smooth chart");
  std::vector<std::vector<std::string>> blocks;
  for (auto& mono : superpotential(fan, chart)) {
    std::vector<std::string> blk;
    for (std::size_t j = 0; j < mono.exponents.size(); ++j) {
      if (mono.exponents[j] == 0) continue;
      if (mono.exponents[j] != 1) fail(ErrorCode::Validation, "superpotential block is not square-free");
      blk.push_back(chart.labels[j]);
    }
    blocks.push_back(blk);
  }
  return chart_mf_model(chart, blocks);
}

MFModel generator_restriction(const MFModel& model, const std::string& coord) {
  if (std::find(model.variables.begin(), model.variables.end(), coord) == model.variables.end())
    fail(ErrorCode::UnknownCoordinate, "no coordinate " + coord);
  MFModel out = model;
  out.inverted.insert(coord);
  for (auto& b : out.blocks) {
    b.primary.erase(std::remove(b.primary.begin(), b.primary.end(), coord), b.primary.end());
    if (b.enveloped == coord) b.enveloped_alive = false;
  }
  return out;
}

HomTable model_hom_table(const MFModel& model, const std::vector<std::string>& g1, const std::vector<std::string>& g2,
                         int N) {
  if (g1.size() != model.blocks.size() || g2.size() != model.blocks.size())
    fail(ErrorCode::DimensionMismatch, "one generator label per block expected");
  HomTable acc;
  acc.N = N;
  acc.dims[0][0] = 1;
  for (std::size_t b = 0; b < model.blocks.size(); ++b) {
    auto& blk = model.blocks[b];
    auto pos = [&](const std::string& l) {
      auto it = std::find(blk.coords.begin(), blk.coords.end(), l);
      if (it == blk.coords.end()) fail(ErrorCode::UnknownCoordinate, "label " + l + " not in block");
      return static_cast<std::size_t>(it - blk.coords.begin()) + 1;
    };
    std::size_t m = blk.coords.size();
    std::vector<std::size_t> inv;
    for (std::size_t k = 0; k < m; ++k)
      if (model.inverted.count(blk.coords[k])) inv.push_back(k);
    HomTable t = hom_cohomology(make_generator(m, pos(g1[b])), make_generator(m, pos(g2[b])), N, inv);
    HomTable next;
    next.N = N;
    for (int p = 0; p < 2; ++p)
      for (auto& [d1, v1] : acc.dims[p])
        for (int q = 0; q < 2; ++q)
          for (auto& [d2, v2] : t.dims[q])
            if (d1 + d2 <= N) next.dims[(p + q) % 2][d1 + d2] += v1 * v2;
    acc = next;
  }
  return acc;
}

PantsCoverPoset pants_cover_poset(std::size_t d, unsigned prime) {
  if (d > 6) fail(ErrorCode::Validation, "pants dimension too large for the pointwise check");
  PantsCoverPoset P;
  P.d = d;
  P.prime = prime;
  std::size_t m = d + 1;
  unsigned full = (1u << m) - 1;
  for (unsigned mask = 0; mask < full; ++mask) {
    PantsCoverEntry e;
    e.mask = mask;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1u) e.members.push_back(k + 1);
    e.torus_rank = e.members.size();
    P.subsets.push_back(e);
  }
  std::stable_sort(P.subsets.begin(), P.subsets.end(),
                   [](auto& a, auto& b) { return a.members.size() < b.members.size(); });
  std::size_t n = P.subsets.size();
  P.leq.assign(n, std::vector<bool>(n, false));
  std::map<unsigned, std::size_t> where;
  for (std::size_t a = 0; a < n; ++a) where[P.subsets[a].mask] = a;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      P.leq[a][b] = (P.subsets[a].mask & ~P.subsets[b].mask) == 0;
  // I cap I' is proper and is the greatest common lower bound
  for (std::size_t a = 0; a < n && P.meet_law; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto it = where.find(P.subsets[a].mask & P.subsets[b].mask);
      if (it == where.end()) {
        P.meet_law = false;
        break;
      }
      for (std::size_t c = 0; c < n; ++c)
        if (P.leq[c][a] && P.leq[c][b] && !P.leq[c][it->second]) P.meet_law = false;
    }
  // pointwise over F_p^{d+1}: union of the coordinate subspaces A^I = product vanishes
  std::vector<unsigned> y(m, 0);
  for (;;) {
    ++P.points_checked;
    unsigned support = 0;
    unsigned long long prod = 1;
    for (std::size_t k = 0; k < m; ++k) {
      if (y[k] != 0) support |= 1u << k;
      prod = prod * y[k] % prime;
    }
    bool in_union = false;
    for (auto& e : P.subsets)
      if ((support & ~e.mask) == 0) in_union = true;
    if (in_union != (prod == 0)) P.union_is_hyperplanes = false;
    std::size_t k = 0;
    while (k < m && ++y[k] == prime) y[k++] = 0;
    if (k == m) break;
  }
  return P;
}

}  // namespace tropmirror
