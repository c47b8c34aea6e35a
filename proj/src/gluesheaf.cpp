#include "tropmirror/gluesheaf.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "tropmirror/regsubdiv.hpp"

namespace tropmirror {

const Restriction* SheafDiagram::restriction(std::size_t from, std::size_t to) const {
  for (auto& r : restrictions)
    if (r.from == from && r.to == to) return &r;
  return nullptr;
}

namespace {

bool in_sorted(const std::vector<std::size_t>& v, std::size_t x) { return std::binary_search(v.begin(), v.end(), x); }

// ray k of chart survives on the open with core tuple `act`
bool ray_active(const Fan& fan, std::size_t k, const ActiveTuple& act) {
  auto [i, a] = fan.ray_labels.at(k);
  return in_sorted(act.at(i), a);
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

}  // namespace

SheafDiagram assign_sections(const TropicalComplex& tc, const OpenPoset& poset, const ToricMirror& mirror) {
  if (!mirror.duality_verified) fail(ErrorCode::DualityNotVerified, "run the duality check before building sections");
  const Fan& fan = mirror.fan;
  if (fan.ray_labels.empty()) fail(ErrorCode::Validation, "fan has no monomial labels");

  std::map<std::size_t, std::size_t> chart_of_vertex;
  for (std::size_t c = 0; c < mirror.charts.size(); ++c) {
    std::size_t s = tc.find(cone_active(fan, mirror.charts[c].cone));
    if (s < tc.strata.size()) chart_of_vertex[s] = c;
  }

  SheafDiagram diag;
  diag.subset = poset.subset;
  for (std::size_t u = 0; u < poset.opens.size(); ++u) {
    const OpenSet& U = poset.opens[u];
    Section sec;
    sec.open = u;
    sec.core = U.core;
    std::vector<std::size_t> adj = U.adjacent;
    std::sort(adj.begin(), adj.end());
    bool found = false;
    for (auto v : adj) {
      auto it = chart_of_vertex.find(v);
      if (it == chart_of_vertex.end()) continue;
      if (!found) {
        sec.vertex = v;
        sec.chart = it->second;
        found = true;
      } else {
        sec.alternatives.push_back(it->second);
      }
    }
    if (!found) fail(ErrorCode::NotFullDimensional, "open without an adjacent vertex chart");

    const Chart& ch = mirror.charts[sec.chart];
    const ActiveTuple& act = tc.strata[U.core].active;
    std::vector<std::vector<std::string>> blocks(fan.r);
    std::vector<std::size_t> env(fan.r, ch.rays.size());
    for (std::size_t j = 0; j < ch.rays.size(); ++j) {
      std::size_t k = ch.rays[j];
      std::size_t i = fan.ray_labels[k].first;
      if (!ray_active(fan, k, act))
        sec.inverted.push_back(ch.labels[j]);
      else if (env[i] == ch.rays.size() || k < ch.rays[env[i]])
        env[i] = j;
    }
    for (std::size_t j = 0; j < ch.rays.size(); ++j) {
      std::size_t i = fan.ray_labels[ch.rays[j]].first;
      if (j != env[i]) blocks[i].push_back(ch.labels[j]);
    }
    for (std::size_t i = 0; i < fan.r; ++i) {
      if (env[i] == ch.rays.size()) fail(ErrorCode::Internal, "core has no active monomial in a factor");
      blocks[i].push_back(ch.labels[env[i]]);
    }
    sec.model = chart_mf_model(ch, blocks);
    for (auto& l : sec.inverted) sec.model = generator_restriction(sec.model, l);
    for (auto& g : sec.model.primary_generators()) {
      std::vector<std::size_t> rays;
      for (auto& l : g) rays.push_back(ch.rays[ch.coordinate(l)]);
      sec.generators.push_back(rays);
      sec.generator_labels.push_back("O(" + join(g, ",") + ")");
    }

    ASideDescriptor& A = sec.a_side;
    A.cover_order = ch.index;
    A.expected_generators = 1;
    for (std::size_t i = 0; i < fan.r; ++i) {
      std::size_t m = 0;
      for (auto k : ch.rays)
        if (fan.ray_labels[k].first == i) ++m;
      std::size_t legs = m - act[i].size();
      A.pants_dim.push_back(m - 2);
      A.legs.push_back(legs);
      A.expected_generators *= m - 1 - legs;
    }
    diag.sections.push_back(std::move(sec));
  }

  for (std::size_t from = 0; from < diag.sections.size(); ++from)
    for (std::size_t to = 0; to < diag.sections.size(); ++to) {
      if (!diag.subset[to][from]) continue;
      Restriction r;
      r.from = from;
      r.to = to;
      auto& tg = diag.sections[to].generators;
      for (auto& g : diag.sections[from].generators) {
        auto it = std::find(tg.begin(), tg.end(), g);
        r.map.push_back(it == tg.end() ? std::nullopt : std::optional<std::size_t>(it - tg.begin()));
      }
      diag.restrictions.push_back(std::move(r));
    }
  return diag;
}

SheafCocycleReport cocycle_check(const SheafDiagram& diag, const ToricMirror& mirror) {
  SheafCocycleReport rep;
  auto bad = [&](const std::string& s) {
    if (rep.ok) rep.first_failure = s;
    rep.ok = false;
  };
  const std::size_t n = diag.sections.size();
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t b = 0; b < n; ++b) {
      if (!diag.subset[b][c]) continue;
      for (std::size_t a = 0; a < n; ++a) {
        if (!diag.subset[a][b]) continue;
        ++rep.chains_checked;
        const Restriction* cb = diag.restriction(c, b);
        const Restriction* ba = diag.restriction(b, a);
        const Restriction* ca = diag.restriction(c, a);
        if (!cb || !ba || !ca) {
          bad("missing restriction in chain " + std::to_string(a) + "<" + std::to_string(b) + "<" + std::to_string(c));
          continue;
        }
        for (std::size_t g = 0; g < ca->map.size(); ++g) {
          std::optional<std::size_t> via;
          if (cb->map[g]) via = ba->map[*cb->map[g]];
          if (via != ca->map[g])
            bad("chain " + std::to_string(a) + "<" + std::to_string(b) + "<" + std::to_string(c) + " generator " +
                diag.sections[c].generator_labels[g]);
        }
      }
    }

  const Fan& fan = mirror.fan;
  for (auto& sec : diag.sections) {
    const Chart& src = mirror.charts[sec.chart];
    std::vector<std::size_t> live;  // source coordinates not inverted
    for (std::size_t j = 0; j < src.labels.size(); ++j)
      if (std::find(sec.inverted.begin(), sec.inverted.end(), src.labels[j]) == sec.inverted.end()) live.push_back(j);
    for (auto alt : sec.alternatives) {
      const TransitionMap* T = mirror.transition(sec.chart, alt);
      if (!T) continue;  // stacky chart, no transition stored
      ++rep.overlaps_checked;
      const Chart& tgt = mirror.charts[alt];
      std::size_t tgt_live = 0;
      for (auto k : tgt.rays)
        if (std::find_if(live.begin(), live.end(), [&](std::size_t j) { return src.rays[j] == k; }) != live.end())
          ++tgt_live;
      if (tgt_live != live.size()) {
        bad("open " + std::to_string(sec.open) + ": surviving coordinates differ between charts");
        continue;
      }
      for (auto j : live) {
        std::size_t k = tgt.coordinate_of_ray(src.rays[j]);
        for (auto j2 : live)
          if (T->E(k, j2) != (j2 == j ? 1 : 0))
            bad("open " + std::to_string(sec.open) + ": transition does not carry " + src.labels[j] + " to " +
                tgt.labels[k]);
      }
    }
  }
  (void)fan;
  return rep;
}

std::size_t default_start_vertex(const TropicalComplex& tc) {
  if (tc.vertices.empty()) fail(ErrorCode::Disconnected, "tropical locus has no vertices");
  std::map<std::size_t, std::size_t> free_edges;
  for (std::size_t e = 0; e < tc.edges.size(); ++e)
    if (tc.edge_vertices[e].size() == 1) ++free_edges[tc.edge_vertices[e][0]];
  std::size_t best = tc.vertices[0];
  for (auto v : tc.vertices) {
    std::size_t fv = free_edges[v], fb = free_edges[best];
    if (fv > fb || (fv == fb && tc.strata[v].witness < tc.strata[best].witness)) best = v;
  }
  return best;
}

std::vector<std::vector<std::size_t>> layer_vertices(const TropicalComplex& tc, std::optional<std::size_t> v0) {
  std::size_t start = v0 ? *v0 : default_start_vertex(tc);
  if (std::find(tc.vertices.begin(), tc.vertices.end(), start) == tc.vertices.end())
    fail(ErrorCode::IndexOutOfRange, "start is not a vertex");
  std::map<std::size_t, std::vector<std::size_t>> nbr;
  for (std::size_t e = 0; e < tc.edges.size(); ++e)
    if (tc.edge_vertices[e].size() == 2) {
      nbr[tc.edge_vertices[e][0]].push_back(tc.edge_vertices[e][1]);
      nbr[tc.edge_vertices[e][1]].push_back(tc.edge_vertices[e][0]);
    }
  std::map<std::size_t, std::size_t> dist{{start, 0}};
  std::vector<std::vector<std::size_t>> layers{{start}};
  std::deque<std::size_t> q{start};
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop_front();
    auto ns = nbr[v];
    std::sort(ns.begin(), ns.end());
    for (auto w : ns) {
      if (dist.count(w)) continue;
      dist[w] = dist[v] + 1;
      if (layers.size() <= dist[w]) layers.emplace_back();
      layers[dist[w]].push_back(w);
      q.push_back(w);
    }
  }
  if (dist.size() != tc.vertices.size()) fail(ErrorCode::Disconnected, "bounded edges do not connect all vertices");
  for (auto& l : layers) std::sort(l.begin(), l.end());
  return layers;
}

std::vector<std::size_t> layered_open_order(const SheafDiagram& diag, const OpenPoset& poset,
                                            const std::vector<std::vector<std::size_t>>& layers) {
  std::map<std::size_t, std::size_t> layer_of;
  for (std::size_t k = 0; k < layers.size(); ++k)
    for (auto v : layers[k]) layer_of[v] = k;
  std::vector<std::pair<std::size_t, std::size_t>> key;
  for (std::size_t u = 0; u < diag.sections.size(); ++u) {
    std::size_t best = layers.size();
    for (auto v : poset.opens[u].adjacent)
      if (layer_of.count(v)) best = std::min(best, layer_of[v]);
    key.push_back({best, u});
  }
  std::sort(key.begin(), key.end());
  std::vector<std::size_t> order;
  for (auto& [k, u] : key) order.push_back(u);
  return order;
}

GlobalGenerators glue_generators(const SheafDiagram& diag, const std::vector<std::size_t>& order_in) {
  const std::size_t n = diag.sections.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t u = 0; u < n; ++u) offset[u + 1] = offset[u] + diag.sections[u].generators.size();
  std::vector<std::size_t> parent(offset[n]);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::size_t> order = order_in;
  if (order.empty()) {
    order.resize(n);
    std::iota(order.begin(), order.end(), 0);
  }
  for (auto u : order)
    for (auto& r : diag.restrictions) {
      if (r.from != u) continue;
      for (std::size_t g = 0; g < r.map.size(); ++g)
        if (r.map[g]) {
          std::size_t a = find(offset[u] + g), b = find(offset[r.to] + *r.map[g]);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
  std::map<std::size_t, std::size_t> cls;
  GlobalGenerators out;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t g = 0; g < diag.sections[u].generators.size(); ++g) {
      std::size_t root = find(offset[u] + g);
      auto [it, fresh] = cls.emplace(root, out.classes.size());
      if (fresh) {
        out.classes.emplace_back();
        out.support.emplace_back();
      }
      auto& c = out.classes[it->second];
      for (auto& [u2, g2] : c)
        if (u2 == u)
          fail(ErrorCode::InconsistentIdentification, "generators " + diag.sections[u].generator_labels[g2] + " and " +
                                                          diag.sections[u].generator_labels[g] + " glued on one open");
      c.push_back({u, g});
      out.support[it->second].push_back(u);
    }
  return out;
}

std::size_t brute_force_limit(const SheafDiagram& diag) {
  std::vector<std::pair<std::size_t, std::size_t>> nodes;
  for (std::size_t u = 0; u < diag.sections.size(); ++u)
    for (std::size_t g = 0; g < diag.sections[u].generators.size(); ++g) nodes.push_back({u, g});
  const std::size_t k = nodes.size();
  if (k > 400) fail(ErrorCode::Validation, "diagram too large for brute-force enumeration");
  auto id = [&](std::size_t u, std::size_t g) {
    return static_cast<std::size_t>(std::find(nodes.begin(), nodes.end(), std::make_pair(u, g)) - nodes.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (auto& r : diag.restrictions)
    for (std::size_t g = 0; g < r.map.size(); ++g)
      if (r.map[g]) links.push_back({id(r.from, g), id(r.to, *r.map[g])});
  if (k > 22) {
    // too many subsets: close each single generator under the links by rescanning to a fixpoint
    std::set<std::vector<bool>> closures;
    for (std::size_t start = 0; start < k; ++start) {
      std::vector<bool> in(k, false);
      in[start] = true;
      for (bool grew = true; grew;) {
        grew = false;
        for (auto& [a, b] : links)
          if (in[a] != in[b]) {
            in[a] = in[b] = true;
            grew = true;
          }
      }
      closures.insert(in);
    }
    std::size_t minimal = 0;
    for (auto& m : closures) {
      bool min = true;
      for (auto& o : closures) {
        if (o == m) continue;
        bool inside = true;
        for (std::size_t x = 0; x < k && inside; ++x)
          if (o[x] && !m[x]) inside = false;
        if (inside) {
          min = false;
          break;
        }
      }
      if (min) ++minimal;
    }
    return minimal;
  }
  // a compatible family contains a generator iff it contains all its restrictions and preimages
  std::vector<unsigned long> closed;
  for (unsigned long mask = 1; mask < (1ul << k); ++mask) {
    bool ok = true;
    for (auto& [a, b] : links)
      if (((mask >> a) & 1ul) != ((mask >> b) & 1ul)) {
        ok = false;
        break;
      }
    if (ok) closed.push_back(mask);
  }
  std::size_t minimal = 0;
  for (auto m : closed) {
    bool min = true;
    for (auto o : closed)
      if (o != m && (o & ~m) == 0) {
        min = false;
        break;
      }
    if (min) ++minimal;
  }
  return minimal;
}

BoundaryAtlas boundary_atlas(const ToricMirror& mirror, const MonomialSystem& sys) {
  if (sys.r() != 1) fail(ErrorCode::Validation, "boundary atlas is implemented for hypersurfaces");
  const Factor& f = sys.factor(0);
  std::size_t zero = f.monomials.size();
  for (std::size_t a = 0; a < f.monomials.size(); ++a)
    if (std::all_of(f.monomials[a].begin(), f.monomials[a].end(), [](const Integer& x) { return x == 0; })) zero = a;
  if (zero == f.monomials.size()) fail(ErrorCode::NotStarShaped, "0 is not a monomial");
  RegularSubdivision sub = regular_subdivision(f.monomials, f.heights);
  if (!is_star_shaped(sub)) fail(ErrorCode::NotStarShaped, "some cell misses 0 or cuts the interior");

  const Fan& fan = mirror.fan;
  BoundaryAtlas atlas;
  atlas.dropped_ray = fan.rays.size();
  for (std::size_t k = 0; k < fan.rays.size(); ++k)
    if (fan.ray_labels.at(k) == std::make_pair(std::size_t{0}, zero)) atlas.dropped_ray = k;
  if (atlas.dropped_ray == fan.rays.size()) fail(ErrorCode::Internal, "no ray for the monomial 0");

  std::vector<std::size_t> drop;  // per chart: dropped coordinate
  for (auto& ch : mirror.charts) {
    std::size_t j0 = ch.coordinate_of_ray(atlas.dropped_ray);
    if (j0 == ch.rays.size()) fail(ErrorCode::NotStarShaped, "chart cone misses the ray of 0");
    drop.push_back(j0);
    Chart b = ch;
    b.rays.erase(b.rays.begin() + j0);
    b.labels.erase(b.labels.begin() + j0);
    b.block.erase(b.block.begin() + j0);
    if (!b.weights.empty()) b.weights.erase(b.weights.begin() + j0);
    std::string eq;
    for (auto& l : b.labels) eq += (eq.empty() ? "" : "*") + ("y[" + l + "]");
    atlas.boundary_equations.push_back((eq.empty() ? "1" : eq) + " = 0");
    atlas.charts.push_back(std::move(b));
  }
  for (auto& T : mirror.transitions) {
    std::size_t js = drop[T.source], jt = drop[T.target];
    const std::size_t n = T.E.rows();
    for (std::size_t k = 0; k < n; ++k)
      if (k != jt && T.E(k, js) != 0) fail(ErrorCode::CocycleFailure, "transition mixes in the dropped coordinate");
    TransitionMap R;
    R.source = T.source;
    R.target = T.target;
    R.adjacent = T.adjacent;
    R.E = IntMatrix(n - 1, n - 1);
    for (std::size_t k = 0, kk = 0; k < n; ++k) {
      if (k == jt) continue;
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == js) continue;
        R.E(kk, jj++) = T.E(k, j);
      }
      ++kk;
    }
    atlas.transitions.push_back(std::move(R));
  }
  ToricMirror tmp;
  tmp.charts = atlas.charts;
  tmp.transitions = atlas.transitions;
  atlas.cocycle = transition_cocycle(tmp);
  return atlas;
}

}  // namespace tropmirror
