#include "tropmirror/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "tropmirror/coxgroups.hpp"
#include "tropmirror/foliation.hpp"
#include "tropmirror/mfcalc.hpp"
#include "tropmirror/regsubdiv.hpp"

namespace tropmirror {

namespace {

Rational json_rational(const Json& v, const std::string& what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(std::to_string(v.get<long long>()));
  fail(ErrorCode::Validation, what + ": expected a rational string");
}

Json rat_json(const Rational& q) { return to_string(q); }

Json rat_vec_json(const RatVector& v) {
  Json a = Json::array();
  for (auto& q : v) a.push_back(rat_json(q));
  return a;
}

Json int_vec_json(const IntVector& v) {
  Json a = Json::array();
  for (auto& z : v) a.push_back(z.get_si());
  return a;
}

Json active_json(const ActiveTuple& t) {
  Json a = Json::array();
  for (auto& s : t) a.push_back(s);
  return a;
}

Json header(const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

MonomialSystem system_for(const Json& input, const CommandOptions& opt) {
  MonomialSystem sys = parse_input(input);
  if (opt.t) sys.set_t(TParam::parse(*opt.t));
  return sys;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string yes(bool b) { return b ? "ok" : "FAILED"; }

const Json* options_of(const Json& input) {
  auto it = input.find("options");
  return it != input.end() && it->is_object() ? &*it : nullptr;
}

template <class T>
T option(const Json& input, const std::string& key, T def) {
  const Json* o = options_of(input);
  if (!o || !o->contains(key)) return def;
  try {
    return (*o)[key].get<T>();
  } catch (const std::exception&) {
    fail(ErrorCode::Validation, "option " + key + " has the wrong type");
  }
}

// Plot box and mapping into the 1000x1000 viewbox.
struct Frame {
  double lo = -3, hi = 3;
  double px(double x) const { return 50 + 900 * (x - lo) / (hi - lo); }
  double py(double y) const { return 950 - 900 * (y - lo) / (hi - lo); }
};

Frame frame_for(const TropicalComplex& tc) {
  Frame f;
  for (auto v : tc.vertices)
    for (auto& q : tc.strata[v].witness) {
      f.lo = std::min(f.lo, std::floor(q.get_d()) - 2);
      f.hi = std::max(f.hi, std::ceil(q.get_d()) + 2);
    }
  return f;
}

// segments (in the plane) of the one-dimensional tropical strata, clipped to the frame
std::vector<std::array<double, 4>> edge_segments(const TropicalComplex& tc, const Frame& f) {
  std::vector<std::array<double, 4>> out;
  double far = 2 * (f.hi - f.lo);
  for (std::size_t k = 0; k < tc.edges.size(); ++k) {
    const Stratum& e = tc.strata[tc.edges[k]];
    const auto& vs = tc.edge_vertices[k];
    if (vs.size() >= 2) {
      auto& a = tc.strata[vs[0]].witness;
      auto& b = tc.strata[vs[1]].witness;
      out.push_back({a[0].get_d(), a[1].get_d(), b[0].get_d(), b[1].get_d()});
    } else if (vs.size() == 1 && !e.recession_rays.empty()) {
      auto& a = tc.strata[vs[0]].witness;
      const auto& r = e.recession_rays[0];
      double nr = std::hypot(r[0].get_d(), r[1].get_d());
      out.push_back({a[0].get_d(), a[1].get_d(), a[0].get_d() + far * r[0].get_d() / nr,
                     a[1].get_d() + far * r[1].get_d() / nr});
    } else if (!e.lineality.empty()) {
      auto& w = e.witness;
      const auto& d = e.lineality[0];
      double nd = std::hypot(d[0].get_d(), d[1].get_d());
      double dx = far * d[0].get_d() / nd, dy = far * d[1].get_d() / nd;
      out.push_back({w[0].get_d() - dx, w[1].get_d() - dy, w[0].get_d() + dx, w[1].get_d() + dy});
    }
  }
  return out;
}

// Liang-Barsky clip to the frame box
bool clip(std::array<double, 4>& s, const Frame& f) {
  double t0 = 0, t1 = 1;
  double dx = s[2] - s[0], dy = s[3] - s[1];
  double p[4] = {-dx, dx, -dy, dy};
  double q[4] = {s[0] - f.lo, f.hi - s[0], s[1] - f.lo, f.hi - s[1]};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0) {
      if (q[k] < 0) return false;
      continue;
    }
    double r = q[k] / p[k];
    if (p[k] < 0)
      t0 = std::max(t0, r);
    else
      t1 = std::min(t1, r);
  }
  if (t0 > t1) return false;
  s = {s[0] + t0 * dx, s[1] + t0 * dy, s[0] + t1 * dx, s[1] + t1 * dy};
  return true;
}

void svg_open(std::ostringstream& o, const std::string& title) {
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n";
  o << "<title>" << title << "</title>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
}

void svg_axes(std::ostringstream& o, const Frame& f) {
  o << "<g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  o << "<rect x=\"50\" y=\"50\" width=\"900\" height=\"900\" fill=\"none\"/>\n";
  if (f.lo < 0 && f.hi > 0) {
    o << "<line x1=\"" << fmt(f.px(0)) << "\" y1=\"50\" x2=\"" << fmt(f.px(0)) << "\" y2=\"950\"/>\n";
    o << "<line x1=\"50\" y1=\"" << fmt(f.py(0)) << "\" x2=\"950\" y2=\"" << fmt(f.py(0)) << "\"/>\n";
  }
  o << "</g>\n";
}

void svg_complex(std::ostringstream& o, const TropicalComplex& tc, const Frame& f) {
  o << "<g id=\"tropical\" stroke=\"#c0392b\" stroke-width=\"3\">\n";
  for (auto s : edge_segments(tc, f))
    if (clip(s, f))
      o << "<line x1=\"" << fmt(f.px(s[0])) << "\" y1=\"" << fmt(f.py(s[1])) << "\" x2=\"" << fmt(f.px(s[2]))
        << "\" y2=\"" << fmt(f.py(s[3])) << "\"/>\n";
  o << "</g>\n<g id=\"vertices\" fill=\"#2c3e50\">\n";
  for (auto v : tc.vertices) {
    auto& w = tc.strata[v].witness;
    o << "<circle cx=\"" << fmt(f.px(w[0].get_d())) << "\" cy=\"" << fmt(f.py(w[1].get_d())) << "\" r=\"6\"/>\n";
  }
  o << "</g>\n";
}

void svg_legend(std::ostringstream& o, const std::vector<std::pair<std::string, std::string>>& entries, const Frame& f) {
  o << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"16\">\n";
  o << "<rect x=\"700\" y=\"60\" width=\"240\" height=\"" << 30 + 24 * entries.size()
    << "\" fill=\"white\" stroke=\"#888888\"/>\n";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    double y = 85 + 24.0 * k;
    o << "<rect x=\"712\" y=\"" << fmt(y - 10) << "\" width=\"14\" height=\"14\" fill=\"" << entries[k].second << "\"/>\n";
    o << "<text x=\"734\" y=\"" << fmt(y + 2) << "\">" << entries[k].first << "</text>\n";
  }
  o << "<text x=\"712\" y=\"" << fmt(85 + 24.0 * entries.size()) << "\">box [" << fmt(f.lo) << ", " << fmt(f.hi)
    << "]^2</text>\n";
  o << "</g>\n";
}

}  // namespace

MonomialSystem parse_input(const Json& doc) {
  if (!doc.is_object()) fail(ErrorCode::Validation, "input must be a JSON object");
  try {
    if (!doc.contains("n") || !doc["n"].is_number_integer()) fail(ErrorCode::Validation, "missing integer n");
    long n = doc["n"].get<long>();
    if (n < 1) fail(ErrorCode::Validation, "n must be positive");
    if (!doc.contains("factors") || !doc["factors"].is_array()) fail(ErrorCode::Validation, "missing factors array");
    const Json& fs = doc["factors"];
    if (doc.contains("r") && (!doc["r"].is_number_integer() || doc["r"].get<long>() != static_cast<long>(fs.size())))
      fail(ErrorCode::Validation, "r does not match the number of factors");
    std::vector<Factor> factors;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const Json& f = fs[i];
      std::string where = "factor " + std::to_string(i);
      if (!f.is_object() || !f.contains("monomials") || !f["monomials"].is_array())
        fail(ErrorCode::Validation, where + ": missing monomials");
      Factor fac;
      for (auto& m : f["monomials"]) {
        if (!m.is_array() || m.size() != static_cast<std::size_t>(n))
          fail(ErrorCode::Validation, where + ": monomial of wrong length");
        IntVector a;
        for (auto& e : m) {
          if (!e.is_number_integer()) fail(ErrorCode::Validation, where + ": exponents must be integers");
          a.push_back(Integer(std::to_string(e.get<long long>())));
        }
        fac.monomials.push_back(a);
      }
      if (f.contains("heights")) {
        if (!f["heights"].is_array()) fail(ErrorCode::Validation, where + ": heights must be an array");
        for (auto& h : f["heights"]) fac.heights.push_back(json_rational(h, where + " heights"));
      } else {
        fac.heights.assign(fac.monomials.size(), Rational(0));
      }
      if (fac.heights.size() != fac.monomials.size())
        fail(ErrorCode::Validation, where + ": one height per monomial");
      if (f.contains("coeffs")) {
        if (!f["coeffs"].is_array() || f["coeffs"].size() != fac.monomials.size())
          fail(ErrorCode::Validation, where + ": one coefficient per monomial");
        for (auto& c : f["coeffs"]) {
          if (c.is_array() && c.size() == 2)
            fac.coeffs.emplace_back(json_rational(c[0], where + " coeffs"), json_rational(c[1], where + " coeffs"));
          else
            fac.coeffs.emplace_back(json_rational(c, where + " coeffs"), Rational(0));
        }
      }
      factors.push_back(std::move(fac));
    }
    TParam t;
    if (doc.contains("t")) {
      if (!doc["t"].is_string()) fail(ErrorCode::Validation, "t must be a string");
      t = TParam::parse(doc["t"].get<std::string>());
    }
    return MonomialSystem(static_cast<std::size_t>(n), std::move(factors), t);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, std::string("bad input: ") + e.what());
  }
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Validation, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Validation, path + ": " + e.what());
  }
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonTransverse: return 3;
    case ErrorCode::DualityFailure: return 4;
    case ErrorCode::CocycleFailure: return 5;
    case ErrorCode::BoundViolated: return 6;
    case ErrorCode::Internal:
    case ErrorCode::SolveFailure:
    case ErrorCode::IntegrationDrift: return 1;
    default: return 2;
  }
}

CommandOutput cmd_tropical(const Json& input, const CommandOptions& opt) {
  MonomialSystem sys = system_for(input, opt);
  TropicalComplex tc = build_stratification(sys);
  OpenPoset poset = build_open_poset(tc);
  CommandOutput out;
  Json& j = out.report = header("tropical");
  std::size_t bounded = 0;
  for (auto e : tc.edges)
    if (tc.strata[e].bounded()) ++bounded;
  j["n"] = sys.n();
  j["r"] = sys.r();
  j["vertices"] = tc.vertices.size();
  j["edges"] = tc.edges.size();
  j["bounded"] = bounded;
  j["rays"] = tc.edges.size() - bounded;
  j["regions"] = tc.regions().size();
  Json counts = Json::array();
  for (std::size_t d = 0; d <= sys.n(); ++d)
    counts.push_back({{"dim", d}, {"all", tc.count(d, false)}, {"tropical", tc.count(d, true)}});
  j["strata_by_dim"] = counts;
  Json strata = Json::array();
  for (std::size_t s = 0; s < tc.strata.size(); ++s) {
    const Stratum& st = tc.strata[s];
    strata.push_back({{"index", s},
                      {"dim", st.dim},
                      {"active", active_json(st.active)},
                      {"tropical", st.in_tropical_locus},
                      {"bounded", st.bounded()},
                      {"witness", rat_vec_json(st.witness)}});
  }
  j["strata"] = strata;
  Json order = Json::array();
  for (std::size_t a = 0; a < tc.strata.size(); ++a)
    for (std::size_t b = 0; b < tc.strata.size(); ++b)
      if (tc.below[a][b]) order.push_back({a, b});
  j["order"] = order;
  j["open_poset"] = {{"opens", poset.opens.size()},
                     {"minimal_strata", poset.minimal_strata},
                     {"intersection_closed", poset.intersection_closed()}};
  Json duality;
  try {
    MomentPolytope mp = moment_polytope(sys);
    DualityReport dr = duality_check(mp, tc);
    duality["status"] = "ok";
    duality["pairs"] = dr.pairs.size();
    duality["tropical_pairs"] = dr.tropical_pairs;
    duality["facets_to_regions"] = dr.facets_to_regions;
    Json by = Json::object();
    for (auto& [d, c] : dr.by_dim) by[std::to_string(d)] = c;
    duality["by_stratum_dim"] = by;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DualityFailure) throw;
    duality["status"] = "skipped";
    duality["note"] = e.what();
  }
  j["duality"] = duality;

  std::ostringstream s;
  s << "tropical: n=" << sys.n() << " r=" << sys.r() << " vertices=" << tc.vertices.size()
    << " edges=" << tc.edges.size() << " (bounded " << bounded << ", rays " << tc.edges.size() - bounded
    << ") regions=" << tc.regions().size() << " opens=" << poset.opens.size()
    << " duality=" << duality["status"].get<std::string>() << "\n";
  out.summary = s.str();
  if (opt.svg && sys.n() == 2) out.files["tropical.svg"] = tropical_svg(sys, tc);
  return out;
}

CommandOutput cmd_mirror(const Json& input, const CommandOptions& opt) {
  MonomialSystem sys = system_for(input, opt);
  TropicalComplex tc = build_stratification(sys);
  ToricMirror m = build_mirror(sys);
  DualityReport dr = certify_duality(m, sys, tc);
  CocycleReport cc = transition_cocycle(m);
  CommandOutput out;
  Json& j = out.report = header("mirror");
  Json rays = Json::array();
  for (std::size_t k = 0; k < m.fan.rays.size(); ++k)
    rays.push_back({{"name", m.fan.ray_name(k)}, {"ray", int_vec_json(m.fan.rays[k])}});
  Json maxc = Json::array();
  for (auto c : m.fan.max_cones) maxc.push_back(m.fan.cones[c].rays);
  j["fan"] = {{"ambient", m.fan.ambient},
              {"rays", rays},
              {"max_cones", maxc},
              {"cones", m.fan.cones.size()},
              {"nonsmooth_cones", m.fan.nonsmooth_max_cones()}};
  Integer order = 1;
  Json charts = Json::array();
  for (std::size_t c = 0; c < m.charts.size(); ++c) {
    const Chart& ch = m.charts[c];
    Json cj = {{"index", c},
               {"cone", m.fan.cones[ch.cone].rays},
               {"coordinates", ch.labels},
               {"stacky", ch.stacky},
               {"index_in_lattice", to_string(ch.index)},
               {"W", superpotential_text(m.fan, ch)}};
    if (ch.stacky) {
      cj["cover_group"] = ch.cover.group.to_string();
      cj["cover_order"] = to_string(ch.cover.order);
      if (ch.cover.order > order) order = ch.cover.order;
    }
    charts.push_back(cj);
  }
  j["charts"] = m.charts.size();
  j["chart_list"] = charts;
  j["finite_group_order"] = to_string(order);
  j["W"] = m.charts.empty() ? "" : superpotential_text(m.fan, m.charts.front());
  j["cocycle"] = cc.ok ? "ok" : "failed";
  j["cocycle_detail"] = {{"triples", cc.triples_checked}, {"pairs", cc.pairs_checked}, {"first_failure", cc.first_failure}};
  j["duality"] = {{"status", "ok"}, {"pairs", dr.pairs.size()}, {"tropical_pairs", dr.tropical_pairs}};
  Json crit = Json::array();
  for (auto& c : critical_locus(m.fan))
    crit.push_back({{"cone", c.rays}, {"orbit_codim", c.orbit_codim}, {"fiber_rank", c.fiber_rank}});
  j["critical_locus"] = crit;
  ClassGroup cl = class_group(m.fan);
  CoxGroup cox = cox_group(m.fan);
  j["Cl"] = cl.group.to_string();
  j["cox_group"] = {{"group", cox.group.to_string()}, {"conditions", cox.condition_text()}};
  IrrelevantData irr = irrelevant_data(m.fan);
  Json gens = Json::array();
  for (auto& g : irr.generators) gens.push_back(int_vec_json(g));
  j["irrelevant_ideal"] = {{"generators", gens},
                           {"geometric_quotient", irr.geometric_quotient},
                           {"exceptional_set_empty", irr.exceptional_set_empty}};
  if (!cc.ok) fail(ErrorCode::CocycleFailure, "transition cocycle: " + cc.first_failure);

  std::ostringstream s;
  s << "mirror: rays=" << m.fan.rays.size() << " max_cones=" << m.fan.max_cones.size() << " charts=" << m.charts.size()
    << " nonsmooth=" << m.fan.nonsmooth_max_cones() << " Cl=" << cl.group.to_string() << " cocycle=" << yes(cc.ok)
    << " duality=ok\n";
  for (auto& c : charts) s << "  chart " << c["index"].get<std::size_t>() << ": W = " << c["W"].get<std::string>() << "\n";
  out.summary = s.str();
  return out;
}

CommandOutput cmd_mf(const Json& input, const CommandOptions& opt) {
  MonomialSystem sys = system_for(input, opt);
  const int N = opt.degree_bound;
  if (N < 0) fail(ErrorCode::Validation, "degree bound must be nonnegative");
  long d = option<long>(input, "d", static_cast<long>(sys.n()));
  if (d < 0 || d > 6) fail(ErrorCode::Validation, "option d must lie in [0, 6]");
  const std::size_t m = static_cast<std::size_t>(d) + 1;
  CommandOutput out;
  Json& j = out.report = header("mf");
  j["d"] = d;
  j["degree_bound"] = N;
  Json tables = Json::array();
  bool all_match = true;
  for (std::size_t a = 1; a <= m; ++a)
    for (std::size_t b = 1; b <= m; ++b) {
      HomTable h = hom_cohomology(make_generator(m, a), make_generator(m, b), N);
      bool match = h == closed_form_hom(m, a, b, N);
      all_match = all_match && match;
      Json even = Json::object(), odd = Json::object();
      for (auto& [deg, c] : h.dims[0]) even[std::to_string(deg)] = c;
      for (auto& [deg, c] : h.dims[1]) odd[std::to_string(deg)] = c;
      tables.push_back({{"i", a}, {"j", b}, {"even", even}, {"odd", odd}, {"closed_form", match}});
    }
  j["hom_tables"] = tables;
  j["closed_form_match"] = all_match;
  FoldReport fr = fold_compare(static_cast<std::size_t>(d), N);
  j["fold_compare"] = {{"verdict", fr.exact ? "exact match" : "mismatch"},
                       {"pairs", fr.pairs_checked},
                       {"mismatches", fr.mismatches}};
  Json charts = Json::array();
  std::string chart_note;
  try {
    ToricMirror mir = build_mirror(sys);
    for (std::size_t c = 0; c < mir.charts.size(); ++c) {
      if (mir.charts[c].stacky) {
        charts.push_back({{"index", c}, {"note", "stacky chart, not modelled"}});
        continue;
      }
      MFModel model = chart_mf_model(mir.fan, mir.charts[c]);
      charts.push_back({{"index", c}, {"W", model.superpotential_text()}, {"generators", model.primary_generators()}});
    }
  } catch (const Error& e) {
    chart_note = e.what();
  }
  j["charts"] = charts;
  if (!chart_note.empty()) j["charts_note"] = chart_note;

  std::ostringstream s;
  s << "mf: d=" << d << " N=" << N << " tables=" << tables.size() << " closed_form=" << yes(all_match)
    << " fold_compare=" << (fr.exact ? "exact match" : "mismatch") << " charts=" << charts.size() << "\n";
  out.summary = s.str();
  return out;
}

CommandOutput cmd_glue(const Json& input, const CommandOptions& opt) {
  MonomialSystem sys = system_for(input, opt);
  TropicalComplex tc = build_stratification(sys);
  OpenPoset poset = build_open_poset(tc);
  ToricMirror m = build_mirror(sys);
  certify_duality(m, sys, tc);
  CocycleReport tcc = transition_cocycle(m);
  if (!tcc.ok) fail(ErrorCode::CocycleFailure, "transition cocycle: " + tcc.first_failure);
  SheafDiagram diag = assign_sections(tc, poset, m);
  SheafCocycleReport cc = cocycle_check(diag, m);
  if (!cc.ok) fail(ErrorCode::CocycleFailure, "restriction cocycle: " + cc.first_failure);
  auto layers = layer_vertices(tc);
  auto order = layered_open_order(diag, poset, layers);
  GlobalGenerators gg = glue_generators(diag, order);

  CommandOutput out;
  Json& j = out.report = header("glue");
  j["opens"] = diag.sections.size();
  j["restrictions"] = diag.restrictions.size();
  Json secs = Json::array();
  for (auto& sec : diag.sections)
    secs.push_back({{"open", sec.open},
                    {"core", sec.core},
                    {"chart", sec.chart},
                    {"inverted", sec.inverted},
                    {"generators", sec.generator_labels},
                    {"expected_generators", sec.a_side.expected_generators}});
  j["sections"] = secs;
  j["cocycle"] = {{"status", "ok"},
                  {"transition_triples", tcc.triples_checked},
                  {"chains", cc.chains_checked},
                  {"overlaps", cc.overlaps_checked}};
  Json lay = Json::array();
  for (auto& l : layers) lay.push_back(l);
  j["layers"] = lay;
  j["open_order"] = order;
  j["classes"] = gg.count();
  Json cls = Json::array();
  for (std::size_t c = 0; c < gg.classes.size(); ++c) {
    Json members = Json::array();
    for (auto& [o, g] : gg.classes[c]) members.push_back(diag.sections[o].generator_labels[g]);
    cls.push_back({{"support", gg.support[c]}, {"members", members}});
  }
  j["class_list"] = cls;
  try {
    j["brute_force_classes"] = brute_force_limit(diag);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Validation) throw;
    j["brute_force_classes"] = nullptr;
    j["brute_force_note"] = e.what();
  }
  Json atlas;
  try {
    BoundaryAtlas b = boundary_atlas(m, sys);
    atlas = {{"status", "ok"},
             {"dropped_ray", m.fan.ray_name(b.dropped_ray)},
             {"charts", b.charts.size()},
             {"cocycle", b.cocycle.ok ? "ok" : "failed"},
             {"equations", b.boundary_equations}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotStarShaped && e.code() != ErrorCode::Validation) throw;
    atlas = {{"status", "skipped"}, {"note", e.what()}};
  }
  j["boundary_atlas"] = atlas;

  std::ostringstream s;
  s << "glue: opens=" << diag.sections.size() << " restrictions=" << diag.restrictions.size()
    << " cocycle=ok classes=" << gg.count() << " layers=" << layers.size()
    << " atlas=" << atlas["status"].get<std::string>() << "\n";
  out.summary = s.str();
  out.files["glue.dot"] = poset_dot(poset, diag);
  return out;
}

CommandOutput cmd_amoeba(const Json& input, const CommandOptions& opt) {
  if (!(0 < opt.delta1 && opt.delta1 < opt.delta2 && opt.delta2 < 0.5))
    fail(ErrorCode::Validation, "need 0 < delta1 < delta2 < 1/2");
  MonomialSystem sys = system_for(input, opt);
  const double L = sys.t().log_t;
  const double box = option<double>(input, "box", 3.0);
  const long grid = option<long>(input, "grid", 40);
  const long phases = option<long>(input, "phases", 30);
  if (grid < 1 || phases < 1 || !(box > 0)) fail(ErrorCode::Validation, "grid, phases and box must be positive");
  TropicalComplex tc = build_stratification(sys);

  CommandOutput out;
  Json& j = out.report = header("amoeba");
  j["t"] = sys.t().text;
  j["log_t"] = L;
  Json factors = Json::array();
  std::vector<std::vector<RealVec>> pts;
  std::ostringstream s;
  s << "amoeba: t=" << sys.t().text;
  for (std::size_t i = 0; i < sys.r(); ++i) {
    AmoebaSample am = sample_amoeba(sys, i, L, -box, box, static_cast<std::size_t>(grid),
                                    static_cast<std::size_t>(phases), opt.seed + static_cast<unsigned>(i));
    GapReport gr = gap_bound_check(sys, i, L, am.points, 1e-9, false);
    Json fj = {{"factor", i},
               {"samples", am.points.size()},
               {"solves", am.solves},
               {"solver_failures", am.failures},
               {"bound", gr.bound},
               {"max_gap", gr.max_gap},
               {"violations", gr.violations}};
    if (sys.factor(i).monomials.size() == 2) fj["note"] = "two monomials: exact tie, bound is 0";
    double md = 0;
    if (sys.n() <= 2)
      for (auto& p : am.points) md = std::max(md, distance_to_tropical(sys, i, p));
    if (sys.n() <= 2) fj["max_distance_to_tropical"] = md;
    factors.push_back(fj);
    s << " [factor " << i << ": samples=" << am.points.size() << " max_gap=" << gr.max_gap << " bound=" << gr.bound
      << " violations=" << gr.violations << "]";
    pts.push_back(std::move(am.points));
    if (gr.violations) {
      j["factors"] = factors;
      fail(ErrorCode::BoundViolated, "factor " + std::to_string(i) + ": " + std::to_string(gr.violations) +
                                         " samples exceed the dominance-gap bound");
    }
  }
  j["factors"] = factors;
  j["verdict"] = "bound pass";

  Json fol;
  if (sys.r() == 1 && sys.n() <= 2) {
    FoliationParams p;
    p.log_t = L;
    p.delta1 = opt.delta1;
    p.delta2 = opt.delta2;
    p.box = box;
    try {
      FoliationSystem fs = build_foliation(sys, quadratic_potential(), p);
      FoliationReport fr = check_foliation(fs, 100);
      fol = {{"status", fr.ok() ? "ok" : "failed"},
             {"sandwich", fr.sandwich},
             {"coverage", fr.coverage},
             {"nesting", fr.nesting},
             {"checks", {fr.sandwich_checks, fr.coverage_checks, fr.nesting_checks}},
             {"max_leaf_offset", fr.max_leaf_offset},
             {"first_failure", fr.first_failure}};
      if (option<bool>(input, "trap", false) && sys.n() == 2) {
        std::size_t start = tc.edges.empty() ? 0 : tc.edges.front();
        auto base = fs.sample_base(start, 1);
        if (!base.empty()) {
          TrapReport tr = trap_check(fs, sys, [](const RealVec&) { return RealVec{1.0, 0.0}; }, base.front(),
                                     {0.0, M_PI / L}, 200, 1e-4);
          fol["trap"] = {{"stratum", tr.stratum},
                         {"steps", tr.steps},
                         {"stayed_in_leaf", tr.stayed_in_leaf},
                         {"max_moment_drift", tr.max_moment_drift},
                         {"max_residual", tr.max_residual}};
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooSmallT) throw;
      fol = {{"status", "skipped"}, {"note", e.what()}};
    }
  } else {
    fol = {{"status", "skipped"}, {"note", "foliation checks need one factor and n <= 2"}};
  }
  j["foliation"] = fol;
  s << " foliation=" << fol["status"].get<std::string>() << "\n";
  out.summary = s.str();
  out.files["amoeba.csv"] = amoeba_csv(pts);
  if (opt.svg && sys.n() == 2) out.files["amoeba.svg"] = amoeba_svg(sys, tc, pts);
  return out;
}

std::string tropical_svg(const MonomialSystem& sys, const TropicalComplex& tc) {
  (void)sys;
  Frame f = frame_for(tc);
  std::ostringstream o;
  svg_open(o, "tropical complex");
  svg_axes(o, f);
  svg_complex(o, tc, f);
  svg_legend(o, {{"tropical edges", "#c0392b"}, {"vertices", "#2c3e50"}}, f);
  o << "</svg>\n";
  return o.str();
}

std::string amoeba_svg(const MonomialSystem& sys, const TropicalComplex& tc, const std::vector<std::vector<RealVec>>& points) {
  (void)sys;
  Frame f = frame_for(tc);
  std::ostringstream o;
  svg_open(o, "amoeba samples");
  svg_axes(o, f);
  o << "<g id=\"samples\" fill=\"#2980b9\" fill-opacity=\"0.5\">\n";
  for (auto& fac : points)
    for (auto& p : fac)
      if (p.size() == 2 && p[0] >= f.lo && p[0] <= f.hi && p[1] >= f.lo && p[1] <= f.hi)
        o << "<circle cx=\"" << fmt(f.px(p[0])) << "\" cy=\"" << fmt(f.py(p[1])) << "\" r=\"1.5\"/>\n";
  o << "</g>\n";
  svg_complex(o, tc, f);
  svg_legend(o, {{"Log_t samples", "#2980b9"}, {"tropical edges", "#c0392b"}, {"vertices", "#2c3e50"}}, f);
  o << "</svg>\n";
  return o.str();
}

std::string amoeba_csv(const std::vector<std::vector<RealVec>>& points) {
  std::ostringstream o;
  std::size_t n = 0;
  for (auto& fac : points)
    if (!fac.empty()) n = fac.front().size();
  o << "factor";
  for (std::size_t k = 0; k < n; ++k) o << ",x" << k + 1;
  o << "\n";
  char buf[40];
  for (std::size_t i = 0; i < points.size(); ++i)
    for (auto& p : points[i]) {
      o << i;
      for (double v : p) {
        std::snprintf(buf, sizeof buf, ",%.12g", v);
        o << buf;
      }
      o << "\n";
    }
  return o.str();
}

std::string poset_dot(const OpenPoset& poset, const SheafDiagram& diag) {
  std::ostringstream o;
  o << "digraph opens {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t a = 0; a < poset.opens.size(); ++a) {
    o << "  U" << a << " [label=\"U" << a << " core " << poset.opens[a].core;
    if (a < diag.sections.size())
      for (auto& g : diag.sections[a].generator_labels) o << "\\n" << g;
    o << "\"];\n";
  }
  // Hasse diagram only
  const std::size_t k = poset.opens.size();
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!poset.subset[a][b]) continue;
      bool cover = true;
      for (std::size_t c = 0; c < k && cover; ++c)
        if (poset.subset[a][c] && poset.subset[c][b]) cover = false;
      if (cover) o << "  U" << a << " -> U" << b << ";\n";
    }
  o << "}\n";
  return o.str();
}

}  // namespace tropmirror
