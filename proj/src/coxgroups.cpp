#include "tropmirror/coxgroups.hpp"

#include "tropmirror/mirrortoric.hpp"

namespace tropmirror {

Integer AbGroupPresentation::torsion_order() const {
  Integer o = 1;
  for (auto& d : invariant_factors) o *= d;
  return o;
}

std::string AbGroupPresentation::to_string() const {
  if (trivial()) return "0";
  std::string s;
  if (free_rank == 1) s = "Z";
  if (free_rank > 1) s = "Z^" + std::to_string(free_rank);
  for (auto& d : invariant_factors) s += (s.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
  return s;
}

AbGroupPresentation cokernel_presentation(const IntMatrix& m) {
  Cokernel c = cokernel(m);
  AbGroupPresentation g;
  g.free_rank = c.free_rank;
  g.invariant_factors = c.torsion;
  for (std::size_t k = 0; k < g.free_rank; ++k) g.labels.push_back("f" + std::to_string(k + 1));
  for (std::size_t k = 0; k < g.invariant_factors.size(); ++k) g.labels.push_back("g" + std::to_string(k + 1));
  return g;
}

AbGroupPresentation finite_dual(const IntMatrix& relations) {
  if (relations.rows() != relations.cols() || determinant(relations) == 0)
    fail(ErrorCode::NotFullDimensional, "finite group needs a square nonsingular relation matrix");
  return cokernel_presentation(relations.transpose());
}

namespace {
IntMatrix rays_as_rows(const Fan& fan) {
  IntMatrix m(fan.rays.size(), fan.ambient);
  for (std::size_t i = 0; i < fan.rays.size(); ++i)
    for (std::size_t j = 0; j < fan.ambient; ++j) m(i, j) = fan.rays[i][j];
  return m;
}
}  // namespace

ClassGroup class_group(const Fan& fan) {
  ClassGroup cg;
  cg.ray_matrix = rays_as_rows(fan);
  // m -> (<m,u_rho>)_rho ; a torus factor only enlarges the kernel
  cg.group = cokernel_presentation(cg.ray_matrix);
  cg.torus_factor_rank = fan.ambient - rank(cg.ray_matrix);
  return cg;
}

CoxGroup cox_group(const Fan& fan) {
  ClassGroup cl = class_group(fan);
  CoxGroup g;
  g.group = cl.group;
  g.torus_factor_rank = cl.torus_factor_rank;
  for (std::size_t j = 0; j < fan.ambient; ++j) g.conditions.push_back(cl.ray_matrix.col(j));
  g.free_weights = integer_kernel(cl.ray_matrix.transpose());
  return g;
}

std::vector<std::string> CoxGroup::condition_text() const {
  std::vector<std::string> out;
  for (auto& c : conditions) {
    std::string lhs;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      std::string f = "t" + std::to_string(k + 1);
      if (c[k] != 1) f += "^" + c[k].get_str();
      lhs += f;
    }
    if (lhs.empty()) continue;
    out.push_back(lhs + "=1");
  }
  return out;
}

IrrelevantData irrelevant_data(const Fan& fan) {
  IrrelevantData d;
  d.geometric_quotient = true;
  for (auto c : fan.max_cones) {
    IntVector e(fan.rays.size(), Integer(1));
    for (auto k : fan.cones[c].rays) e[k] = 0;
    d.generators.push_back(e);
    if (!fan.cones[c].simplicial) d.geometric_quotient = false;
  }
  for (auto& e : d.generators) {
    bool one = true;
    for (auto& x : e)
      if (x != 0) one = false;
    if (one) d.exceptional_set_empty = true;
  }
  return d;
}

FiniteCoverGroup finite_cover_group(const SimplicialCone& cone) {
  FiniteCoverGroup g;
  g.order = lattice_index(cone);
  IntMatrix R = cone.ray_matrix();  // rows = rays
  g.dual = cokernel_presentation(R);
  g.group = cokernel_presentation(R.transpose());
  if (g.dual.free_rank != 0 || g.group.free_rank != 0 || g.dual.torsion_order() != g.order ||
      g.group.torsion_order() != g.order)
    fail(ErrorCode::Internal, "cover group order disagrees with the lattice index");
  return g;
}

}  // namespace tropmirror
