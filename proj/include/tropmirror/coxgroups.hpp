#pragma once

#include <string>
#include <vector>

#include "tropmirror/exactlat.hpp"

namespace tropmirror {

struct Fan;

struct AbGroupPresentation {
  std::size_t free_rank = 0;
  std::vector<Integer> invariant_factors;  // each >= 2, d1 | d2 | ...
  std::vector<std::string> labels;

  Integer torsion_order() const;
  bool trivial() const { return free_rank == 0 && invariant_factors.empty(); }
  // "0", "Z", "Z/3", "Z^2 + Z/2 + Z/6"
  std::string to_string() const;
  friend bool operator==(const AbGroupPresentation& a, const AbGroupPresentation& b) {
    return a.free_rank == b.free_rank && a.invariant_factors == b.invariant_factors;
  }
};

// coker(m : Z^cols -> Z^rows)
AbGroupPresentation cokernel_presentation(const IntMatrix& m);
// Character group Hom(coker(rel), Q/Z) of a finite group given by a
// square nonsingular relation matrix; it is coker(rel^T).
AbGroupPresentation finite_dual(const IntMatrix& relations);

struct ClassGroup {
  AbGroupPresentation group;
  std::size_t torus_factor_rank = 0;  // dim M - rank of the rays
  IntMatrix ray_matrix;               // rows: rays
};
ClassGroup class_group(const Fan& fan);

struct CoxGroup {
  AbGroupPresentation group;  // G = Hom(Cl, C*): torus of rank free_rank times finite part
  std::vector<IntVector> conditions;    // prod_rho t_rho^{c[rho]} = 1, one per basis vector of M
  std::vector<IntVector> free_weights;  // weights of the torus part on the Cox coordinates
  std::size_t torus_factor_rank = 0;
  std::vector<std::string> condition_text() const;
};
CoxGroup cox_group(const Fan& fan);

struct IrrelevantData {
  std::vector<IntVector> generators;  // exponent vectors over the rays, one per max cone
  bool geometric_quotient = false;    // fan simplicial
  bool exceptional_set_empty = false; // B(Sigma) = <1>
};
IrrelevantData irrelevant_data(const Fan& fan);

struct FiniteCoverGroup {
  Integer order;
  AbGroupPresentation group;  // G(sigma) = N / span(rays)
  AbGroupPresentation dual;   // G^(sigma) = Z^rays / M
};
FiniteCoverGroup finite_cover_group(const SimplicialCone& cone);

}  // namespace tropmirror
