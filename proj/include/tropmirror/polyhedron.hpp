#pragma once

#include <optional>
#include <vector>

#include "tropmirror/exactlat.hpp"

namespace tropmirror {

// a . x (op) b, op given by the container it sits in
struct LinearConstraint {
  RatVector a;
  Rational b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  RatVector x;
};

// maximize c.x subject to le (a.x <= b) and eq (a.x = b); x free.
struct LpProblem {
  std::size_t nvars = 0;
  std::vector<LinearConstraint> le, eq;
  RatVector objective;
};

// Two-phase dense simplex over Q with Bland's rule.
LpResult solve_lp(const LpProblem& p);

// Mixed system with strict rows.
struct HSystem {
  std::size_t dim = 0;
  std::vector<LinearConstraint> eq, le, lt;
};

// A point satisfying eq and le, with every lt row strict, maximizing the
// common slack (capped at 1). Empty if no such point.
std::optional<RatVector> interior_point(const HSystem& h);
bool satisfies(const HSystem& h, const RatVector& x);

// A point in the relative interior of {eq, le}: every le row that is not an
// implicit equality holds strictly. Empty if the system is infeasible.
std::optional<RatVector> relative_interior_point(std::size_t dim, const std::vector<LinearConstraint>& eq,
                                                 const std::vector<LinearConstraint>& le);

struct VRep {
  std::vector<RatVector> vertices;
  std::vector<IntVector> rays;       // extreme rays of the pointed part
  std::vector<RatVector> lineality;  // basis
};

// Vertices/rays of {eq, le} by brute-force basis enumeration. Vertices are
// taken in the orthogonal complement of the lineality space.
VRep vrep(std::size_t dim, const std::vector<LinearConstraint>& eq,
          const std::vector<LinearConstraint>& le);

// Affine dimension of a point set.
std::size_t affine_dim(const std::vector<RatVector>& pts);
std::size_t affine_dim(const std::vector<IntVector>& pts);

// Is p in the convex hull of pts (exact LP).
bool in_convex_hull(const RatVector& p, const std::vector<RatVector>& pts);

// Visit all k-subsets of {0..n-1} in lexicographic order; stop when f returns false.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!f(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace tropmirror
