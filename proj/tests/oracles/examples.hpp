#pragma once

#include <string>
#include <vector>

#include "tropmirror/tropics.hpp"

namespace oracles {

using tropmirror::MonomialSystem;

tropmirror::Factor factor(const std::vector<std::vector<long>>& monomials, const std::vector<long>& heights);

MonomialSystem pants();        // 1 + x + y
MonomialSystem square();       // two-vertex curve
MonomialSystem square_star();  // same support, star-shaped lift
MonomialSystem chain3();
MonomialSystem chain4();
MonomialSystem two_lines();
MonomialSystem ci();  // x1 + x2 + x3, x1^2 x2 + x3
MonomialSystem halfline();
MonomialSystem cube();  // unit cube, lift with one bounded 2-cell

struct Named {
  std::string name;
  MonomialSystem sys;
};
std::vector<Named> shipped();

}  // namespace oracles
