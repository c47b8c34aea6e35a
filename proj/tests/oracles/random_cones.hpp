#pragma once

#include <random>

#include "tropmirror/exactlat.hpp"

namespace oracles {

// d <= max_d, d independent integer rays in Z^d with entries in [-3, 3]
tropmirror::SimplicialCone random_cone(std::mt19937& rng, std::size_t max_d = 5);

// Index of span(rays) in its saturation: gcd of the maximal minors (|det| when full).
tropmirror::Integer minor_gcd_index(const tropmirror::SimplicialCone& cone);

}  // namespace oracles
