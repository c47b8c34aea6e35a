#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropmirror/mfcalc.hpp"
#include "tropmirror/mirrortoric.hpp"
#include "tropmirror/tropics.hpp"

namespace tropmirror {

// Per factor: local pants dimension, legs removed by the open, cover group order.
struct ASideDescriptor {
  std::vector<std::size_t> pants_dim;
  std::vector<std::size_t> legs;
  Integer cover_order = 1;
  std::size_t expected_generators = 0;
};

struct Section {
  std::size_t open = 0;
  std::size_t core = 0;    // stratum
  std::size_t vertex = 0;  // stratum whose chart presents the section
  std::size_t chart = 0;
  std::vector<std::size_t> alternatives;  // charts of the other adjacent vertices
  std::vector<std::string> inverted;
  MFModel model;
  // one ray per block; labels are the section chart's coordinate names
  std::vector<std::vector<std::size_t>> generators;
  std::vector<std::string> generator_labels;
  ASideDescriptor a_side;
};

struct Restriction {
  std::size_t from = 0, to = 0;  // opens, to strictly inside from
  std::vector<std::optional<std::size_t>> map;
};

struct SheafDiagram {
  std::vector<std::vector<bool>> subset;  // copied from the open poset
  std::vector<Section> sections;
  std::vector<Restriction> restrictions;

  const Restriction* restriction(std::size_t from, std::size_t to) const;
};

SheafDiagram assign_sections(const TropicalComplex& tc, const OpenPoset& poset, const ToricMirror& mirror);

struct SheafCocycleReport {
  bool ok = true;
  std::size_t chains_checked = 0;
  std::size_t overlaps_checked = 0;
  std::string first_failure;
};
SheafCocycleReport cocycle_check(const SheafDiagram& diag, const ToricMirror& mirror);

// Vertex layers by graph distance along bounded edges.
std::vector<std::vector<std::size_t>> layer_vertices(const TropicalComplex& tc, std::optional<std::size_t> v0 = {});
std::size_t default_start_vertex(const TropicalComplex& tc);
// Opens ordered by the first layer meeting their adjacent vertices.
std::vector<std::size_t> layered_open_order(const SheafDiagram& diag, const OpenPoset& poset,
                                            const std::vector<std::vector<std::size_t>>& layers);

struct GlobalGenerators {
  // each class: (open, generator index) pairs
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> classes;
  std::vector<std::vector<std::size_t>> support;  // opens per class
  std::size_t count() const { return classes.size(); }
};
// Unions are processed in the given open order (default 0..n-1).
GlobalGenerators glue_generators(const SheafDiagram& diag, const std::vector<std::size_t>& order = {});
// Minimal nonempty restriction-closed families: subset enumeration up to 22 generators, naive fixpoint closures above.
std::size_t brute_force_limit(const SheafDiagram& diag);

struct BoundaryAtlas {
  std::size_t dropped_ray = 0;
  std::vector<Chart> charts;
  std::vector<TransitionMap> transitions;
  CocycleReport cocycle;
  std::vector<std::string> boundary_equations;  // per chart
};
// Hypersurface case: the subdivision of the monomials must be star-shaped from 0.
BoundaryAtlas boundary_atlas(const ToricMirror& mirror, const MonomialSystem& sys);

}  // namespace tropmirror
