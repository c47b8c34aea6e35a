#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmirror/mirrortoric.hpp"
#include "tropmirror/polynomial.hpp"

namespace tropmirror {

// R --d0--> R --d1--> R with d0 = W/y_i, d1 = y_i, W = y_1...y_m.
struct KoszulMF {
  std::size_t m = 0;
  std::size_t index = 0;  // 1-based distinguished variable
  Polynomial d0, d1;
  std::string to_string() const;
};

KoszulMF make_generator(std::size_t m, std::size_t i);
Polynomial product_of_variables(std::size_t m);

// parity -> total polynomial degree -> dimension; zero entries omitted.
struct HomTable {
  int N = 0;
  std::array<std::map<int, std::size_t>, 2> dims;

  std::size_t at(int parity, int degree) const;
  std::size_t cumulative(int parity, int upto) const;
  bool operator==(const HomTable& o) const { return N == o.N && dims == o.dims; }
  std::string to_string() const;
};

// Cohomology of the Z/2-graded Hom complex, one multidegree slice at a time.
// Inverted variables range over exponents in [-N, N]; the table is then a window.
HomTable hom_cohomology(const KoszulMF& a, const KoszulMF& b, int N, const std::vector<std::size_t>& inverted = {});
// Hilbert functions of R/(y_i, W^i) (even) or R/(y_i, y_j) (odd).
HomTable closed_form_hom(std::size_t m, std::size_t i, std::size_t j, int N);

// Hom between generators of Coh{y_1...y_{d+1} = 0}; keys (cohomological, polynomial).
struct CohTable {
  std::size_t d = 0, i = 0, j = 0;
  int N = 0;
  std::map<std::pair<int, int>, std::size_t> dims;
  std::size_t at(int c, int p) const;
};
CohTable coh_hom(std::size_t d, std::size_t i, std::size_t j, int N);
HomTable fold(const CohTable& t);

struct FoldReport {
  bool exact = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> mismatches;
};
FoldReport fold_compare(std::size_t d, int N);

struct MFBlock {
  std::vector<std::string> coords;
  std::vector<std::string> primary;  // surviving non-enveloped generators
  std::string enveloped;
  bool enveloped_alive = true;
};

struct MFModel {
  std::vector<std::string> variables;
  std::vector<MFBlock> blocks;
  std::set<std::string> inverted;

  std::size_t primary_count() const;
  std::vector<std::vector<std::string>> primary_generators() const;  // one label per block
  std::string superpotential_text() const;
};

// Blocks are label lists; the last label of each block is the enveloped one.
MFModel chart_mf_model(const Chart& chart, const std::vector<std::vector<std::string>>& blocks);
// Blocks read off the superpotential monomials of the chart.
MFModel chart_mf_model(const Fan& fan, const Chart& chart);
MFModel generator_restriction(const MFModel& model, const std::string& coord);
// Kunneth product of per-block tables; generators given as one label per block.
HomTable model_hom_table(const MFModel& model, const std::vector<std::string>& g1, const std::vector<std::string>& g2,
                         int N);

struct PantsCoverEntry {
  unsigned mask = 0;  // proper subset I of {1..d+1}
  std::vector<std::size_t> members;
  std::size_t torus_rank = 0;  // |I|, core piece T^I . Delta_I
};

struct PantsCoverPoset {
  std::size_t d = 0;
  unsigned prime = 0;
  std::vector<PantsCoverEntry> subsets;
  std::vector<std::vector<bool>> leq;
  bool meet_law = true;
  bool union_is_hyperplanes = true;
  std::size_t points_checked = 0;
};
PantsCoverPoset pants_cover_poset(std::size_t d, unsigned prime = 5);

}  // namespace tropmirror
