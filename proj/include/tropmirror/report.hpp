#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "tropmirror/error.hpp"
#include "tropmirror/gluesheaf.hpp"
#include "tropmirror/semitrop.hpp"

namespace tropmirror {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

// {n, r, factors: [{monomials, heights, coeffs?}], t, options?}
MonomialSystem parse_input(const Json& doc);
Json load_json(const std::string& path);  // Validation on unreadable or malformed files

struct CommandOptions {
  int degree_bound = 5;
  std::optional<std::string> t;  // overrides the input's t
  double delta1 = 0.2;
  double delta2 = 0.3;
  unsigned seed = 1;
  bool svg = false;
};

struct CommandOutput {
  Json report;
  std::string summary;
  std::map<std::string, std::string> files;  // name -> contents (svg, dot, csv)
};

CommandOutput cmd_tropical(const Json& input, const CommandOptions& opt);
CommandOutput cmd_mirror(const Json& input, const CommandOptions& opt);
CommandOutput cmd_mf(const Json& input, const CommandOptions& opt);
CommandOutput cmd_glue(const Json& input, const CommandOptions& opt);
CommandOutput cmd_amoeba(const Json& input, const CommandOptions& opt);

// 2 validation, 3 NonTransverse, 4 DualityFailure, 5 cocycle, 6 BoundViolated, 1 anything else
int exit_code(ErrorCode c);

// plotting helpers (n = 2)
std::string tropical_svg(const MonomialSystem& sys, const TropicalComplex& tc);
std::string amoeba_svg(const MonomialSystem& sys, const TropicalComplex& tc, const std::vector<std::vector<RealVec>>& points);
std::string amoeba_csv(const std::vector<std::vector<RealVec>>& points);
std::string poset_dot(const OpenPoset& poset, const SheafDiagram& diag);

}  // namespace tropmirror
