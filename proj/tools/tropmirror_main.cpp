#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "tropmirror/report.hpp"

namespace fs = std::filesystem;
using namespace tropmirror;

namespace {

using Command = std::function<CommandOutput(const Json&, const CommandOptions&)>;

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream o(p, std::ios::binary);
  if (!o) fail(ErrorCode::Validation, "cannot write " + p.string());
  o << text;
}

// Writes <name>.json plus side files under out (or JSON to stdout), returns the exit code.
int run(const std::string& name, const Command& cmd, const std::string& input_path, const std::string& out_dir,
        const CommandOptions& opt) {
  try {
    Json input = load_json(input_path);
    CommandOutput r = cmd(input, opt);
    if (out_dir.empty()) {
      std::cout << r.report.dump(2) << "\n";
      std::cerr << r.summary;
    } else {
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / (name + ".json"), r.report.dump(2) + "\n");
      for (auto& [file, text] : r.files) write_file(fs::path(out_dir) / file, text);
      std::cout << r.summary;
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << name << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << name << ": internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropmirror: tropical complexes, toric mirrors, matrix factorizations and gluing checks"};
  app.require_subcommand(1, 1);

  std::string input, out_dir, t;
  CommandOptions opt;
  const std::vector<std::pair<std::string, Command>> commands = {
      {"tropical", cmd_tropical}, {"mirror", cmd_mirror}, {"mf", cmd_mf}, {"glue", cmd_glue}, {"amoeba", cmd_amoeba}};

  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--input", input, "input JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory");
    sub->add_flag("--svg", opt.svg, "write SVG plots (n = 2)");
    sub->add_option("--degree-bound", opt.degree_bound, "degree bound N for Hom tables");
    sub->add_option("--t", t, "tropical parameter, rational or e^k");
    sub->add_option("--delta1", opt.delta1, "inner neighbourhood exponent");
    sub->add_option("--delta2", opt.delta2, "outer neighbourhood exponent");
    sub->add_option("--seed", opt.seed, "sampling seed");
  };
  for (auto& [name, cmd] : commands) add_flags(app.add_subcommand(name, name + " report"));
  add_flags(app.add_subcommand("report-all", "run every command"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (!t.empty()) opt.t = t;

  CLI::App* chosen = app.get_subcommands().front();
  const std::string which = chosen->get_name();
  if (which != "report-all") {
    for (auto& [name, cmd] : commands)
      if (name == which) return run(name, cmd, input, out_dir, opt);
  }
  // report-all: every command, first failure decides the exit code
  int rc = 0;
  for (auto& [name, cmd] : commands) {
    int r = run(name, cmd, input, out_dir, opt);
    if (r != 0 && rc == 0) rc = r;
  }
  return rc;
}
