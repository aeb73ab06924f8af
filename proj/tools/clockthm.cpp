// clockthm: command-line front end for the clock-state library.
//
// Exit codes: 0 success, 1 check failure, 2 input error, 3 state cap hit.

#include <CLI11.hpp>

#include <clockthm/error.hpp>

#include <iostream>

#include "commands.hpp"

using namespace clockthm;
using namespace clockthm::cli;


int main(int argc, char** argv) {
  CLI::App app{"Clock states, clock moves and the mock Alexander polynomial of knotoid diagrams"};
  app.require_subcommand(1);
  std::size_t cap = 0;
  app.add_option("--cap", cap, "state cap (default: $CLOCKTHM_STATE_CAP or 10000)");

  std::string path;
  bool json = false;

  auto* validate = app.add_subcommand("validate", "check a KDF file and trace its faces");
  validate->add_option("path", path, "KDF file")->required();
  validate->add_flag("--json", json, "print regions, incidence and dual graph as JSON");

  StatesFlags sf;
  auto* states = app.add_subcommand("states", "count, list or extremize clock states");
  states->add_option("path", path, "KDF file")->required();
  states->add_flag("--enumerate", sf.enumerate, "list every state in canonical order");
  states->add_flag("--count", sf.count, "print the number of states");
  states->add_flag("--extremal", sf.extremal, "print the clocked and counter-clocked states");
  states->add_flag("--json", sf.json, "JSON output");

  std::string dot;
  bool tables = false;
  auto* lattice = app.add_subcommand("lattice", "build the state graph and verify the lattice");
  lattice->add_option("path", path, "KDF file")->required();
  lattice->add_option("--dot", dot, "write the Hasse diagram as DOT ('-' for stdout)");
  lattice->add_flag("--json", json, "print the lattice report as JSON");
  lattice->add_flag("--tables", tables, "include join/meet tables in the JSON report");

  std::string weights = "default", method = "sum";
  auto* poly = app.add_subcommand("poly", "mock Alexander polynomial");
  poly->add_option("path", path, "KDF file")->required();
  poly->add_option("--weights", weights, "weight table: file, 'default' (the file's own, else standard), 'standard' or 'ones'");
  poly->add_option("--method", method, "sum, permanent or both")->check(CLI::IsMember({"sum", "permanent", "both"}));

  bool trees = false;
  auto* trails = app.add_subcommand("trails", "trail of every clock state");
  trails->add_option("path", path, "KDF file")->required();
  trails->add_flag("--json", json, "JSON output");
  trails->add_flag("--trees", trees, "also print the rooted tree of each trail");

  auto* classify = app.add_subcommand("classify", "knot-type or proper");
  classify->add_option("path", path, "KDF file")->required();

  std::string dir, report;
  bool all = false, timing = false;
  auto* corpus = app.add_subcommand("corpus", "run the checks over a corpus directory");
  corpus->add_option("dir", dir, "directory of .kdf files")->required();
  corpus->add_flag("--all-checks", all, "run every invariant suite, not only the expected values");
  corpus->add_option("--json", report, "write the run report as JSON ('-' for stdout)");
  corpus->add_flag("--timing", timing, "include per-entry timings");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_ok : exit_input;
  }

  try {
    if (!app.get_option("--cap")->count()) cap = cap_from_env();
    if (*validate) return cmd_validate(path, json);
    if (*states) return cmd_states(path, sf, cap);
    if (*lattice) return cmd_lattice(path, dot, json, tables, cap);
    if (*poly) return cmd_poly(path, weights, method);
    if (*trails) return cmd_trails(path, json, trees, cap);
    if (*classify) return cmd_classify(path);
    if (*corpus) return cmd_corpus(dir, all, report, timing, cap);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_cap;
  } catch (const ParseError& e) {
    std::cerr << path << dir << ": " << e.what() << '\n';
    return exit_input;
  } catch (const ValidationError& e) {
    std::cerr << path << ": " << e.what() << '\n';
    return exit_input;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_input;
  } catch (const TheoryDiscrepancy& e) {
    std::cerr << "theory discrepancy: " << e.what() << '\n';
    return exit_check;
  }
  return exit_ok;
}
