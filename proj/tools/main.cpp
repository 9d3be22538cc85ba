#include <iostream>

#include "CLI11.hpp"
#include "cli/commands.hpp"

int main(int argc, char** argv) {
  using freedyn::cli::Options;
  CLI::App app{"Dynamics of free group endomorphisms"};
  app.require_subcommand(1);
  Options o;
  bool json = false;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-f,--endo", o.endo, "Endomorphism file")->required();
    sub->add_flag("--json", json, "Print the JSON report");
  };

  auto* analyze = app.add_subcommand("analyze", "Injectivity, expansiveness, train track data");
  common(analyze);
  analyze->add_option("--kmax", o.kmax, "Expansiveness probe depth")->capture_default_str();
  analyze->add_flag("--dump-graph", o.dump_graph, "Print the image graph and the folded graph map");

  auto* orbit = app.add_subcommand("orbit", "Iterate a tree under the right action");
  common(orbit);
  orbit->add_option("--tree", o.tree, "TreePoint file")->required();
  orbit->add_option("--classes-maxlen", o.classes_maxlen, "Witness class length")->capture_default_str();
  orbit->add_option("--tol", o.tol, "Convergence tolerance")->capture_default_str();
  orbit->add_option("--max-iter", o.max_iter, "Iteration limit")->capture_default_str();

  auto* rays = app.add_subcommand("rays", "Attracting fixed rays on the boundary");
  common(rays);
  rays->add_option("-n", o.prefix, "Prefix length")->capture_default_str();
  rays->add_option("--samples", o.samples, "Attraction samples (0 skips the probe)")->capture_default_str();
  rays->add_option("--depth", o.depth, "Attraction depth")->capture_default_str();
  rays->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* admissible = app.add_subcommand("admissible", "Check T.phi against a splitting");
  common(admissible);
  auto* split = admissible->add_option("--splitting", o.splitting, "collapse:<generators>");
  admissible->add_option("--tree", o.tree, "Splitting as a TreePoint file")->excludes(split);

  auto* rigidity = app.add_subcommand("rigidity", "Double-ratio rigidity probe");
  common(rigidity);
  rigidity->add_option("-k", o.k, "Power of phi")->capture_default_str();
  rigidity->add_option("--samples", o.samples, "Samples")->capture_default_str();
  rigidity->add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* fold = app.add_subcommand("fold", "Fold the rose map to an immersion");
  common(fold);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto outcome = freedyn::cli::run(command, o);
  if (json) {
    std::cout << outcome.report.dump(2) << "\n";
  } else if (outcome.exit_code == 1) {
    std::cerr << outcome.text;
  } else {
    std::cout << outcome.text;
  }
  return outcome.exit_code;
}
