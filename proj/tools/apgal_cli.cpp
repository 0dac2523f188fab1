// Command-line front end: `apgal solve` and `apgal sweep`.

#include "apgal/run_spec.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"Certified accelerated proximal gradient and proximal AL solvers"};
  app.require_subcommand(1);

  std::string spec_path, trace_path, summary_path;
  auto* solve = app.add_subcommand("solve", "Run one spec; write trace CSV and summary JSON");
  solve->add_option("--spec", spec_path, "Run specification (JSON)")->required();
  solve->add_option("--trace", trace_path, "Trace CSV output path");
  solve->add_option("--summary", summary_path, "Summary JSON output path (stdout if omitted)");

  std::string eps_list, out_path;
  auto* sweep = app.add_subcommand("sweep", "Run one spec at several target epsilons");
  sweep->add_option("--spec", spec_path, "Run specification (JSON)")->required();
  sweep->add_option("--eps", eps_list, "Comma-separated, strictly decreasing epsilons")->required();
  sweep->add_option("--out", out_path, "Scaling table CSV output path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*solve) return apgal::run_solve(spec_path, trace_path, summary_path);

  std::vector<double> eps;
  std::stringstream ss(eps_list);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      eps.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      std::cerr << "error: cannot parse epsilon '" << item << "'\n";
      return 1;
    }
  }
  return apgal::run_sweep(spec_path, eps, out_path);
}
