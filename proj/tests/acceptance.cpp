// Acceptance runner: one PASS/FAIL line per check of the selected criteria.

#include <CLI11.hpp>

#include <iostream>

#include "ctxdim/reproduce.hpp"

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> criteria;
  std::uint64_t seed = 1;
  app.add_option("-c,--criterion", criteria, "criteria to run (default: all)")
      ->check(CLI::Range(1, ctxdim::kCriterionCount));
  app.add_option("--seed", seed, "base seed");
  CLI11_PARSE(app, argc, argv);

  ctxdim::ReproduceConfig cfg;
  cfg.seed = seed;
  cfg.only = criteria;
  const auto rows = ctxdim::reproduce(cfg);
  std::cout << ctxdim::summary_table(rows) << std::flush;
  return ctxdim::all_pass(rows) ? 0 : 1;
}
