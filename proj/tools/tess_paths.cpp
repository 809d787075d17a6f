#include "tesspath/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo shortest-path lengths on random tessellations"};
  app.require_subcommand(1);
  tesspath::CliOptions opts;
  std::uint64_t seed = 0;
  std::string out;
  for (const char* name : {"simulate", "estimate-xi", "fit", "calibrate", "verify"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", opts.config, "experiment JSON file")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out, "output directory");
    sub->callback([&opts, name] { opts.command = name; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) opts.seed = seed;
    if (sub->count("--out")) opts.out = out;
  }
  return tesspath::run_experiment(opts, std::cerr);
}
