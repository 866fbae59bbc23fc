#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "phasectl/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Phase-model spike timing control: synthesis, verification, simulation"};
  app.require_subcommand(1);

  const char* commands[] = {"simulate",            "controllability",
                            "spike-single",        "time-optimal-single",
                            "spike-two-timeopt",   "spike-ensemble"};
  const char* descriptions[] = {
      "Integrate an ensemble under a given control",
      "Lie-bracket span rank test at a given phase point",
      "Minimum-power control spiking one neuron at an exact time",
      "Fastest spike of one neuron under a control bound",
      "Time-optimal bang-bang spiking of two neurons",
      "Pseudospectral minimum-energy ensemble spiking"};

  std::string scenario;
  phasectl::RunOptions opts;
  std::uint64_t seed = 0;
  bool seed_given = false;

  for (int i = 0; i < 6; ++i) {
    CLI::App* sub = app.add_subcommand(commands[i], descriptions[i]);
    sub->add_option("--scenario", scenario, "Scenario file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "Output directory (default: current)");
    sub->add_flag("--svg", opts.svg, "Also write SVG plots");
    sub->add_option("--seed", seed, "RNG seed (overrides the scenario's)")
        ->each([&seed_given](const std::string&) { seed_given = true; });
  }

  CLI11_PARSE(app, argc, argv);

  if (seed_given) opts.seed = seed;
  return phasectl::run_scenario(app.get_subcommands().front()->get_name(), scenario, opts);
}
