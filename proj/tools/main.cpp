#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace irlink::cli;

  CLI::App app{"Simulator for a pendulum-stabilized infrared audio link"};
  app.set_version_flag("--version", IRLINK_VERSION_STRING);
  app.require_subcommand(1);

  Command cmd;
  std::string config;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  const char* help[] = {
      "Run one closed-loop experiment (time series, received WAV, report)",
      "Classify the stability outcome for each configured set angle",
      "Evaluate the closed-loop stability predicate over a Kp x Kd grid",
      "Analog band-pass response, band edges and group delay",
      "Audio classification for every vibration row, controller on and off",
  };
  for (std::size_t i = 0; i < verbs().size(); ++i) {
    auto* sub = app.add_subcommand(verbs()[i], help[i]);
    sub->add_option("--config", config, "Config file (section.key = value)")->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Random seed, overrides run.seed");
    sub->add_option("--jobs", cmd.jobs, "Parallel scenarios (results do not depend on it)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_option("--set", cmd.overrides, "KEY=VALUE override, repeatable")->allow_extra_args(false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  auto* sub = app.get_subcommands().front();
  cmd.verb = sub->get_name();
  if (!config.empty()) cmd.config_path = config;
  cmd.output_dir = out_dir;
  if (sub->count("--seed") > 0) cmd.seed = seed;
  return execute(cmd, std::cout, std::cerr);
}
