#include <string>

#include <CLI11.hpp>

#include "waveharm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Orthonormal radiating-wave scattering pipeline"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  int threads = 0;

  const char* names[] = {"solve", "sweep", "field", "kernel", "dtn",
                         "validate"};
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("config", config_path, "JSON job config")->required();
    sub->add_option("--out-dir", out_dir, "Output directory");
    sub->add_option("--threads", threads,
                    "Worker threads (default: WAVEHARM_THREADS or hardware)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : waveharm::cli::kExitConfig;
  }

  return waveharm::cli::run_command(app.get_subcommands().front()->get_name(),
                                    config_path, out_dir, threads);
}
