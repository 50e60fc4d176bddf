#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "bmir/app.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("BMIR_OUT_DIR");
  return env && *env ? env : "bmir-out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blowup mirror theorem engine: I-functions, ht tables and cone-membership checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = default_out_dir();
  unsigned jobs = 1;
  bool specialize = false;
  app.add_option("--out", out_dir, "artifact directory (default $BMIR_OUT_DIR or bmir-out)");
  app.add_option("--jobs", jobs, "worker threads for the recursion checks")->check(CLI::PositiveNumber);
  app.add_flag("--specialize-lambda", specialize, "substitute distinct primes for the equivariant parameters");

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "execute the tasks of a config file");
  run_cmd->add_option("config", config_path, "JSON config")->required();

  std::string demo_name;
  auto* demo_cmd = app.add_subcommand("demo", "built-in runs");
  demo_cmd->add_option("name", demo_name, "quintic or blowup-matrix")
      ->required()
      ->check(CLI::IsMember({"quintic", "blowup-matrix"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    bmir::RunConfig cfg;
    if (*run_cmd)
      cfg = bmir::load_config(config_path);
    else
      cfg = demo_name == "quintic" ? bmir::demo_quintic_config() : bmir::demo_blowup_matrix_config();
    bmir::RunOptions opts{out_dir, jobs, specialize};
    if (!cfg.name.empty()) std::cout << "# " << cfg.name << "\n";
    bmir::RunResult res = bmir::run(cfg, opts, std::cout);
    for (const auto& f : res.failures) std::cerr << "failed: " << f << "\n";
    return res.exit_code;
  } catch (const bmir::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const bmir::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 2;
  }
}
