#include "gsep/report.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Separation and stationarity checks for finite collections of sets"};
  app.set_version_flag("--version", std::string(gsep::kToolkitVersion));
  app.require_subcommand(1);

  gsep::RunOptions opt;
  std::string format = "json";
  std::string instance_path, suite_dir;

  for (const auto& name : gsep::commands()) {
    auto* sub = app.add_subcommand(name);
    auto* file = sub->add_option("instance", instance_path, "Instance JSON file")->check(CLI::ExistingFile);
    auto* dir = sub->add_option("--suite", suite_dir, "Run every *.json in a directory")->check(CLI::ExistingDirectory);
    file->excludes(dir);
    sub->add_option("--seed", opt.seed, "Seed of all randomized searches")->capture_default_str();
    sub->add_option("--budget", opt.budget, "Random directions per scan (sampling uses 40x)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--tol-scale", opt.tol_scale, "Multiplies every tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--format", format, "json, table or csv (csv needs --suite)")
        ->check(CLI::IsMember({"json", "table", "csv"}))
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!suite_dir.empty()) {
      const auto run = gsep::run_suite(command, suite_dir, opt);
      if (format == "csv") {
        std::cout << run.csv();
      } else if (format == "table") {
        std::cout << run.table();
      } else {
        std::cout << run.to_json().dump(2) << "\n";
      }
      return gsep::exit_code(run.outcome());
    }
    if (instance_path.empty()) throw gsep::Error("an instance file or --suite is required", "usage");
    if (format == "csv") throw gsep::Error("csv output needs --suite", "usage");
    const auto inst = gsep::load_instance(instance_path);
    const auto report = gsep::run(command, inst, opt);
    std::cout << gsep::emit(report, gsep::format_from_string(format));
    return gsep::exit_code(report.outcome);
  } catch (const gsep::Error& e) {
    std::cerr << "gsep: " << e.label() << ": " << e.what() << "\n";
    return 2;
  }
}
