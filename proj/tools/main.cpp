#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "coagkit/config.hpp"
#include "coagkit/errors.hpp"
#include "coagkit/experiments.hpp"
#include "coagkit/version.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string output_dir;  // overrides the config when non-empty
  int threads = 1;
  bool seedless = false;
};

int run(const std::string& study, const CliOptions& opts) {
  try {
    coagkit::ExperimentConfig cfg =
        coagkit::parse_config_file(opts.config_path);
    if (cfg.study != coagkit::study_from_name(study)) {
      std::fprintf(stderr,
                   "error: config declares study '%s' but the '%s' command "
                   "was invoked\n",
                   coagkit::study_name(cfg.study).c_str(), study.c_str());
      return 2;
    }
    if (!opts.output_dir.empty()) cfg.output_dir = opts.output_dir;
    // --seedless is accepted for symmetry with other runners: every study
    // here is deterministic and uses no random numbers anywhere.
    auto tables = coagkit::run_study(cfg, opts.threads);
    auto paths = coagkit::write_tables(tables, cfg.output_dir);
    for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
    for (const auto& nt : tables) {
      for (const auto& [key, value] : nt.table.metadata()) {
        if (key == "failed_case") {
          std::fprintf(stderr, "warning (%s): failed case %s\n",
                       nt.name.c_str(), value.c_str());
        }
      }
    }
    return 0;
  } catch (const coagkit::Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coagkit - coagulation equation solver studies"};
  app.set_version_flag("--version", std::string("coagkit ") + coagkit::kVersion);
  app.require_subcommand(1);

  CliOptions opts;
  const std::pair<const char*, const char*> studies[] = {
      {"validate", "error against the analytic solutions over time and dx"},
      {"self-converge", "error against a fine-grid run at t = t_end"},
      {"moments", "zeroth/first moment series, t = 0 table, fine-grid diffs"},
      {"cost", "floating-point operation counts of one RHS assembly"},
      {"xmax-sweep", "t_end error across truncation points x_max"},
  };
  for (const auto& [name, desc] : studies) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", opts.config_path, "experiment config file")
        ->required();
    sub->add_option("--output-dir", opts.output_dir,
                    "override the config output directory");
    sub->add_option("--threads", opts.threads, "worker threads for cases")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--seedless", opts.seedless,
                  "no-op; all studies are deterministic by construction");
  }

  CLI11_PARSE(app, argc, argv);
  for (const auto& [name, desc] : studies) {
    if (app.got_subcommand(name)) return run(name, opts);
  }
  return 2;
}
