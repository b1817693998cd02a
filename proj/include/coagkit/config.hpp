#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace coagkit {

enum class Study { Validate, SelfConverge, Moments, Cost, XmaxSweep };

Study study_from_name(const std::string& name);
std::string study_name(Study study);

// Declarative experiment description. Parsed from flat "key = value" files
// with comma-separated lists; every field has a recorded default so the
// resolved configuration can be echoed byte-for-byte into result tables.
struct ExperimentConfig {
  Study study = Study::Validate;
  std::string kernel = "constant";        // constant | multiplicative
  std::string scheme = "both";            // fem | flfm | both
  double x_min = -1.0;                    // < 0 = kernel-specific default
  std::vector<double> x_max_list;         // key "x_max"; sweeps list several
  std::vector<std::size_t> n_list;        // ascending boundary counts
  std::vector<double> dx_list;            // optional; xmax_sweep resolves n
                                          // from these spacings per x_max
  double t0 = -1.0;                       // key "t_span" = "t0,t_end"
  double t_end = -1.0;
  std::vector<double> sample_times;       // defaulted per study
  double dt = 1e-3;                       // FLFM fixed-step size
  std::string flfm_time = "adaptive";     // adaptive | fixed
  double rel_tol = 1e-6;
  double abs_tol = 1e-10;
  std::string output_dir = "results";
};

// Parse and validate; unknown keys and malformed values raise ConfigError.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

// Fill kernel/study-dependent defaults and check the invariants
// (ascending n_list, nesting for self-convergence, positive tolerances...).
// parse_config_* call this; programmatic configs should call it too.
void resolve_config(ExperimentConfig& cfg);

// The fully resolved configuration as ordered key/value pairs, suitable for
// a ResultTable metadata block.
std::vector<std::pair<std::string, std::string>> config_entries(
    const ExperimentConfig& cfg);

}  // namespace coagkit
