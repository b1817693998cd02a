#pragma once

#include <string>
#include <vector>

#include "coagkit/config.hpp"
#include "coagkit/result_table.hpp"

namespace coagkit {

struct NamedTable {
  std::string name;  // file stem; written as <output_dir>/<name>.csv
  ResultTable table;
};

// Study runners. Independent (scheme, N, x_max) cases run on up to `threads`
// workers; each case is internally sequential and rows are emitted in config
// order, so the output bytes do not depend on the thread count. Per-case
// integrator or quadrature failures are recorded in the table metadata and
// the run continues.
std::vector<NamedTable> run_validation(const ExperimentConfig& cfg,
                                       int threads = 1);
std::vector<NamedTable> run_self_convergence(const ExperimentConfig& cfg,
                                             int threads = 1);
std::vector<NamedTable> run_moment_study(const ExperimentConfig& cfg,
                                         int threads = 1);
std::vector<NamedTable> run_cost_study(const ExperimentConfig& cfg,
                                       int threads = 1);
std::vector<NamedTable> run_xmax_sweep(const ExperimentConfig& cfg,
                                       int threads = 1);

// Dispatch on cfg.study.
std::vector<NamedTable> run_study(const ExperimentConfig& cfg,
                                  int threads = 1);

// Write each table to <output_dir>/<name>.csv; returns the file paths.
std::vector<std::string> write_tables(const std::vector<NamedTable>& tables,
                                      const std::string& output_dir);

}  // namespace coagkit
