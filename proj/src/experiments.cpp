#include "coagkit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <thread>

#include "coagkit/analytic.hpp"
#include "coagkit/diagnostics.hpp"
#include "coagkit/errors.hpp"
#include "coagkit/fem.hpp"
#include "coagkit/flfm.hpp"
#include "coagkit/timestep.hpp"
#include "coagkit/version.hpp"

namespace coagkit {

namespace {

std::vector<Scheme> schemes_of(const ExperimentConfig& cfg) {
  if (cfg.scheme == "fem") return {Scheme::FEM};
  if (cfg.scheme == "flfm") return {Scheme::FLFM};
  return {Scheme::FEM, Scheme::FLFM};
}

const char* scheme_name(Scheme s) { return s == Scheme::FEM ? "fem" : "flfm"; }

KernelKind kernel_kind_of(const ExperimentConfig& cfg) {
  return cfg.kernel == "constant" ? KernelKind::Constant
                                  : KernelKind::Multiplicative;
}

Kernel kernel_of(const ExperimentConfig& cfg) {
  return kernel_from_name(cfg.kernel);
}

QuadratureSpec quad_of(const ExperimentConfig& cfg) {
  return QuadratureSpec{cfg.rel_tol, cfg.abs_tol, 10000};
}

void attach_metadata(ResultTable& table, const std::string& name,
                     const ExperimentConfig& cfg,
                     const std::vector<std::string>& failures) {
  table.add_metadata("table", name);
  table.add_metadata("artifact_version", kVersion);
  for (const auto& [key, value] : config_entries(cfg)) {
    table.add_metadata(key, value);
  }
  for (const auto& f : failures) table.add_metadata("failed_case", f);
}

void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body) {
  const int workers = std::max(
      1, std::min<int>(threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t i = next.fetch_add(1); i < count;
           i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

// One (scheme, grid) evolution: initialize from the analytic element
// averages at t0 and sample the trajectory. FEM always integrates
// adaptively; FLFM follows cfg.flfm_time.
struct CaseResult {
  std::vector<std::vector<double>> states;  // one per sample time
  bool failed = false;
  std::string error;
};

CaseResult solve_case(Scheme scheme, const ExperimentConfig& cfg,
                      std::shared_ptr<const Grid> grid,
                      std::vector<double> init,
                      const std::vector<double>& samples) {
  CaseResult result;
  const Kernel kernel = kernel_of(cfg);
  try {
    if (scheme == Scheme::FEM) {
      IntegratorSpec ispec;
      ispec.rel_tol = cfg.rel_tol;
      ispec.abs_tol = cfg.abs_tol;
      ispec.sample_times = samples;
      RhsFunction rhs = [&grid, &kernel](double, const std::vector<double>& y,
                                         std::vector<double>& dydt) {
        SizeDistribution s{grid, y};
        dydt = fem_rhs(s, kernel);
      };
      result.states =
          integrate_adaptive(rhs, init, cfg.t0, cfg.t_end, ispec).states;
    } else if (cfg.flfm_time == "adaptive") {
      IntegratorSpec ispec;
      ispec.rel_tol = cfg.rel_tol;
      ispec.abs_tol = cfg.abs_tol;
      ispec.sample_times = samples;
      RhsFunction rhs = [&grid, &kernel](double, const std::vector<double>& y,
                                         std::vector<double>& dydt) {
        VolumeDistribution s{grid, y};
        dydt = flfm_rhs(s, kernel, FluxAlgorithm::SuffixSum);
      };
      result.states =
          integrate_adaptive(rhs, init, cfg.t0, cfg.t_end, ispec).states;
    } else {
      StepMap step = [&grid, &kernel](const std::vector<double>& y, double,
                                      double h) {
        VolumeDistribution s{grid, y};
        return flfm_step(s, kernel, h, FluxAlgorithm::SuffixSum).values;
      };
      result.states =
          integrate_fixed(step, init, cfg.t0, cfg.t_end, cfg.dt, samples)
              .states;
    }
  } catch (const Error& err) {
    result.failed = true;
    result.error = err.what();
  }
  return result;
}

std::vector<double> initial_values(Scheme scheme, const AnalyticSolution& sol,
                                   const Grid& grid, double t,
                                   const QuadratureSpec& quad) {
  return scheme == Scheme::FEM ? sol.element_averages_f(grid, t, quad)
                               : sol.element_averages_g(grid, t, quad);
}

std::string case_label(Scheme scheme, std::size_t n) {
  return std::string(scheme_name(scheme)) + ":n=" + std::to_string(n);
}

}  // namespace

std::vector<NamedTable> run_validation(const ExperimentConfig& cfg,
                                       int threads) {
  const std::vector<Scheme> schemes = schemes_of(cfg);
  const AnalyticSolution sol(kernel_kind_of(cfg));
  const QuadratureSpec quad = quad_of(cfg);
  const double x_max = cfg.x_max_list.front();

  struct Case {
    Scheme scheme;
    std::size_t n;
    std::shared_ptr<const Grid> grid;
    CaseResult result;
    ErrorSeries errors;
  };
  std::vector<Case> cases;
  for (Scheme s : schemes) {
    for (std::size_t n : cfg.n_list) {
      cases.push_back(
          {s, n, std::make_shared<Grid>(cfg.x_min, x_max, n), {}, {}});
    }
  }

  parallel_for(cases.size(), threads, [&](std::size_t i) {
    Case& c = cases[i];
    try {
      auto init = initial_values(c.scheme, sol, *c.grid, cfg.t0, quad);
      c.result = solve_case(c.scheme, cfg, c.grid, std::move(init),
                            cfg.sample_times);
      if (c.result.failed) return;
      c.errors.times = cfg.sample_times;
      c.errors.values.resize(cfg.sample_times.size());
      for (std::size_t k = 0; k < cfg.sample_times.size(); ++k) {
        const double t = cfg.sample_times[k];
        const std::vector<double> ref =
            c.scheme == Scheme::FEM
                ? sol.element_averages_f(*c.grid, t, quad)
                : sol.element_averages_g(*c.grid, t, quad);
        c.errors.values[k] =
            grid_error_norm(c.result.states[k], ref, c.grid->dx());
      }
    } catch (const Error& err) {
      c.result.failed = true;
      c.result.error = err.what();
    }
  });

  std::vector<std::string> failures;
  ResultTable table({"scheme", "kernel", "n", "dx", "t", "error_l1"});
  for (const Case& c : cases) {
    if (c.result.failed) {
      failures.push_back(case_label(c.scheme, c.n) + ": " + c.result.error);
      continue;
    }
    for (std::size_t k = 0; k < c.errors.times.size(); ++k) {
      table.add_row({scheme_name(c.scheme), cfg.kernel, std::to_string(c.n),
                     ResultTable::format_double(c.grid->dx()),
                     ResultTable::format_double(c.errors.times[k]),
                     ResultTable::format_double(c.errors.values[k])});
    }
  }

  ResultTable fit({"scheme", "kernel", "order"});
  for (Scheme s : schemes) {
    std::vector<std::pair<double, double>> pairs;
    for (const Case& c : cases) {
      if (c.scheme == s && !c.result.failed && !c.errors.values.empty()) {
        pairs.emplace_back(c.grid->dx(), c.errors.values.back());
      }
    }
    if (pairs.size() >= 2) {
      fit.add_row({scheme_name(s), cfg.kernel,
                   ResultTable::format_double(estimate_order(pairs))});
    }
  }

  attach_metadata(table, "validate", cfg, failures);
  attach_metadata(fit, "validate_fit", cfg, failures);
  std::vector<NamedTable> out;
  out.push_back({"validate", std::move(table)});
  out.push_back({"validate_fit", std::move(fit)});
  return out;
}

std::vector<NamedTable> run_self_convergence(const ExperimentConfig& cfg,
                                             int threads) {
  const std::vector<Scheme> schemes = schemes_of(cfg);
  const AnalyticSolution sol(kernel_kind_of(cfg));
  const QuadratureSpec quad = quad_of(cfg);
  const double x_max = cfg.x_max_list.front();
  const std::vector<double> samples{cfg.t_end};

  struct Case {
    Scheme scheme;
    std::size_t n;
    std::shared_ptr<const Grid> grid;
    CaseResult result;
  };
  std::vector<Case> cases;
  for (Scheme s : schemes) {
    for (std::size_t n : cfg.n_list) {
      cases.push_back({s, n, std::make_shared<Grid>(cfg.x_min, x_max, n), {}});
    }
  }

  parallel_for(cases.size(), threads, [&](std::size_t i) {
    Case& c = cases[i];
    try {
      auto init = initial_values(c.scheme, sol, *c.grid, cfg.t0, quad);
      c.result = solve_case(c.scheme, cfg, c.grid, std::move(init), samples);
    } catch (const Error& err) {
      c.result.failed = true;
      c.result.error = err.what();
    }
  });

  std::vector<std::string> failures;
  ResultTable table(
      {"scheme", "kernel", "n", "dx", "error_l1_star", "doubling_order"});
  for (Scheme s : schemes) {
    const Case* fine = nullptr;
    for (const Case& c : cases) {
      if (c.scheme == s && c.n == cfg.n_list.back()) fine = &c;
    }
    if (fine == nullptr || fine->result.failed) {
      failures.push_back(case_label(s, cfg.n_list.back()) + ": fine grid " +
                         (fine ? fine->result.error : "missing"));
      continue;
    }
    double prev_err = 0.0;
    double prev_dx = 0.0;
    for (const Case& c : cases) {
      if (c.scheme != s || c.n == cfg.n_list.back()) continue;
      if (c.result.failed) {
        failures.push_back(case_label(s, c.n) + ": " + c.result.error);
        continue;
      }
      const std::vector<double> restricted = restrict_to_coarse(
          fine->result.states[0], *fine->grid, *c.grid);
      const double err =
          grid_error_norm(c.result.states[0], restricted, c.grid->dx());
      std::string order_cell;
      if (prev_err > 0.0 && err > 0.0) {
        const double order =
            std::log(prev_err / err) / std::log(prev_dx / c.grid->dx());
        order_cell = ResultTable::format_double(order);
      }
      table.add_row({scheme_name(s), cfg.kernel, std::to_string(c.n),
                     ResultTable::format_double(c.grid->dx()),
                     ResultTable::format_double(err), order_cell});
      prev_err = err;
      prev_dx = c.grid->dx();
    }
  }

  attach_metadata(table, "self_converge", cfg, failures);
  std::vector<NamedTable> out;
  out.push_back({"self_converge", std::move(table)});
  return out;
}

std::vector<NamedTable> run_moment_study(const ExperimentConfig& cfg,
                                         int threads) {
  const std::vector<Scheme> schemes = schemes_of(cfg);
  const AnalyticSolution sol(kernel_kind_of(cfg));
  const QuadratureSpec quad = quad_of(cfg);
  const double x_max = cfg.x_max_list.front();
  auto f0 = [&sol](double x) { return sol.eval_f(0.0, x); };

  struct Case {
    Scheme scheme;
    std::size_t n;
    std::shared_ptr<const Grid> grid;
    CaseResult result;
    MomentSeries moments;
  };
  std::vector<Case> cases;
  for (Scheme s : schemes) {
    for (std::size_t n : cfg.n_list) {
      cases.push_back(
          {s, n, std::make_shared<Grid>(cfg.x_min, x_max, n), {}, {}});
    }
  }

  parallel_for(cases.size(), threads, [&](std::size_t i) {
    Case& c = cases[i];
    try {
      // moment runs start from the projected initial conditions at t = 0
      std::vector<double> init =
          c.scheme == Scheme::FEM
              ? project_initial(f0, c.grid, quad).values
              : init_volume_distribution(f0, c.grid, quad).values;
      c.result = solve_case(c.scheme, cfg, c.grid, std::move(init),
                            cfg.sample_times);
      if (c.result.failed) return;
      c.moments.times = cfg.sample_times;
      c.moments.m0.resize(c.result.states.size());
      c.moments.m1.resize(c.result.states.size());
      for (std::size_t k = 0; k < c.result.states.size(); ++k) {
        c.moments.m0[k] =
            partial_moment(0, c.scheme, c.result.states[k], *c.grid);
        c.moments.m1[k] =
            partial_moment(1, c.scheme, c.result.states[k], *c.grid);
      }
    } catch (const Error& err) {
      c.result.failed = true;
      c.result.error = err.what();
    }
  });

  std::vector<std::string> failures;
  ResultTable series({"scheme", "kernel", "n", "t", "m0", "m1"});
  for (const Case& c : cases) {
    if (c.result.failed) {
      failures.push_back(case_label(c.scheme, c.n) + ": " + c.result.error);
      continue;
    }
    for (std::size_t k = 0; k < c.moments.times.size(); ++k) {
      series.add_row({scheme_name(c.scheme), cfg.kernel, std::to_string(c.n),
                      ResultTable::format_double(c.moments.times[k]),
                      ResultTable::format_double(c.moments.m0[k]),
                      ResultTable::format_double(c.moments.m1[k])});
    }
  }

  // t = 0 comparison against quadrature of the analytic initial data
  const double m0_ref = adaptive_integrate(f0, cfg.x_min, x_max, quad);
  const double m1_ref = adaptive_integrate(
      [&f0](double x) { return x * f0(x); }, cfg.x_min, x_max, quad);
  ResultTable t0_table(
      {"scheme", "kernel", "n", "m0", "m0_ref", "m1", "m1_ref"});
  for (const Case& c : cases) {
    if (c.result.failed) continue;
    t0_table.add_row({scheme_name(c.scheme), cfg.kernel, std::to_string(c.n),
                      ResultTable::format_double(c.moments.m0.front()),
                      ResultTable::format_double(m0_ref),
                      ResultTable::format_double(c.moments.m1.front()),
                      ResultTable::format_double(m1_ref)});
  }

  // differences against the finest grid at t_end, with per-doubling orders
  ResultTable diffs(
      {"scheme", "kernel", "moment", "n", "dx", "diff", "doubling_order"});
  for (Scheme s : schemes) {
    const Case* fine = nullptr;
    for (const Case& c : cases) {
      if (c.scheme == s && c.n == cfg.n_list.back()) fine = &c;
    }
    if (fine == nullptr || fine->result.failed) continue;
    for (int moment = 0; moment <= 1; ++moment) {
      double prev_diff = 0.0, prev_dx = 0.0;
      for (const Case& c : cases) {
        if (c.scheme != s || c.n == cfg.n_list.back() || c.result.failed) {
          continue;
        }
        const double c_val =
            moment == 0 ? c.moments.m0.back() : c.moments.m1.back();
        const double f_val =
            moment == 0 ? fine->moments.m0.back() : fine->moments.m1.back();
        const double diff = std::abs(c_val - f_val);
        std::string order_cell;
        if (prev_diff > 0.0 && diff > 0.0) {
          order_cell = ResultTable::format_double(
              std::log(prev_diff / diff) / std::log(prev_dx / c.grid->dx()));
        }
        diffs.add_row({scheme_name(s), cfg.kernel, std::to_string(moment),
                       std::to_string(c.n),
                       ResultTable::format_double(c.grid->dx()),
                       ResultTable::format_double(diff), order_cell});
        prev_diff = diff;
        prev_dx = c.grid->dx();
      }
    }
  }

  attach_metadata(series, "moments", cfg, failures);
  attach_metadata(t0_table, "moments_t0", cfg, failures);
  attach_metadata(diffs, "moment_diffs", cfg, failures);
  std::vector<NamedTable> out;
  out.push_back({"moments", std::move(series)});
  out.push_back({"moments_t0", std::move(t0_table)});
  out.push_back({"moment_diffs", std::move(diffs)});
  return out;
}

std::vector<NamedTable> run_cost_study(const ExperimentConfig& cfg,
                                       int threads) {
  const std::vector<Scheme> schemes = schemes_of(cfg);
  const AnalyticSolution sol(kernel_kind_of(cfg));
  const QuadratureSpec quad = quad_of(cfg);
  const Kernel kernel = kernel_of(cfg);
  const double x_max = cfg.x_max_list.front();
  auto f0 = [&sol](double x) { return sol.eval_f(0.0, x); };

  struct Case {
    Scheme scheme;
    std::size_t n;
    OpCount count;
    bool failed = false;
    std::string error;
  };
  std::vector<Case> cases;
  for (Scheme s : schemes) {
    for (std::size_t n : cfg.n_list) cases.push_back({s, n, {}, false, {}});
  }

  parallel_for(cases.size(), threads, [&](std::size_t i) {
    Case& c = cases[i];
    try {
      auto grid = std::make_shared<Grid>(cfg.x_min, x_max, c.n);
      std::vector<double> init =
          c.scheme == Scheme::FEM
              ? project_initial(f0, grid, quad).values
              : init_volume_distribution(f0, grid, quad).values;
      counted_rhs(c.scheme, init, grid, kernel, c.count);
    } catch (const Error& err) {
      c.failed = true;
      c.error = err.what();
    }
  });

  std::vector<std::string> failures;
  ResultTable table(
      {"scheme", "kernel", "n", "adds", "muls", "divs", "special", "total"});
  ResultTable ratios({"scheme", "kernel", "n_coarse", "n_fine", "ratio"});
  for (Scheme s : schemes) {
    const Case* prev = nullptr;
    for (const Case& c : cases) {
      if (c.scheme != s) continue;
      if (c.failed) {
        failures.push_back(case_label(c.scheme, c.n) + ": " + c.error);
        continue;
      }
      table.add_row({scheme_name(c.scheme), cfg.kernel, std::to_string(c.n),
                     ResultTable::format_size(c.count.adds),
                     ResultTable::format_size(c.count.muls),
                     ResultTable::format_size(c.count.divs),
                     ResultTable::format_size(c.count.special),
                     ResultTable::format_size(c.count.total())});
      if (prev != nullptr) {
        const double ratio = static_cast<double>(c.count.total()) /
                             static_cast<double>(prev->count.total());
        ratios.add_row({scheme_name(s), cfg.kernel, std::to_string(prev->n),
                        std::to_string(c.n),
                        ResultTable::format_double(ratio)});
      }
      prev = &c;
    }
  }

  attach_metadata(table, "cost", cfg, failures);
  attach_metadata(ratios, "cost_ratios", cfg, failures);
  std::vector<NamedTable> out;
  out.push_back({"cost", std::move(table)});
  out.push_back({"cost_ratios", std::move(ratios)});
  return out;
}

std::vector<NamedTable> run_xmax_sweep(const ExperimentConfig& cfg,
                                       int threads) {
  const std::vector<Scheme> schemes = schemes_of(cfg);
  const AnalyticSolution sol(kernel_kind_of(cfg));
  const QuadratureSpec quad = quad_of(cfg);
  const std::vector<double> samples{cfg.t_end};

  struct Case {
    Scheme scheme;
    double x_max;
    std::size_t n;
    double dx_target;
    std::shared_ptr<const Grid> grid;
    CaseResult result;
    double error = 0.0;
  };
  std::vector<Case> cases;
  for (Scheme s : schemes) {
    for (double x_max : cfg.x_max_list) {
      if (cfg.dx_list.empty()) {
        for (std::size_t n : cfg.n_list) {
          auto grid = std::make_shared<Grid>(cfg.x_min, x_max, n);
          cases.push_back({s, x_max, n, grid->dx(), grid, {}, 0.0});
        }
      } else {
        // resolve n from the target spacings so curves for different x_max
        // can be compared at (almost) equal dx
        for (double dx : cfg.dx_list) {
          const std::size_t n = std::max<std::size_t>(
              3, static_cast<std::size_t>(
                     std::llround((x_max - cfg.x_min) / dx)) +
                     1);
          cases.push_back({s, x_max, n, dx,
                           std::make_shared<Grid>(cfg.x_min, x_max, n), {},
                           0.0});
        }
      }
    }
  }

  parallel_for(cases.size(), threads, [&](std::size_t i) {
    Case& c = cases[i];
    try {
      auto init = initial_values(c.scheme, sol, *c.grid, cfg.t0, quad);
      c.result = solve_case(c.scheme, cfg, c.grid, std::move(init), samples);
      if (c.result.failed) return;
      const std::vector<double> ref =
          c.scheme == Scheme::FEM
              ? sol.element_averages_f(*c.grid, cfg.t_end, quad)
              : sol.element_averages_g(*c.grid, cfg.t_end, quad);
      c.error = grid_error_norm(c.result.states[0], ref, c.grid->dx());
    } catch (const Error& err) {
      c.result.failed = true;
      c.result.error = err.what();
    }
  });

  std::vector<std::string> failures;
  ResultTable table({"scheme", "kernel", "x_max", "n", "dx", "dx_target",
                     "error_l1"});
  for (const Case& c : cases) {
    if (c.result.failed) {
      failures.push_back(case_label(c.scheme, c.n) +
                         ":x_max=" + ResultTable::format_double(c.x_max) +
                         ": " + c.result.error);
      continue;
    }
    table.add_row({scheme_name(c.scheme), cfg.kernel,
                   ResultTable::format_double(c.x_max), std::to_string(c.n),
                   ResultTable::format_double(c.grid->dx()),
                   ResultTable::format_double(c.dx_target),
                   ResultTable::format_double(c.error)});
  }

  attach_metadata(table, "xmax_sweep", cfg, failures);
  std::vector<NamedTable> out;
  out.push_back({"xmax_sweep", std::move(table)});
  return out;
}

std::vector<NamedTable> run_study(const ExperimentConfig& cfg, int threads) {
  switch (cfg.study) {
    case Study::Validate: return run_validation(cfg, threads);
    case Study::SelfConverge: return run_self_convergence(cfg, threads);
    case Study::Moments: return run_moment_study(cfg, threads);
    case Study::Cost: return run_cost_study(cfg, threads);
    case Study::XmaxSweep: return run_xmax_sweep(cfg, threads);
  }
  throw ConfigError("unhandled study");
}

std::vector<std::string> write_tables(const std::vector<NamedTable>& tables,
                                      const std::string& output_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(output_dir);
  std::vector<std::string> paths;
  for (const NamedTable& nt : tables) {
    const fs::path path = fs::path(output_dir) / (nt.name + ".csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    nt.table.write_csv(out);
    paths.push_back(path.string());
  }
  return paths;
}

}  // namespace coagkit
