#include "biotfs/experiment.hpp"

#include <algorithm>
#include <limits>

namespace biotfs {

const char* version() { return "0.1.0"; }

EstimateEntry estimate_for_mesh(const BiotSystem& system, std::size_t n,
                                const SpectralConfig& spectral) {
  const PowerIterationOptions opts = spectral.options();
  EstimateEntry entry;
  entry.n = n;
  entry.h = 1.0 / static_cast<double>(n);
  entry.mode = spectral.mode == SpectralMode::Fine ? "fine" : "coarse";
  entry.tol = opts.tol;
  entry.estimates = estimate_spectrum(system, opts);
  if (spectral.l2_bulk_modulus) {
    const BulkModulusEstimate l2 = estimate_k_star(system, opts, DivergenceNorm::L2);
    entry.k_star_l2 = l2.k_star;
    entry.k_star_l2_steps = l2.steps;
  }
  return entry;
}

EstimateReport run_estimate(const ExperimentConfig& config) {
  config.validate();
  EstimateReport report;
  report.version = version();
  report.config_hash = config_hash(config);
  report.material = config.material;
  for (const auto n : config.meshes) {
    const BiotProblem problem = make_problem(n, config.material, false, config.inner_options());
    report.entries.push_back(estimate_for_mesh(problem.system, n, config.spectral));
  }
  return report;
}

SolveReport run_solve(const ExperimentConfig& config, std::size_t n, std::optional<double> L) {
  config.validate();
  const BiotProblem problem = make_problem(n, config.material, config.sources, config.inner_options());

  SolveReport report;
  report.version = version();
  report.config_hash = config_hash(config);
  report.n = n;
  if (L) {
    report.L = *L;
  } else {
    report.estimates = estimate_spectrum(problem.system, config.spectral.options());
    report.L = report.estimates->l_opt;
    report.optimal = true;
  }
  const double a2 = config.material.alpha * config.material.alpha;
  report.D = report.L > 0.0 ? a2 / report.L : std::numeric_limits<double>::infinity();

  SolverConfig solver = config.solver;
  solver.L = report.L;
  const TimeMarchResult res = time_march(problem, solver, config.time);
  report.iterations = res.iterations;
  report.average = res.average;
  report.diverged = res.diverged;
  report.u_energy_norm = m_norm(problem.system.A(), res.final_state.u);
  report.p_mass_norm = m_norm(problem.system.Mp(), res.final_state.p);
  return report;
}

SweepReport run_sweep(const ExperimentConfig& config, const ProgressCallback& progress) {
  config.validate();
  SweepReport report;
  report.version = version();
  report.config_hash = config_hash(config);
  report.alpha = config.material.alpha;
  report.max_iter = config.solver.max_iter;

  std::vector<std::size_t> meshes = config.meshes;
  std::sort(meshes.begin(), meshes.end());
  meshes.erase(std::unique(meshes.begin(), meshes.end()), meshes.end());
  const std::vector<double> d_values = config.sweep.d_values();
  const double a2 = config.material.alpha * config.material.alpha;

  for (const auto n : meshes) {
    const BiotProblem problem = make_problem(n, config.material, config.sources, config.inner_options());
    report.estimates.push_back(estimate_for_mesh(problem.system, n, config.spectral));
    for (const double d : d_values) {
      SolverConfig solver = config.solver;
      solver.L = a2 / d;
      const TimeMarchResult res = time_march(problem, solver, config.time);
      SweepRow row{n, 1.0 / static_cast<double>(n), d, solver.L,
                   res.diverged ? static_cast<double>(config.solver.max_iter) : res.average,
                   res.diverged};
      if (progress) progress(row);
      report.rows.push_back(row);
    }
  }
  return report;
}

}  // namespace biotfs
