#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biotfs/config.hpp"
#include "biotfs/solver.hpp"
#include "biotfs/spectral.hpp"

namespace biotfs {

/// Library version string embedded in every report.
const char* version();

struct EstimateEntry {
  std::size_t n = 0;
  double h = 0.0;
  std::string mode;       ///< "fine" or "coarse"
  double tol = 0.0;
  SpectralEstimates estimates;
  /// K*_dr measured with the plain L2 divergence; only with
  /// SpectralConfig::l2_bulk_modulus, which is slow on fine meshes.
  std::optional<double> k_star_l2;
  std::optional<int> k_star_l2_steps;

  friend bool operator==(const EstimateEntry&, const EstimateEntry&) = default;
};

struct EstimateReport {
  std::string version;
  std::string config_hash;
  MaterialParams material;
  std::vector<EstimateEntry> entries;

  friend bool operator==(const EstimateReport& a, const EstimateReport& b) {
    return a.version == b.version && a.config_hash == b.config_hash &&
           a.material.mu == b.material.mu && a.material.lambda == b.material.lambda &&
           a.material.alpha == b.material.alpha && a.material.inv_M == b.material.inv_M &&
           a.entries == b.entries;
  }
};

EstimateEntry estimate_for_mesh(const BiotSystem& system, std::size_t n, const SpectralConfig& spectral);

/// Spectral estimates for every mesh of the config.
EstimateReport run_estimate(const ExperimentConfig& config);

struct SolveReport {
  std::string version;
  std::string config_hash;
  std::size_t n = 0;
  double L = 0.0;
  double D = 0.0;
  bool optimal = false;  ///< L came from the spectral estimate
  std::optional<SpectralEstimates> estimates;
  std::vector<int> iterations;
  double average = 0.0;  ///< +inf when diverged
  bool diverged = false;
  double u_energy_norm = 0.0;
  double p_mass_norm = 0.0;
};

/// Time-marches one mesh. `L` empty means use L_opt from the spectral estimate.
SolveReport run_solve(const ExperimentConfig& config, std::size_t n, std::optional<double> L);

struct SweepRow {
  std::size_t n = 0;
  double h = 0.0;
  double D = 0.0;
  double L = 0.0;
  double avg_iterations = 0.0;  ///< max_iter for diverged rows
  bool diverged = false;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepReport {
  std::string version;
  std::string config_hash;
  double alpha = 1.0;
  int max_iter = 0;
  std::vector<SweepRow> rows;              ///< sorted by (n, D)
  std::vector<EstimateEntry> estimates;    ///< one per mesh, D_opt for plotting

  friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

using ProgressCallback = std::function<void(const SweepRow&)>;

/// For every mesh: spectral estimate, then a full time march per D on the grid.
/// Non-converging rows are recorded and the sweep continues.
SweepReport run_sweep(const ExperimentConfig& config, const ProgressCallback& progress = {});

}  // namespace biotfs
