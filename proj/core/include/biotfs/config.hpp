#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "biotfs/assembly.hpp"
#include "biotfs/errors.hpp"
#include "biotfs/solver.hpp"
#include "biotfs/spectral.hpp"
#include "biotfs/system.hpp"

namespace biotfs {

/// Config parse or validation failure; `line` is 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line = 0) : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

enum class SpectralMode { Fine, Coarse };

struct SpectralConfig {
  double tol = 1e-8;
  double coarse_tol = 1e-3;
  int maxit = 50000;
  std::uint64_t seed = 42;
  SpectralMode mode = SpectralMode::Fine;
  bool l2_bulk_modulus = false;  ///< also report K*_dr with the plain L2 divergence

  PowerIterationOptions options() const {
    return {mode == SpectralMode::Fine ? tol : coarse_tol, maxit, seed};
  }
};

/// Stabilization grid, linear in D = alpha^2 / L.
struct SweepSpec {
  double d_min = 0.6e11;
  double d_max = 1.6e11;
  int count = 31;

  std::vector<double> d_values() const;
};

/// Everything a CLI run needs. Defaults reproduce the reference coefficient
/// table: mu = 41.667e9, lambda = 27.778e9, alpha = 1, 1/M = 0, kappa = 0,
/// t in [0, 1] with tau = 0.1, eps_r = 1e-6, 1/h in {16, 32, 64, 128}.
struct ExperimentConfig {
  MaterialParams material;
  TimeGrid time;
  std::vector<std::size_t> meshes{16, 32, 64, 128};
  SolverConfig solver{.L = 0.0, .eps_r = 1e-6, .max_iter = 500, .inner_tol = 1e-12};
  InnerSolver inner_solver = InnerSolver::Direct;
  SweepSpec sweep;
  SpectralConfig spectral;
  bool sources = true;

  /// Throws ConfigError describing the first violated constraint.
  void validate() const;
  InnerSolveOptions inner_options() const {
    return {inner_solver, solver.inner_tol, 20000};
  }
};

/// Parses the sectioned key-value format:
///
///   # comment
///   [material]
///   mu = 41.667e9
///
/// Sections: material, time, mesh, solver, sweep, spectral, sources. Keys not
/// listed for a section are rejected. Missing keys keep their defaults.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form (every key, fixed order, round-trip precision).
/// parse_config(write_config(c)) reproduces c.
std::string write_config(const ExperimentConfig& config);

/// FNV-1a 64 of write_config(config), as 16 hex digits.
std::string config_hash(const ExperimentConfig& config);

}  // namespace biotfs
