#pragma once

#include <span>
#include <vector>

#include "biotfs/sparse.hpp"
#include "biotfs/system.hpp"

namespace biotfs {

struct SolverConfig {
  double L = 0.0;           ///< stabilization parameter (1/Pa)
  double eps_r = 1e-6;      ///< relative increment tolerance
  int max_iter = 1000;      ///< cap per time step
  double inner_tol = 1e-12; ///< tolerance of iterative inner solves
  bool keep_iterates = false;

  /// Throws InvalidArgument unless L >= 0, L + inv_M > 0, eps_r > 0, max_iter >= 1.
  void validate(const MaterialParams& params) const;
};

struct TimeGrid {
  double t0 = 0.0;
  double tau = 0.1;
  double T = 1.0;

  /// Number of implicit Euler steps; throws InvalidArgument unless tau > 0 and
  /// (T - t0) / tau is a positive integer up to rounding.
  int steps() const;
  double time(int step) const { return t0 + step * tau; }
};

struct IterationRecord {
  double du_norm = 0.0;  ///< ||u^i - u^{i-1}||_A
  double dp_norm = 0.0;  ///< ||p^i - p^{i-1}||_M
  double u_norm = 0.0;   ///< ||u^i||_A
  double p_norm = 0.0;   ///< ||p^i||_M
};

struct IterationTrace {
  std::vector<IterationRecord> records;
  /// Filled only with SolverConfig::keep_iterates.
  std::vector<Vector> displacement_iterates;
  std::vector<Vector> pressure_iterates;
  bool converged = false;
  int iterations = 0;
};

struct BlockState {
  Vector u;
  Vector p;
};

/// One fixed-stress iteration: a flow solve with the stabilized block
/// (L + inv_M) Mp followed by a mechanics solve,
///
///   p+ = p + [(L + inv_M) Mp]^{-1} (g - B u - inv_M Mp p)
///   u+ = A^{-1} (f + B^T p+).
BlockState fixed_stress_step(const BiotSystem& system, std::span<const double> u,
                             std::span<const double> p, double L);

struct FixedStressResult {
  BlockState state;
  IterationTrace trace;
};

/// Iterates fixed_stress_step until ||du||_A <= eps_r ||u||_A and
/// ||dp||_M <= eps_r ||p||_M. Hitting max_iter, or a non-finite or exploding
/// increment, leaves trace.converged false; the last iterate is returned.
FixedStressResult fixed_stress_solve(const BiotSystem& system, const SolverConfig& config,
                                     std::span<const double> u_init,
                                     std::span<const double> p_init);

/// Modified Richardson step on the pressure Schur system:
///   p+ = p + omega Mp^{-1} (g~ - S p),  g~ = g - B A^{-1} f.
/// Pass `g_tilde` to avoid recomputing it on every call.
Vector richardson_step(const BiotSystem& system, std::span<const double> p, double omega,
                       std::span<const double> g_tilde = {});

/// Direct solution of the block system by CG on the pressure Schur complement
/// followed by back-substitution for u.
BlockState monolithic_solve(const BiotSystem& system, double schur_tol = 1e-13);

/// Relative residual of the block system at `state`.
double block_residual(const BiotSystem& system, const BlockState& state);

struct TimeMarchResult {
  std::vector<int> iterations;  ///< per step; max_iter for a failed step
  std::vector<bool> converged;
  double average = 0.0;         ///< +inf when any step failed
  bool diverged = false;
  BlockState final_state;       ///< reduced vectors
};

/// Implicit Euler in time; each step rebuilds f(t_n) and g from the previous
/// step and runs fixed_stress_solve warm-started from the previous solution.
/// Marching stops at the first step that fails to converge.
TimeMarchResult time_march(const BiotProblem& problem, const SolverConfig& config,
                           const TimeGrid& grid);

}  // namespace biotfs
