#pragma once

#include <cstdint>
#include <span>

#include "biotfs/sparse.hpp"
#include "biotfs/system.hpp"

namespace biotfs {

/// S p = inv_M Mp p + B A^{-1} B^T p, applied without forming S.
Vector schur_apply(const BiotSystem& system, std::span<const double> p);

/// Reduced flow load of the pressure Schur system S p = g - B A^{-1} f.
Vector schur_rhs(const BiotSystem& system);

struct PowerIterationOptions {
  double tol = 1e-8;   ///< relative change of successive estimates
  int maxit = 50000;
  std::uint64_t seed = 42;
};

struct EigenEstimate {
  double value = 0.0;
  int steps = 0;
  bool converged = false;  ///< false: maxit reached, value is the best estimate
};

/// Deterministic start vector with entries in [-1, 1) drawn from mt19937_64.
Vector seeded_start_vector(std::size_t n, std::uint64_t seed);

/// Largest eigenvalue of the symmetric pencil (K, W) with W SPD, by the power
/// iteration x <- W^{-1} K x normalized in the W-norm. The estimate is the
/// Rayleigh quotient x^T K x / x^T W x; iteration stops once two successive
/// quotients differ by at most tol relative.
EigenEstimate pencil_power_max(const LinearOperator& apply_k, const LinearOperator& apply_w,
                               const LinearOperator& solve_w, std::size_t n,
                               const PowerIterationOptions& opts);

/// Smallest eigenvalue of the same pencil via the shifted pencil
/// (shift W - K, W): lambda_min = shift - lambda_max(shift W - K, W).
/// Convergence is judged on the returned lambda_min.
EigenEstimate pencil_power_min(const LinearOperator& apply_k, const LinearOperator& apply_w,
                               const LinearOperator& solve_w, std::size_t n, double shift,
                               const PowerIterationOptions& opts);

/// lambda_max of the pencil (S, Mp).
EigenEstimate power_iteration_max(const BiotSystem& system, const PowerIterationOptions& opts);
/// lambda_min of the pencil (S, Mp), given lambda_max.
EigenEstimate power_iteration_min(const BiotSystem& system, double lambda_max,
                                  const PowerIterationOptions& opts);

struct BulkModulusEstimate {
  double k_star = 0.0;
  int steps = 0;
  bool converged = false;
};

/// How ||div u|| is measured in the bulk-modulus inequality
///   2 mu ||eps(u)||^2 + lambda ||div u||^2 >= K*_dr ||div u||^2.
enum class DivergenceNorm {
  /// ||Pi_Q div u||, the divergence as seen by the pressure space:
  /// the form (B^T Mp^{-1} B) / alpha^2. Its K*_dr satisfies
  /// alpha^2 / K*_dr = lambda_max(S, Mp) - inv_M exactly.
  Discrete,
  /// Plain L2 norm, the assembled Ddiv. Gives a K*_dr no larger than the
  /// discrete one.
  L2,
};

/// Mathematical bulk modulus: 1/K*_dr is the largest eigenvalue of the pencil
/// (div-div form, A), found by power iteration in displacement space.
/// Throws DegenerateDiscretization if that eigenvalue is not positive.
BulkModulusEstimate estimate_k_star(const BiotSystem& system, const PowerIterationOptions& opts,
                                    DivergenceNorm norm = DivergenceNorm::Discrete);

/// beta = alpha^2 / (lambda_min - inv_M). Throws DegenerateDiscretization when
/// lambda_min does not exceed inv_M by more than rel_tol * lambda_min.
double estimate_beta(const MaterialParams& params, double lambda_min, double rel_tol = 1e-12);

/// max(|1 - omega lambda_min|, |1 - omega lambda_max|)
double contraction_factor(double omega, double lambda_min, double lambda_max);

struct SpectralEstimates {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  double k_star = 0.0;     ///< alpha^2 / (lambda_max - inv_M)
  double beta = 0.0;       ///< alpha^2 / (lambda_min - inv_M)
  double omega_opt = 0.0;  ///< 2 / (lambda_max + lambda_min)
  double l_opt = 0.0;      ///< 1 / omega_opt - inv_M
  double rho_opt = 0.0;    ///< (lambda_max - lambda_min) / (lambda_max + lambda_min)
  double d_opt = 0.0;      ///< alpha^2 / l_opt
  double k_dr = 0.0;       ///< physical drained bulk modulus, for reference
  int steps_max = 0;
  int steps_min = 0;
  bool converged = true;

  friend bool operator==(const SpectralEstimates&, const SpectralEstimates&) = default;
};

/// Fills every derived quantity from the two extreme eigenvalues. Throws
/// InvalidArgument unless 0 < lambda_min <= lambda_max.
SpectralEstimates optimal_parameters(double lambda_max, double lambda_min,
                                     const MaterialParams& params);

/// Full a priori procedure: power iterations for lambda_max and lambda_min,
/// then optimal_parameters.
SpectralEstimates estimate_spectrum(const BiotSystem& system, const PowerIterationOptions& opts);

}  // namespace biotfs
