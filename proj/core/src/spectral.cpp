#include "biotfs/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "biotfs/errors.hpp"

namespace biotfs {

Vector schur_apply(const BiotSystem& system, std::span<const double> p) {
  if (p.size() != system.num_pressure()) throw DimensionMismatch("schur_apply: length mismatch");
  const Vector btp = matvec_transpose(system.B(), p);
  const Vector u = system.solve_elasticity(btp);
  Vector sp = matvec(system.B(), u);
  const double inv_m = system.params().inv_M;
  if (inv_m != 0.0) axpy(inv_m, matvec(system.Mp(), p), sp);
  return sp;
}

Vector schur_rhs(const BiotSystem& system) {
  Vector rhs = system.g;
  axpy(-1.0, matvec(system.B(), system.solve_elasticity(system.f)), rhs);
  return rhs;
}

Vector seeded_start_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Vector x(n);
  // 53 random bits mapped to [-1, 1); portable across standard libraries
  for (auto& v : x) v = 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
  return x;
}

namespace {

// Power iteration on the pencil (K, W). `report` maps the raw Rayleigh quotient
// to the quantity whose relative change decides convergence.
template <class Report>
EigenEstimate power_iteration(const LinearOperator& apply_k, const LinearOperator& apply_w,
                              const LinearOperator& solve_w, std::size_t n,
                              const PowerIterationOptions& opts, Report report) {
  if (!(opts.tol > 0.0)) throw InvalidArgument("power iteration: tol must be positive");
  if (opts.maxit < 1) throw InvalidArgument("power iteration: maxit must be at least 1");
  if (n == 0) throw InvalidArgument("power iteration: empty space");

  Vector x = seeded_start_vector(n, opts.seed);
  auto normalize = [&](Vector& v) {
    const double wn = std::sqrt(dot(v, apply_w(v)));
    if (!(wn > 0.0) || !std::isfinite(wn)) {
      throw DegenerateDiscretization("power iteration: iterate vanished (operator is zero on the start space)");
    }
    for (auto& e : v) e /= wn;
  };
  normalize(x);
  Vector kx = apply_k(x);
  double current = report(dot(x, kx));

  EigenEstimate est;
  est.value = current;
  for (int step = 1; step <= opts.maxit; ++step) {
    x = solve_w(kx);
    const double xn = norm2(x);
    if (xn == 0.0) {
      // K x = 0 for every reachable x: the pencil is zero there
      est.steps = step;
      est.converged = true;
      return est;
    }
    normalize(x);
    kx = apply_k(x);
    const double next = report(dot(x, kx));
    est.value = next;
    est.steps = step;
    if (std::abs(next - current) <= opts.tol * std::abs(next)) {
      est.converged = true;
      return est;
    }
    current = next;
  }
  return est;
}

}  // namespace

EigenEstimate pencil_power_max(const LinearOperator& apply_k, const LinearOperator& apply_w,
                               const LinearOperator& solve_w, std::size_t n,
                               const PowerIterationOptions& opts) {
  return power_iteration(apply_k, apply_w, solve_w, n, opts, [](double rq) { return rq; });
}

EigenEstimate pencil_power_min(const LinearOperator& apply_k, const LinearOperator& apply_w,
                               const LinearOperator& solve_w, std::size_t n, double shift,
                               const PowerIterationOptions& opts) {
  const LinearOperator shifted = [&](std::span<const double> x) {
    Vector y = apply_w(x);
    for (auto& v : y) v *= shift;
    axpy(-1.0, apply_k(x), y);
    return y;
  };
  return power_iteration(shifted, apply_w, solve_w, n, opts,
                         [shift](double rq) { return shift - rq; });
}

namespace {

struct PencilOps {
  LinearOperator apply_s, apply_m, solve_m;
};

PencilOps schur_pencil(const BiotSystem& system) {
  return {[&system](std::span<const double> x) { return schur_apply(system, x); },
          [&system](std::span<const double> x) { return matvec(system.Mp(), x); },
          [&system](std::span<const double> x) { return system.solve_mass(x); }};
}

}  // namespace

EigenEstimate power_iteration_max(const BiotSystem& system, const PowerIterationOptions& opts) {
  const PencilOps ops = schur_pencil(system);
  return pencil_power_max(ops.apply_s, ops.apply_m, ops.solve_m, system.num_pressure(), opts);
}

EigenEstimate power_iteration_min(const BiotSystem& system, double lambda_max,
                                  const PowerIterationOptions& opts) {
  if (!(lambda_max > 0.0)) throw InvalidArgument("power_iteration_min: lambda_max must be positive");
  const PencilOps ops = schur_pencil(system);
  PowerIterationOptions shifted = opts;
  // decorrelate from the lambda_max start vector
  shifted.seed = opts.seed ^ 0x9E3779B97F4A7C15ULL;
  return pencil_power_min(ops.apply_s, ops.apply_m, ops.solve_m, system.num_pressure(),
                          lambda_max, shifted);
}

BulkModulusEstimate estimate_k_star(const BiotSystem& system, const PowerIterationOptions& opts,
                                    DivergenceNorm norm) {
  const double a2 = system.params().alpha * system.params().alpha;
  LinearOperator apply_d;
  if (norm == DivergenceNorm::L2) {
    apply_d = [&system](std::span<const double> x) { return matvec(system.Ddiv(), x); };
  } else {
    apply_d = [&system, a2](std::span<const double> x) {
      Vector y = matvec_transpose(system.B(), system.solve_mass(matvec(system.B(), x)));
      for (auto& v : y) v /= a2;
      return y;
    };
  }
  const LinearOperator apply_a = [&system](std::span<const double> x) {
    return matvec(system.A(), x);
  };
  const LinearOperator solve_a = [&system](std::span<const double> x) {
    return system.solve_elasticity(x);
  };
  const EigenEstimate inv = pencil_power_max(apply_d, apply_a, solve_a, system.num_displacement(), opts);
  if (!(inv.value > 0.0)) {
    throw DegenerateDiscretization("estimate_k_star: div-div form vanishes on the displacement space");
  }
  return {1.0 / inv.value, inv.steps, inv.converged};
}

double estimate_beta(const MaterialParams& params, double lambda_min, double rel_tol) {
  const double gap = lambda_min - params.inv_M;
  if (!(gap > rel_tol * std::abs(lambda_min))) {
    throw DegenerateDiscretization(
        "estimate_beta: lambda_min does not exceed 1/M, the pair is not inf-sup stable");
  }
  return params.alpha * params.alpha / gap;
}

double contraction_factor(double omega, double lambda_min, double lambda_max) {
  return std::max(std::abs(1.0 - omega * lambda_min), std::abs(1.0 - omega * lambda_max));
}

SpectralEstimates optimal_parameters(double lambda_max, double lambda_min,
                                     const MaterialParams& params) {
  if (!(lambda_min > 0.0) || !(lambda_min <= lambda_max) || !std::isfinite(lambda_max)) {
    throw InvalidArgument("optimal_parameters: need 0 < lambda_min <= lambda_max, got lambda_min = " +
                          std::to_string(lambda_min) + ", lambda_max = " + std::to_string(lambda_max));
  }
  const double a2 = params.alpha * params.alpha;
  SpectralEstimates s;
  s.lambda_max = lambda_max;
  s.lambda_min = lambda_min;
  s.k_star = a2 / (lambda_max - params.inv_M);
  s.beta = estimate_beta(params, lambda_min);
  s.omega_opt = 2.0 / (lambda_max + lambda_min);
  s.l_opt = 1.0 / s.omega_opt - params.inv_M;
  s.rho_opt = (lambda_max - lambda_min) / (lambda_max + lambda_min);
  s.d_opt = s.l_opt > 0.0 ? a2 / s.l_opt : std::numeric_limits<double>::infinity();
  s.k_dr = params.drained_bulk_modulus();
  return s;
}

SpectralEstimates estimate_spectrum(const BiotSystem& system, const PowerIterationOptions& opts) {
  const EigenEstimate top = power_iteration_max(system, opts);
  const EigenEstimate bottom = power_iteration_min(system, top.value, opts);
  // An inexact top estimate can leave the bottom one marginally above it.
  const double lambda_min = std::min(bottom.value, top.value);
  SpectralEstimates s = optimal_parameters(top.value, lambda_min, system.params());
  s.steps_max = top.steps;
  s.steps_min = bottom.steps;
  s.converged = top.converged && bottom.converged;
  return s;
}

}  // namespace biotfs
