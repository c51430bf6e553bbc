#include "biotfs/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "biotfs/errors.hpp"
#include "biotfs/spectral.hpp"

namespace biotfs {

namespace {

constexpr double kNormFloor = 1e-300;
// The pressure increment contracts in the M-norm whenever the scheme converges,
// so growth by this factor over the smallest increment seen means divergence.
constexpr double kBlowUp = 1e12;

void check_block_sizes(const BiotSystem& system, std::span<const double> u,
                       std::span<const double> p) {
  if (u.size() != system.num_displacement() || p.size() != system.num_pressure()) {
    throw DimensionMismatch("iterate sizes do not match the system");
  }
}

Vector difference(std::span<const double> a, std::span<const double> b) {
  Vector d(a.begin(), a.end());
  axpy(-1.0, b, d);
  return d;
}

}  // namespace

void SolverConfig::validate(const MaterialParams& params) const {
  if (!(L >= 0.0)) throw InvalidArgument("solver: L must be non-negative");
  if (!(L + params.inv_M > 0.0)) throw InvalidArgument("solver: L must be positive when 1/M = 0");
  if (!(eps_r > 0.0)) throw InvalidArgument("solver: eps_r must be positive");
  if (max_iter < 1) throw InvalidArgument("solver: max_iter must be at least 1");
  if (!(inner_tol > 0.0)) throw InvalidArgument("solver: inner_tol must be positive");
}

int TimeGrid::steps() const {
  if (!(tau > 0.0)) throw InvalidArgument("time grid: tau must be positive");
  const double ratio = (T - t0) / tau;
  const double rounded = std::round(ratio);
  if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
    throw InvalidArgument("time grid: (T - t0) / tau must be a positive integer");
  }
  return static_cast<int>(rounded);
}

BlockState fixed_stress_step(const BiotSystem& system, std::span<const double> u,
                             std::span<const double> p, double L) {
  check_block_sizes(system, u, p);
  const double inv_m = system.params().inv_M;
  const double stab = L + inv_m;
  if (!(stab > 0.0)) throw InvalidArgument("fixed_stress_step: L + 1/M must be positive");

  // flow: (L + 1/M) Mp dp = g - B u - (1/M) Mp p
  Vector residual = system.g;
  axpy(-1.0, matvec(system.B(), u), residual);
  if (inv_m != 0.0) axpy(-inv_m, matvec(system.Mp(), p), residual);
  Vector dp = system.solve_mass(residual);

  BlockState next;
  next.p.assign(p.begin(), p.end());
  axpy(1.0 / stab, dp, next.p);

  // mechanics: A u = f + B^T p
  Vector rhs = system.f;
  axpy(1.0, matvec_transpose(system.B(), next.p), rhs);
  next.u = system.solve_elasticity(rhs);
  return next;
}

FixedStressResult fixed_stress_solve(const BiotSystem& system, const SolverConfig& config,
                                     std::span<const double> u_init,
                                     std::span<const double> p_init) {
  config.validate(system.params());
  check_block_sizes(system, u_init, p_init);

  FixedStressResult result;
  result.state.u.assign(u_init.begin(), u_init.end());
  result.state.p.assign(p_init.begin(), p_init.end());
  auto& trace = result.trace;
  double min_dp = std::numeric_limits<double>::infinity();

  for (int i = 1; i <= config.max_iter; ++i) {
    BlockState next = fixed_stress_step(system, result.state.u, result.state.p, config.L);
    const Vector du = difference(next.u, result.state.u);
    const Vector dp = difference(next.p, result.state.p);

    IterationRecord rec;
    rec.du_norm = m_norm(system.A(), du);
    rec.dp_norm = m_norm(system.Mp(), dp);
    rec.u_norm = m_norm(system.A(), next.u);
    rec.p_norm = m_norm(system.Mp(), next.p);
    trace.records.push_back(rec);
    trace.iterations = i;
    result.state = std::move(next);
    if (config.keep_iterates) {
      trace.displacement_iterates.push_back(result.state.u);
      trace.pressure_iterates.push_back(result.state.p);
    }

    min_dp = std::min(min_dp, rec.dp_norm);
    if (!std::isfinite(rec.du_norm) || !std::isfinite(rec.dp_norm) ||
        (min_dp > 0.0 && rec.dp_norm > kBlowUp * min_dp)) {
      trace.converged = false;
      return result;
    }
    if (rec.dp_norm <= config.eps_r * std::max(rec.p_norm, kNormFloor) &&
        rec.du_norm <= config.eps_r * std::max(rec.u_norm, kNormFloor)) {
      trace.converged = true;
      return result;
    }
  }
  trace.converged = false;
  return result;
}

Vector richardson_step(const BiotSystem& system, std::span<const double> p, double omega,
                       std::span<const double> g_tilde) {
  if (p.size() != system.num_pressure()) throw DimensionMismatch("richardson_step: length mismatch");
  if (!(omega >= 0.0)) throw InvalidArgument("richardson_step: omega must be non-negative");
  Vector next(p.begin(), p.end());
  if (omega == 0.0) return next;

  Vector residual = g_tilde.empty() ? schur_rhs(system) : Vector(g_tilde.begin(), g_tilde.end());
  if (residual.size() != p.size()) throw DimensionMismatch("richardson_step: g_tilde length mismatch");
  axpy(-1.0, schur_apply(system, p), residual);
  axpy(omega, system.solve_mass(residual), next);
  return next;
}

BlockState monolithic_solve(const BiotSystem& system, double schur_tol) {
  const Vector rhs = schur_rhs(system);
  const LinearOperator s = [&system](std::span<const double> x) { return schur_apply(system, x); };
  CgResult cg;
  try {
    cg = cg_solve(s, rhs, schur_tol, static_cast<int>(10 * system.num_pressure() + 100));
  } catch (const NonConvergence& e) {
    throw NonConvergence(std::string("monolithic_solve: Schur system is singular or ill-posed: ") +
                             e.what(),
                         e.iterations(), e.residual());
  }

  BlockState sol;
  sol.p = std::move(cg.x);
  Vector mech = system.f;
  axpy(1.0, matvec_transpose(system.B(), sol.p), mech);
  sol.u = system.solve_elasticity(mech);
  return sol;
}

double block_residual(const BiotSystem& system, const BlockState& state) {
  check_block_sizes(system, state.u, state.p);
  Vector r1 = system.f;
  axpy(-1.0, matvec(system.A(), state.u), r1);
  axpy(1.0, matvec_transpose(system.B(), state.p), r1);
  Vector r2 = system.g;
  axpy(-1.0, matvec(system.B(), state.u), r2);
  if (system.params().inv_M != 0.0) {
    axpy(-system.params().inv_M, matvec(system.Mp(), state.p), r2);
  }
  const double rn = std::hypot(norm2(r1), norm2(r2));
  const double bn = std::hypot(norm2(system.f), norm2(system.g));
  return bn > 0.0 ? rn / bn : rn;
}

TimeMarchResult time_march(const BiotProblem& problem, const SolverConfig& config,
                           const TimeGrid& grid) {
  const int nsteps = grid.steps();
  config.validate(problem.system.params());
  const BiotSystem& base = problem.system;

  TimeMarchResult out;
  // homogeneous initial state
  BlockState state{Vector(base.num_displacement(), 0.0), Vector(base.num_pressure(), 0.0)};
  double total = 0.0;
  for (int k = 1; k <= nsteps; ++k) {
    const double t = grid.time(k);
    const Vector u_full = base.expand_displacement(state.u);
    const Vector p_full = base.expand_pressure(state.p);
    BiotSystem step = base.with_loads(
        assemble_momentum_rhs(problem.disc, base, problem.force, t),
        assemble_flow_rhs(problem.disc, p_full, u_full, t, grid.tau, problem.source));

    FixedStressResult res = fixed_stress_solve(step, config, state.u, state.p);
    out.converged.push_back(res.trace.converged);
    if (!res.trace.converged) {
      out.iterations.push_back(config.max_iter);
      out.diverged = true;
      out.average = std::numeric_limits<double>::infinity();
      out.final_state = std::move(res.state);
      return out;
    }
    out.iterations.push_back(res.trace.iterations);
    total += res.trace.iterations;
    state = std::move(res.state);
  }
  out.average = total / nsteps;
  out.final_state = std::move(state);
  return out;
}

}  // namespace biotfs
