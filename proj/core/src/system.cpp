#include "biotfs/system.hpp"

#include <string>

#include "biotfs/errors.hpp"

namespace biotfs {

Discretization discretize(std::size_t n, const MaterialParams& params) {
  params.validate();
  Discretization d;
  d.mesh = build_structured_mesh(n);
  d.dofs = build_taylor_hood_dofs(d.mesh);
  d.params = params;
  d.full.elasticity = assemble_elasticity(d.mesh, d.dofs, params);
  d.full.coupling = assemble_coupling(d.mesh, d.dofs, params.alpha);
  d.full.mass = assemble_pressure_mass(d.mesh, d.dofs);
  d.full.divdiv = assemble_divdiv(d.mesh, d.dofs);
  return d;
}

BiotSystem::BiotSystem(std::shared_ptr<const ReducedOperators> ops, const MaterialParams& params,
                       InnerSolveOptions inner)
    : ops_(std::move(ops)), params_(params), inner_(inner) {
  if (!ops_) throw InvalidArgument("BiotSystem: null operators");
  const std::size_t nu = ops_->A.rows();
  const std::size_t np = ops_->Mp.rows();
  if (ops_->A.cols() != nu || ops_->Mp.cols() != np || ops_->B.rows() != np ||
      ops_->B.cols() != nu || ops_->Ddiv.rows() != nu || ops_->Ddiv.cols() != nu) {
    throw DimensionMismatch("BiotSystem: block sizes are inconsistent");
  }
  if (nu == 0 || np == 0) throw InvalidArgument("BiotSystem: empty displacement or pressure space");
  if (inner_.kind == InnerSolver::Direct) {
    a_factor_ = std::make_shared<const Factorization>(ops_->A);
  }
  m_factor_ = std::make_shared<const Factorization>(ops_->Mp);
  f.assign(nu, 0.0);
  g.assign(np, 0.0);
}

Vector BiotSystem::solve_elasticity(std::span<const double> b) const {
  if (a_factor_) return a_factor_->solve(b);
  try {
    return cg_solve(ops_->A, b, inner_.tol, inner_.maxit).x;
  } catch (const NonConvergence& e) {
    throw NonConvergence(std::string("inner elasticity solve: ") + e.what(), e.iterations(),
                         e.residual());
  }
}

Vector BiotSystem::solve_mass(std::span<const double> b) const { return m_factor_->solve(b); }

BiotSystem BiotSystem::with_loads(Vector f_new, Vector g_new) const {
  if (f_new.size() != num_displacement() || g_new.size() != num_pressure()) {
    throw DimensionMismatch("BiotSystem::with_loads: load sizes do not match the system");
  }
  BiotSystem copy = *this;
  copy.f = std::move(f_new);
  copy.g = std::move(g_new);
  return copy;
}

namespace {

Vector expand(std::span<const double> reduced, const std::vector<std::size_t>& map,
              std::size_t full_size) {
  if (reduced.size() != map.size()) throw DimensionMismatch("expand: length mismatch");
  Vector out(full_size, 0.0);
  for (std::size_t i = 0; i < map.size(); ++i) out[map[i]] = reduced[i];
  return out;
}

Vector restrict_to(std::span<const double> full, const std::vector<std::size_t>& map,
                   std::size_t full_size) {
  if (full.size() != full_size) throw DimensionMismatch("restrict: length mismatch");
  Vector out(map.size());
  for (std::size_t i = 0; i < map.size(); ++i) out[i] = full[map[i]];
  return out;
}

}  // namespace

Vector BiotSystem::expand_displacement(std::span<const double> reduced) const {
  return expand(reduced, ops_->free_displacement, ops_->full_displacement);
}
Vector BiotSystem::expand_pressure(std::span<const double> reduced) const {
  return expand(reduced, ops_->interior_pressure, ops_->full_pressure);
}
Vector BiotSystem::restrict_displacement(std::span<const double> full) const {
  return restrict_to(full, ops_->free_displacement, ops_->full_displacement);
}
Vector BiotSystem::restrict_pressure(std::span<const double> full) const {
  return restrict_to(full, ops_->interior_pressure, ops_->full_pressure);
}

BiotSystem apply_boundary_conditions(const FullOperators& full, const DofMap& dofs,
                                     const MaterialParams& params, std::span<const double> f_full,
                                     std::span<const double> g_full, InnerSolveOptions inner) {
  params.validate();
  const std::size_t nu = dofs.num_displacement();
  const std::size_t np = dofs.num_pressure();
  if (full.elasticity.rows() != nu || full.divdiv.rows() != nu || full.coupling.cols() != nu ||
      full.coupling.rows() != np || full.mass.rows() != np) {
    throw InvalidArgument("apply_boundary_conditions: operators do not match the dof map");
  }
  for (const auto tag : dofs.displacement_tags) {
    if (tag == BoundaryTag::DirichletFlow) {
      throw InvalidArgument("apply_boundary_conditions: flow tag on a displacement dof");
    }
  }
  for (const auto tag : dofs.pressure_tags) {
    if (tag == BoundaryTag::DirichletMomentum || tag == BoundaryTag::NeumannTop) {
      throw InvalidArgument("apply_boundary_conditions: momentum tag on a pressure dof");
    }
  }

  auto ops = std::make_shared<ReducedOperators>();
  ops->free_displacement = dofs.free_displacement_dofs();
  ops->interior_pressure = dofs.interior_pressure_dofs();
  ops->full_displacement = nu;
  ops->full_pressure = np;
  if (ops->free_displacement.empty() || ops->interior_pressure.empty()) {
    throw InvalidArgument(
        "apply_boundary_conditions: no free displacement or interior pressure dofs (mesh too coarse)");
  }
  const auto& fu = ops->free_displacement;
  const auto& ip = ops->interior_pressure;
  ops->A = full.elasticity.extract(fu, fu);
  ops->B = full.coupling.extract(ip, fu);
  ops->Mp = full.mass.extract(ip, ip);
  ops->Ddiv = full.divdiv.extract(fu, fu);

  BiotSystem sys(std::move(ops), params, inner);
  if (!f_full.empty()) sys.f = sys.restrict_displacement(f_full);
  if (!g_full.empty()) sys.g = sys.restrict_pressure(g_full);
  return sys;
}

Vector assemble_flow_rhs(const Discretization& disc, std::span<const double> p_prev_full,
                         std::span<const double> u_prev_full, double t, double tau,
                         const ScalarField& source) {
  const std::size_t np = disc.dofs.num_pressure();
  if (p_prev_full.size() != np || u_prev_full.size() != disc.dofs.num_displacement()) {
    throw DimensionMismatch("assemble_flow_rhs: previous-step vectors have the wrong length");
  }
  Vector rhs = matvec(disc.full.coupling, u_prev_full);
  if (disc.params.inv_M != 0.0) {
    axpy(disc.params.inv_M, matvec(disc.full.mass, p_prev_full), rhs);
  }
  if (source) axpy(tau, assemble_pressure_load(disc.mesh, disc.dofs, source, t), rhs);

  const auto interior = disc.dofs.interior_pressure_dofs();
  Vector g(interior.size());
  for (std::size_t i = 0; i < interior.size(); ++i) g[i] = rhs[interior[i]];
  return g;
}

Vector assemble_momentum_rhs(const Discretization& disc, const BiotSystem& system,
                             const VectorField& force, double t) {
  if (!force) return Vector(system.num_displacement(), 0.0);
  return system.restrict_displacement(assemble_body_force(disc.mesh, disc.dofs, force, t));
}

BiotProblem make_problem(std::size_t n, const MaterialParams& params, bool with_sources,
                         InnerSolveOptions inner) {
  Discretization disc = discretize(n, params);
  BiotSystem system = apply_boundary_conditions(disc.full, disc.dofs, params, {}, {}, inner);
  BiotProblem problem{std::move(disc), std::move(system), {}, {}};
  if (with_sources) {
    const ManufacturedSources src = manufactured_sources(params);
    problem.force = [src](double x, double y, double t) { return src.body_force(x, y, t); };
    problem.source = [src](double x, double y, double t) { return src.flow_source(x, y, t); };
  }
  return problem;
}

}  // namespace biotfs
