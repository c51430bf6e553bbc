#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "biotfs/assembly.hpp"
#include "biotfs/dofs.hpp"
#include "biotfs/mesh.hpp"
#include "biotfs/sparse.hpp"

namespace biotfs {

/// Operators over all dofs, before boundary conditions.
struct FullOperators {
  SparseMatrix elasticity;  ///< 2 mu (eps, eps) + lambda (div, div)
  SparseMatrix coupling;    ///< alpha (div v, q), pressure rows
  SparseMatrix mass;        ///< consistent P1 mass
  SparseMatrix divdiv;      ///< (div u, div v)
};

/// Mesh, dofs and full operators for one mesh size and material set.
struct Discretization {
  Mesh mesh;
  DofMap dofs;
  MaterialParams params;
  FullOperators full;
};

Discretization discretize(std::size_t n, const MaterialParams& params);

/// Block operators restricted to the free displacement dofs and the interior
/// pressure dofs.
struct ReducedOperators {
  SparseMatrix A;     ///< elasticity
  SparseMatrix B;     ///< coupling, interior pressure x free displacement
  SparseMatrix Mp;    ///< pressure mass
  SparseMatrix Ddiv;  ///< div-div
  std::vector<std::size_t> free_displacement;
  std::vector<std::size_t> interior_pressure;
  std::size_t full_displacement = 0;
  std::size_t full_pressure = 0;
};

enum class InnerSolver { Direct, ConjugateGradient };

/// How A^{-1} is applied. Direct reuses one sparse Cholesky factorization;
/// ConjugateGradient runs CG to `tol` on every application.
struct InnerSolveOptions {
  InnerSolver kind = InnerSolver::Direct;
  double tol = 1e-12;
  int maxit = 20000;
};

/// The reduced block system
///
///   [ A  -B^T     ] [u]   [f]
///   [ B  inv_M Mp ] [p] = [g]
///
/// with cached factorizations of A and Mp. Copies share the operators and
/// factorizations; only the loads f and g are per-copy. All const members are
/// safe to call concurrently.
class BiotSystem {
 public:
  BiotSystem(std::shared_ptr<const ReducedOperators> ops, const MaterialParams& params,
             InnerSolveOptions inner = {});

  const SparseMatrix& A() const { return ops_->A; }
  const SparseMatrix& B() const { return ops_->B; }
  const SparseMatrix& Mp() const { return ops_->Mp; }
  const SparseMatrix& Ddiv() const { return ops_->Ddiv; }
  const ReducedOperators& operators() const { return *ops_; }
  const MaterialParams& params() const { return params_; }
  const InnerSolveOptions& inner() const { return inner_; }

  std::size_t num_displacement() const { return ops_->A.rows(); }
  std::size_t num_pressure() const { return ops_->Mp.rows(); }

  /// A^{-1} b
  Vector solve_elasticity(std::span<const double> b) const;
  /// Mp^{-1} b
  Vector solve_mass(std::span<const double> b) const;

  /// Returns a copy sharing operators with new loads. Throws DimensionMismatch.
  BiotSystem with_loads(Vector f, Vector g) const;

  Vector expand_displacement(std::span<const double> reduced) const;
  Vector expand_pressure(std::span<const double> reduced) const;
  Vector restrict_displacement(std::span<const double> full) const;
  Vector restrict_pressure(std::span<const double> full) const;

  Vector f;  ///< momentum load on free displacement dofs
  Vector g;  ///< flow load on interior pressure dofs

 private:
  std::shared_ptr<const ReducedOperators> ops_;
  std::shared_ptr<const Factorization> a_factor_;
  std::shared_ptr<const Factorization> m_factor_;
  MaterialParams params_;
  InnerSolveOptions inner_;
};

/// Eliminates the rows and columns of Dirichlet dofs (homogeneous data) and
/// restricts the loads. Throws InvalidArgument on inconsistent tags or empty
/// free spaces.
BiotSystem apply_boundary_conditions(const FullOperators& full, const DofMap& dofs,
                                     const MaterialParams& params,
                                     std::span<const double> f_full = {},
                                     std::span<const double> g_full = {},
                                     InnerSolveOptions inner = {});

/// Flow right-hand side of one implicit Euler step on the interior pressure
/// dofs: inv_M (p_prev, q) + alpha (div u_prev, q) + tau (S_f(t), q).
Vector assemble_flow_rhs(const Discretization& disc, std::span<const double> p_prev_full,
                         std::span<const double> u_prev_full, double t, double tau,
                         const ScalarField& source);

/// Momentum load f(t) restricted to the free displacement dofs.
Vector assemble_momentum_rhs(const Discretization& disc, const BiotSystem& system,
                             const VectorField& force, double t);

/// A discretized problem with its time-dependent sources. Empty source
/// functions mean zero data.
struct BiotProblem {
  Discretization disc;
  BiotSystem system;
  VectorField force;
  ScalarField source;
};

/// Discretizes the unit square with n subdivisions and attaches the
/// manufactured sources (or zero data when `with_sources` is false).
BiotProblem make_problem(std::size_t n, const MaterialParams& params, bool with_sources = true,
                         InnerSolveOptions inner = {});

}  // namespace biotfs
